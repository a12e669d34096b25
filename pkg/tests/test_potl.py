import pytest
from hypothesis import given
from hypothesis import strategies as st

from opotl.opalpha import EQUALS, TAKES, YIELDS
from opotl.opparse import parse
from opotl.opwords import load_word
from opotl.potl import (FALSE, TRUE, call_thr, dsp, eval_by_paths, evaluate, eventually,
                        holds_at, ltl_globally, parse_potl, to_str, uhp, usp, dhp)
from opotl.potl import formula as P
from opotl.potl.expand import expand_filters, expansion_laws
from opotl.potl.semantics import Evaluator, Structure
from opotl.errors import PositionError

from strategies import MCALL, potl, words

A = P.Atom


def interior(res, f, w):
    return {i for i in res.holds(f) if 0 < i <= w.n}


def sat(w, text):
    return evaluate(parse_potl(text), w).holds(parse_potl(text))


@pytest.mark.parametrize("text, expected", [
    ("Nd call", {2, 3, 4}),
    ("Bu call", {6, 8, 10}),
    ("Bd call", {2, 4, 5, 8, 10}),
    ("CNu exc", {2, 3, 4}),
    ("CallThr(T)", {2, 3, 4, 5}),
    ("CBu call", {6, 11}),
])
def test_interior_sets(wex, text, expected):
    f = parse_potl(text)
    assert interior(evaluate(f, wex), f, wex) == expected


def test_chain_next_up_exc_among_calls(wex):
    f = parse_potl("CNu exc")
    assert {i for i in evaluate(f, wex).holds(f) if "call" in wex.labels[i]} == {3, 4}


def test_call_thr_on_calls(wex):
    # 5 reaches the exc by a plain up step rather than a chain
    f = call_thr(TRUE)
    assert {i for i in evaluate(f, wex).holds(f) if "call" in wex.labels[i]} == {3, 4, 5}


@pytest.mark.parametrize("text, pos, value", [
    ("call Ud (ret & pErr)", 1, True),
    ("(call | exc) Su pB", 7, True),
    ("T Uu exc", 3, True),
    ("T Uu exc", 1, False),
    ("HNu pErr", 7, True),
    ("HBu pErr", 9, True),
    ("HNu ret", 9, False),
    ("call HUd pC", 3, True),
    ("call HSd pB", 4, True),
    ("Fd pErr", 1, True),
    ("CallThr(T)", 1, False),
])
def test_golden_positions(wex, text, pos, value):
    assert holds_at(parse_potl(text), wex, pos) is value


def test_globally_without_exc(mcall):
    w = load_word(mcall, "call han call ret ret")
    assert holds_at(ltl_globally(P.Not(A("exc"))), w, 0)


def test_delimiters_in_universe(wex):
    f = parse_potl("Nd call")
    assert 0 in evaluate(f, wex).holds(f)
    assert evaluate(A("#"), wex).holds(A("#")) == {0, 12}


def test_paths(wex):
    cs = parse(wex).chains
    assert dsp(wex, cs, 1, 8) == [1, 7, 8]
    assert usp(wex, cs, 3, 7) == [3, 6, 7]
    assert dsp(wex, cs, 5, 5) == [5]
    assert dsp(wex, cs, 2, 8) is None
    with pytest.raises(PositionError):
        dsp(wex, cs, 1, 40)


def test_hierarchical_paths(wex):
    cs = parse(wex).chains
    assert uhp(wex, cs, 7, 9) == [7, 9]
    assert uhp(wex, cs, 9, 7) == [9, 7]
    # 1 and 11 are in the = relation, so 11 is outside the group
    assert uhp(wex, cs, 7, 11) is None
    assert dhp(wex, cs, 3, 4) == [3, 4]
    assert dhp(wex, cs, 2, 4) is None


def test_parser_round_trip_examples():
    for text in ["CN[<=] (a & ~b)", "CallThr(pA)", "Scall(T, pA)", "a Ud b Uu c", "G (a -> Fu b)"]:
        f = parse_potl(text)
        assert parse_potl(to_str(f)) == f


def test_derived_forms():
    assert eventually("d", A("a")) == P.Until("d", TRUE, A("a"))
    assert call_thr(TRUE) == P.Or(P.Next("u", P.And(A("exc"), TRUE)),
                                  P.ChainNext("u", P.And(A("exc"), TRUE)))
    assert to_str(FALSE) == "F"


@given(words(max_body=9), potl())
def test_sweep_matches_path_definitions(w, f):
    cs = parse(w).chains
    res = evaluate(f, w, cs)
    oracle = eval_by_paths(f, w, cs)
    assert res.holds(f) == frozenset(oracle[f])


@given(words(max_body=10), potl())
def test_negation_is_complement(w, f):
    res = evaluate(P.Not(f), w)
    assert res.holds(P.Not(f)) == frozenset(range(len(w.labels))) - res.holds(f)


@given(words(max_body=10), potl())
def test_filtered_down_is_chain_next_down(w, f):
    ev = Evaluator(Structure(w, parse(w).chains))
    assert ev(P.PChainNext(frozenset({YIELDS, EQUALS}), f)) == ev(P.ChainNext("d", f))
    assert ev(P.PChainBack(frozenset({TAKES, EQUALS}), f)) == ev(P.ChainBack("u", f))


@given(words(max_body=10), potl())
def test_next_directions_partition_successor(w, f):
    ev = Evaluator(Structure(w, parse(w).chains))
    either = ev(P.Or(P.Next("d", f), P.Next("u", f)))
    assert either == (ev(f) >> 1)


@given(words(max_body=10))
def test_summary_until_true_everywhere(w):
    ev = Evaluator(Structure(w, parse(w).chains))
    full = (1 << len(w.labels)) - 1
    assert ev(P.Until("d", TRUE, TRUE)) == full == ev(P.Since("u", TRUE, TRUE))


@given(words(max_body=10), potl())
def test_hierarchical_next_needs_context(w, f):
    cs = parse(w).chains
    ev = Evaluator(Structure(w, cs))
    ctx = {j for i, j in cs if w.pr(i, j) is YIELDS}
    m = ev(P.HNext("u", f))
    assert all(i in ctx for i in range(len(w.labels)) if (m >> i) & 1)


@given(words(max_body=10), potl(), potl())
def test_corrected_expansion_laws(w, a, b):
    ev = Evaluator(Structure(w, parse(w).chains))
    for name, lhs, rhs in expansion_laws(a, b, corrected=True):
        assert ev(lhs) == ev(rhs), name


@given(words(max_body=10), potl(), potl())
def test_summary_expansion_laws_as_printed(w, a, b):
    ev = Evaluator(Structure(w, parse(w).chains))
    for name, lhs, rhs in expansion_laws(a, b)[:4]:
        assert ev(lhs) == ev(rhs), name


def test_printed_hierarchical_base_fails(mcall):
    # the exc closes the inner chain (1,3) and is itself the only member of the up group
    w = load_word(mcall, "call call exc")
    ev = Evaluator(Structure(w, parse(w).chains))
    laws = {n: (l, r) for n, l, r in expansion_laws(TRUE, A("exc"))}
    lhs, rhs = laws["HUu"]
    assert ev(lhs) == 0b1000 and ev(rhs) == 0
    fixed = {n: (l, r) for n, l, r in expansion_laws(TRUE, A("exc"), corrected=True)}
    lhs, rhs = fixed["HUu"]
    assert ev(lhs) == ev(rhs)


SMALL = ["call", "ret", "pA"]


@given(words(alpha=MCALL, max_body=7), potl(atoms=SMALL))
def test_filters_expand_over_label_sets(w, f):
    from opotl.opalpha import OpAlphabet
    small = OpAlphabet(sorted(MCALL.structural), ["pA"], {k: v for k, v in MCALL.matrix.items()})
    w2 = load_word(small, " ".join(
        "{}{}".format(MCALL.structural_of(ls), "{pA}" if "pA" in ls else "") for ls in w.body))
    ev = Evaluator(Structure(w2, parse(w2).chains))
    assert ev(expand_filters(f, small)) == ev(f)
