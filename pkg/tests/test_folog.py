import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opotl import folog as F
from opotl.errors import QuantifierDepthExceeded, UnboundVariable, WordTooLarge
from opotl.opalpha import EQUALS, Prec, TAKES, YIELDS, OpAlphabet, load_opm
from opotl.opparse import parse
from opotl.opwords import load_word
from opotl.potl import dsp, evaluate, parse_potl
from opotl.potl import formula as P

from strategies import MCALL, potl, seeds, words

# a four-proposition alphabet for exhaustive label-set expansions
TINY = load_opm("props: a, b\nnormal: p, q\na < a\na = b\nb > a\nb > b\n")

NEXT_DOWN_TEXT = "∃y(succ(x,y) ∧ (x⋖y ∨ x≐y) ∧ ∃x(x=y ∧ a(x)))"


def test_nu_next_down_golden():
    g = F.nu(parse_potl("Nd a"))
    assert F.to_text(g) == NEXT_DOWN_TEXT
    assert F.to_lisp(g) == "(exists y (and (succ x y) (or (prec< x y) (prec= x y)) " \
                           "(exists x (and (= x y) (a x)))))"


def test_nu_atom():
    assert F.nu(P.Atom("a")) == F.FAtom("a", "x")


def test_small_examples(wex):
    cs = parse(wex).chains
    assert F.fo_eval(F.Succ("x", "y"), wex, cs, {"x": 1, "y": 2})
    assert not F.fo_eval(F.Succ("x", "y"), wex, cs, {"x": 1, "y": 3})
    assert F.fo_eval(F.Chi("x", "y"), wex, cs, {"x": 1, "y": 7})
    leaves = F.Exists("y", F.Chi("x", "y"))
    assert not F.fo_eval(leaves, wex, cs, {"x": 5})
    assert F.fo_eval(leaves, wex, cs, {"x": 1})


def test_errors(wex, mcall):
    cs = parse(wex).chains
    with pytest.raises(UnboundVariable):
        F.fo_eval(F.Chi("x", "y"), wex, cs, {"x": 1})
    with pytest.raises(UnboundVariable):
        F.fo_positions(F.Chi("x", "y"), wex, cs)
    long = load_word(mcall, " ".join(["call"] * 15))
    with pytest.raises(WordTooLarge):
        F.fo_eval(F.FTrue(), long, parse(long).chains)
    deep = F.FTrue()
    for k in range(9):
        deep = F.Exists(F.VARS[k % 3], deep)
    with pytest.raises(QuantifierDepthExceeded):
        F.fo_eval_naive(deep, wex, cs)
    with pytest.raises(ValueError):
        F.FAtom("a", "w")


def test_printed_since_differs(wex):
    cs = parse(wex).chains
    f = parse_potl("T Sd call")
    good = F.fo_positions(F.nu(f), wex, cs)
    assert good == evaluate(f, wex).holds(f)
    assert F.fo_positions(F.nu(f, printed_since=True), wex, cs) != good


def test_unsupported():
    with pytest.raises(F.UnsupportedOperator):
        F.nu(object())


@given(words(max_body=10), potl())
def test_nu_agrees_with_potl(w, f):
    cs = parse(w).chains
    g = F.nu(f)
    assert len(F.variables(g)) <= 3
    assert F.free_vars(g) <= {"x"}
    assert F.fo_positions(g, w, cs) == evaluate(f, w, cs).holds(f)


def _rename(g, m):
    if isinstance(g, F.FAtom):
        return F.FAtom(g.prop, m[g.var])
    if isinstance(g, F.Rel2):
        return type(g)(m[g.a], m[g.b])
    if isinstance(g, F.PrecAtom):
        return F.PrecAtom(g.rel, m[g.a], m[g.b])
    if isinstance(g, F.FTrue):
        return g
    if isinstance(g, F.FNot):
        return F.FNot(_rename(g.arg, m))
    if isinstance(g, F.Quant):
        return type(g)(m[g.var], _rename(g.body, m))
    return type(g)(_rename(g.left, m), _rename(g.right, m))


@given(words(max_body=8), potl())
def test_bound_renaming(w, f):
    cs = parse(w).chains
    g = F.nu(f)
    swapped = _rename(g, {"x": "x", "y": "z", "z": "y"})
    assert F.fo_positions(swapped, w, cs) == F.fo_positions(g, w, cs)


@settings(max_examples=30)
@given(words(max_body=6), potl(atoms=["call", "ret", "pA"], filtered=False))
def test_naive_matches_vectorized(w, f):
    cs = parse(w).chains
    g = F.nu(f)
    if F.quantifier_depth(g) > F.DEPTH_CAP:
        return
    for i in range(len(w.labels)):
        assert F.fo_eval_naive(g, w, cs, {"x": i}) == F.fo_eval(g, w, cs, {"x": i})


@given(words(max_body=8), potl())
def test_expand_succ(w, f):
    cs = parse(w).chains
    g = F.nu(f)
    assert F.fo_positions(F.expand_succ(g), w, cs) == F.fo_positions(g, w, cs)


@given(words(alpha=TINY, max_body=8), st.sampled_from(list(Prec)))
def test_prec_atom_expansion(w, rel):
    cs = parse(w).chains
    prim = F.fo_table(F.PrecAtom(rel, "x", "y"), w, cs)[:, :, 0]
    exp = F.fo_table(F.expand_prec(rel, "x", "y", TINY), w, cs)[:, :, 0]
    assert (prim == exp).all()


@given(words(max_body=10))
def test_gamma_marks_positions_off_the_path(w):
    cs = parse(w).chains
    rels = frozenset({YIELDS, EQUALS})
    table = F.fo_table(F.gamma("x", "y", "z", rels), w, cs)
    for i in range(len(w.labels)):
        for j in range(i, len(w.labels)):
            path = dsp(w, cs, i, j)
            if path is None:
                continue
            for k in range(i, j + 1):
                assert bool(table[i, j, k]) == (k not in path)
