import pytest
from hypothesis import given

from opotl.errors import IncompatibleWord, ParseStuck
from opotl.opalpha import load_opm
from opotl.opparse import ChainSet, chain_holds, parse, validate_chain_properties
from opotl.opwords import OpWord, load_word

from strategies import MCALL, words

WEX_CHAINS = {(0, 12), (1, 11), (1, 7), (1, 9), (2, 6), (3, 6), (4, 6)}

WEX_ROWS = [
    "# < call < han < call < call < call > exc > call = ret > call = ret > ret > #",
    "# < call < han < call < call N > exc > call = ret > call = ret > ret > #",
    "# < call < han < call N > exc > call = ret > call = ret > ret > #",
    "# < call < han = N exc > call = ret > call = ret > ret > #",
    "# < call < N call = ret > call = ret > ret > #",
    "# < call < N call = ret > ret > #",
    "# < call = N ret > #",
    "# = N #",
]


def test_wex_trace_and_chains(wex):
    res = parse(wex)
    assert list(res.trace) == WEX_ROWS
    assert res.chains.pairs == WEX_CHAINS


def test_wex_tree(wex):
    assert parse(wex).tree.shape() == (1, (((2, (3, (4, (5,))), 6), 7, 8), 9, 10), 11)


def test_empty_word(mcall):
    res = parse(load_word(mcall, ""))
    assert res.chains.pairs == set()
    assert res.tree.shape() == ()
    assert list(res.trace) == ["# #"]


def test_ret_call_han(mcall):
    assert parse(load_word(mcall, "ret call han")).chains.pairs == {(0, 2), (2, 4), (0, 4)}


def test_chain_queries(wex):
    cs = parse(wex).chains
    assert chain_holds(cs, 1, 7)
    assert not chain_holds(cs, 1, 2)
    assert cs.right_contexts_of(1) == [7, 9, 11] or tuple(cs.right_contexts_of(1)) == (7, 9, 11)
    assert tuple(cs.left_contexts_of(6)) == (2, 3, 4)


def test_validate_wex(wex):
    assert validate_chain_properties(wex, parse(wex).chains).ok


def test_crossing_set_is_reported(mcall):
    w = load_word(mcall, "call call call call call call call")
    rep = validate_chain_properties(w, ChainSet({(1, 5), (3, 7)}))
    assert not rep.ok and rep.prop == 1


def test_incompatible_and_stuck():
    a = load_opm("props: a, b\na < b\n")
    with pytest.raises(IncompatibleWord):
        parse(OpWord(a, [{"b"}, {"a"}], check=False))
    eq = load_opm("props: a\ndelimiters: explicit\n# < a\na = a\n")
    with pytest.raises((ParseStuck, IncompatibleWord)):
        parse(OpWord(eq, [{"a"}], check=False))


@given(words(max_body=12))
def test_parser_output_satisfies_chain_properties(w):
    res = parse(w)
    assert validate_chain_properties(w, res.chains).ok
    assert res.tree.leaves() == list(range(1, w.n + 1))
    assert res.trace[-1] in ("# = N #", "# #")
    assert parse(w).trace == res.trace


@given(words(max_body=12))
def test_no_adjacent_internal_nodes(w):
    from opotl.opparse import Node
    for node in parse(w).tree.root.internal_nodes():
        kids = node.children
        assert not any(isinstance(a, Node) and isinstance(b, Node) for a, b in zip(kids, kids[1:]))


@given(words(alpha=MCALL, max_body=12))
def test_chains_ignore_decorations(w):
    bare = OpWord(MCALL, [{MCALL.structural_of(ls)} for ls in w.body])
    assert parse(bare).chains == parse(w).chains


@given(words(max_body=12))
def test_chain_bodies_reparse(w):
    """The body between two contexts is itself a chain body with those contexts."""
    cs = parse(w).chains
    for i, j in cs:
        k = i + 1
        seen = [i]
        while k < j:
            seen.append(k)
            nxt = [t for t in cs.right_contexts_of(k) if t <= j]
            k = max(nxt) if nxt else k + 1
        # walking the top level of the body from i reaches j exactly
        assert k == j
