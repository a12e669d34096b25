import pytest
from hypothesis import given

from opotl.errors import IncompatibleTree, InvalidLabelSet, NodeNotFound
from opotl.opalpha import EQUALS, TAKES, YIELDS
from opotl.opwords import load_word
from opotl.uot import (ROOT, Uot, check_compat, format_addr, load_tree, parse_addr, rc,
                       serialize_tree, tau, tau_inverse)

from strategies import words

S = frozenset

WEX_ADDRESSES = {
    0: "0", 1: "0.0", 2: "0.0.0", 3: "0.0.0.0", 4: "0.0.0.0.0", 5: "0.0.0.0.0.0", 6: "0.0.0.1",
    7: "0.0.1", 8: "0.0.1.0", 9: "0.0.2", 10: "0.0.2.0", 11: "0.0.3", 12: "0.1",
}


def wex_tree_by_hand(wex):
    return Uot({parse_addr(a): wex.labels[i] for i, a in WEX_ADDRESSES.items()}, wex.alphabet)


def test_wex_addresses(wex):
    t = tau(wex)
    assert {i: format_addr(t.node_of[i]) for i in range(13)} == WEX_ADDRESSES
    assert all(t.position_of[t.node_of[i]] == i for i in range(13))
    assert t == wex_tree_by_hand(wex)
    assert len(t) == 13


def test_small_trees(mcall):
    t = tau(load_word(mcall, "call ret"))
    assert t.children(ROOT) == ((0, 0), (0, 1))
    assert t.children((0, 0)) == ((0, 0, 0),)
    assert t.label((0, 0, 0)) == {"ret"} and t.label((0, 1)) == {"#"}
    empty = tau(load_word(mcall, ""))
    assert empty.children(ROOT) == ((0, 0),) and len(empty) == 2


def test_rc(wex):
    t = tau(wex)
    node = t.node_of
    assert rc(t, node[3]) == node[6]
    assert rc(t, node[4]) == node[6]
    assert rc(t, ROOT) is None
    assert rc(t, node[1]) is None
    # leaves climb to the first ancestor with a right sibling
    assert rc(t, node[8]) == node[9]
    assert rc(t, node[6]) == node[7]
    assert rc(t, node[11]) == node[12]
    with pytest.raises(NodeNotFound):
        rc(t, (0, 5))


def test_compat(wex):
    t = tau(wex)
    assert check_compat(t, wex.alphabet).ok
    labels = dict(t.labels)
    labels[t.node_of[3]] = S({"ret"})
    rep = check_compat(Uot(labels), wex.alphabet)
    assert not rep.ok and rep.rule == "child-yields" and rep.node == (0, 0, 0)


def test_root_needs_delimiter_child(wex):
    labels = {a: s for a, s in tau(wex).labels.items() if a != (0, 1)}
    rep = check_compat(Uot(labels), wex.alphabet)
    assert not rep.ok
    with pytest.raises(IncompatibleTree):
        tau_inverse(Uot(labels), wex.alphabet)


def test_shape_validation():
    with pytest.raises(InvalidLabelSet):
        Uot({ROOT: S({"#"}), (0, 1): S({"#"})})
    with pytest.raises(InvalidLabelSet):
        Uot({ROOT: S({"#"}), (0, 0, 0): S({"a"})})


def test_hand_tree_inverts_to_wex(wex):
    assert tau_inverse(wex_tree_by_hand(wex), wex.alphabet) == wex


def test_text_format(wex):
    t = tau(wex)
    text = serialize_tree(t)
    assert text.splitlines()[1] == "  0.0 call{pA}"
    assert load_tree(text, wex.alphabet) == t
    flat = "; comment\n" + "\n".join(line.strip() for line in text.splitlines())
    assert load_tree(flat, wex.alphabet) == t


@given(words(max_body=12))
def test_round_trip(w):
    t = tau(w)
    assert len(t) == w.n + 2
    assert check_compat(t, w.alphabet).ok
    assert tau_inverse(t, w.alphabet) == w
    assert {t.position_of[t.node_of[i]] for i in range(len(w.labels))} == set(range(len(w.labels)))


@given(words(max_body=12))
def test_children_precedences(w):
    t = tau(w)
    for s in t.preorder():
        kids = t.children(s)
        for c in kids[:-1]:
            assert t.rel(s, c, w.alphabet) is YIELDS
        if kids and s != ROOT:
            assert t.rel(s, kids[-1], w.alphabet) in (YIELDS, EQUALS)
        r = rc(t, s, w.alphabet)
        if r is not None:
            assert t.rel(s, r, w.alphabet) is TAKES
