from hypothesis import given

from opotl import xuntil as X
from opotl.opparse import parse
from opotl.potl import evaluate, parse_potl
from opotl.uot import ROOT, tau

from strategies import words, xuntil


def positions(t, nodes):
    return sorted(t.position_of[s] for s in nodes)


def test_examples(wex):
    t = tau(wex)
    f = X.parse_xuntil("Dn(T, call)")
    res = X.xeval(f, t)
    assert res.at(f, ROOT)
    assert positions(t, res.holds(f)) == [0, 1, 2, 3, 4]
    leaf = X.parse_xuntil("Dn(T, T)")
    assert positions(t, X.xeval(leaf, t).holds(leaf)) == [0, 1, 2, 3, 4, 7, 9]
    rt = X.parse_xuntil("Rt(call, ret)")
    assert X.xeval(rt, t).at(rt, t.node_of[7])
    assert positions(t, X.xeval(rt, t).holds(rt)) == [2, 7, 9]


def test_up_axis(wex):
    t = tau(wex)
    f = X.parse_xuntil("Up(call, han)")
    assert positions(t, X.xeval(f, t).holds(f)) == [3, 4, 5, 6]


def test_syntax_round_trip():
    for text in ["Dn(T, a & ~b)", "NRt(Lt(a, Up(b, c)))", "~(a & ~T)"]:
        f = X.parse_xuntil(text)
        assert X.parse_xuntil(X.x_to_str(f)) == f
    assert X.parse_xuntil("NDn(a)") == X.XUntil("down", X.XFALSE, X.XAtom("a"))


def test_iota_down_golden():
    got = X.iota(X.parse_xuntil("Dn(a, b)"))
    assert got == parse_potl("Nd (a Ud b) | CNd (a Ud b)")
    assert X.iota(X.XAtom("a")) == parse_potl("a")


@given(words(max_body=9), xuntil())
def test_fast_matches_brute_force(w, f):
    t = tau(w)
    fast = X.xeval(f, t)
    slow = X.xeval_brute(f, t)
    assert fast.holds(f) == slow[f]


@given(words(max_body=9), xuntil())
def test_strict_next(w, f):
    t = tau(w)
    sets = X.xeval_brute(f, t)[f]
    step = {"down": lambda s: t.children(s), "up": lambda s: [t.parent(s)],
            "right": lambda s: [t.next_sibling(s)], "left": lambda s: [t.prev_sibling(s)]}
    for axis in X.AXES:
        g = X.xnext(axis, f)
        got = X.xeval(g, t).holds(g)
        assert got == {s for s in t.preorder() if any(r in sets for r in step[axis](s) if r)}


@given(words(max_body=10), xuntil())
def test_iota_agrees_with_trees(w, f):
    cs = parse(w).chains
    t = tau(w, cs)
    on_tree = X.xeval(f, t).holds(f)
    g = X.iota(f)
    on_word = evaluate(g, w, cs).holds(g)
    for i in range(len(w.labels)):
        assert (t.node_of[i] in on_tree) == (i in on_word)
