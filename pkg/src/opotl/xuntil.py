"""Xuntil: strict until/since along the child and sibling axes of a UOT,
and its translation into POTL.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._ast import Node
from ._syntax import Grammar
from .opalpha import EQUALS, YIELDS
from .potl import formula as P
from .uot import Uot

AXES = ("down", "up", "right", "left")
_NAMES = {"down": "Dn", "up": "Up", "right": "Rt", "left": "Lt"}


class XFormula(Node):
    __slots__ = ()

    def __repr__(self):
        return f"<{x_to_str(self)}>"

    def __str__(self):
        return x_to_str(self)


@dataclass(frozen=True, eq=False, repr=False)
class XAtom(XFormula):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class XTrue(XFormula):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class XNot(XFormula):
    arg: XFormula


@dataclass(frozen=True, eq=False, repr=False)
class XAnd(XFormula):
    left: XFormula
    right: XFormula


@dataclass(frozen=True, eq=False, repr=False)
class XUntil(XFormula):
    """``axis(phi, psi)``: some node strictly along the axis satisfies psi and
    every node strictly in between satisfies phi."""
    axis: str
    left: XFormula
    right: XFormula

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")


XTRUE = XTrue()
XFALSE = XNot(XTRUE)


def xor_(a, b):
    return XNot(XAnd(XNot(a), XNot(b)))


def ximplies(a, b):
    return XNot(XAnd(a, XNot(b)))


def xnext(axis, f):
    """Strict next along an axis: nothing may lie in between."""
    return XUntil(axis, XFALSE, f)


def x_to_str(f: XFormula, level: int = 0) -> str:
    if isinstance(f, XAtom):
        return f.name
    if isinstance(f, XTrue):
        return "T"
    if isinstance(f, XNot):
        return "~" + x_to_str(f.arg, 4)
    if isinstance(f, XUntil):
        return f"{_NAMES[f.axis]}({x_to_str(f.left)}, {x_to_str(f.right)})"
    if isinstance(f, XAnd):
        s = f"{x_to_str(f.left, 3)} & {x_to_str(f.right, 4)}"
        return f"({s})" if level > 3 else s
    raise TypeError(f"not an Xuntil formula: {f!r}")


def _grammar():
    functions = {}
    for axis, name in _NAMES.items():
        functions[name] = (2, (lambda ax: lambda a, b: XUntil(ax, a, b))(axis))
        functions["N" + name] = (1, (lambda ax: lambda a: xnext(ax, a))(axis))
    return Grammar(atom=XAtom, true=lambda: XTRUE, false=lambda: XFALSE, neg=XNot, conj=XAnd,
                   disj=xor_, implies=ximplies, functions=functions)


X_GRAMMAR = _grammar()


def parse_xuntil(text: str) -> XFormula:
    return X_GRAMMAR.parse(text)


# --- semantics on trees -----------------------------------------------------

class XEvalResult:
    def __init__(self, tree: Uot, sets: dict):
        self.tree = tree
        self._sets = sets

    def holds(self, f: XFormula) -> frozenset:
        return self._sets[f]

    __getitem__ = holds

    def at(self, f: XFormula, s) -> bool:
        return s in self._sets[f]


def xeval(f: XFormula, t: Uot) -> XEvalResult:
    """Truth sets of every subformula, one linear pass per axis operator."""
    order = t.preorder()
    sets: dict = {}
    stack = [f]
    while stack:
        g = stack[-1]
        if g in sets:
            stack.pop()
            continue
        pending = [c for c in g.children() if c not in sets]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        sets[g] = frozenset(_xnode(g, t, order, sets))
    return XEvalResult(t, sets)


def _xnode(g, t, order, sets):
    if isinstance(g, XAtom):
        return {s for s in order if g.name in t.labels[s]}
    if isinstance(g, XTrue):
        return set(order)
    if isinstance(g, XNot):
        return set(order) - sets[g.arg]
    if isinstance(g, XAnd):
        return sets[g.left] & sets[g.right]
    if not isinstance(g, XUntil):
        raise TypeError(f"not an Xuntil formula: {g!r}")
    phi, psi = sets[g.left], sets[g.right]
    out = set()
    # a node holds when its axis neighbour is psi, or is phi and holds itself
    step = lambda r: r in psi or (r in phi and r in out)
    if g.axis == "down":
        for s in reversed(order):
            if any(step(c) for c in t.children(s)):
                out.add(s)
    elif g.axis == "up":
        for s in order:
            p = t.parent(s)
            if p is not None and step(p):
                out.add(s)
    elif g.axis == "right":
        for s in reversed(order):
            for c in reversed(t.children(s)):
                r = t.next_sibling(c)
                if r is not None and step(r):
                    out.add(c)
    else:
        for s in order:
            for c in t.children(s):
                r = t.prev_sibling(c)
                if r is not None and step(r):
                    out.add(c)
    return out


def _axis_runs(t: Uot, s, axis):
    """Every maximal axis run starting strictly after s, as node lists."""
    if axis == "down":
        runs = []

        def walk(node, acc):
            kids = t.children(node)
            for c in kids:
                runs.append(acc + [c])
                walk(c, acc + [c])
        walk(s, [])
        return runs
    seq, p = [], s
    while True:
        p = {"up": t.parent, "right": t.next_sibling, "left": t.prev_sibling}[axis](p)
        if p is None:
            break
        seq.append(p)
    return [seq[: k + 1] for k in range(len(seq))]


def xeval_brute(f: XFormula, t: Uot) -> dict:
    """The strict semantics spelled out: try every target and check the nodes in between."""
    out: dict = {}

    def go(g):
        if g in out:
            return out[g]
        kids = [go(c) for c in g.children()]
        nodes = set(t.labels)
        if isinstance(g, XAtom):
            res = {s for s in nodes if g.name in t.labels[s]}
        elif isinstance(g, XTrue):
            res = nodes
        elif isinstance(g, XNot):
            res = nodes - kids[0]
        elif isinstance(g, XAnd):
            res = kids[0] & kids[1]
        else:
            phi, psi = kids
            res = {s for s in nodes
                   if any(run[-1] in psi and all(r in phi for r in run[:-1])
                          for run in _axis_runs(t, s, g.axis))}
        out[g] = frozenset(res)
        return out[g]
    go(f)
    return out


# --- translation into POTL --------------------------------------------------

_LT, _EQ = frozenset({YIELDS}), frozenset({EQUALS})


def iota(f: XFormula) -> P.Formula:
    memo: dict = {}
    stack = [f]
    while stack:
        g = stack[-1]
        if g in memo:
            stack.pop()
            continue
        pending = [c for c in g.children() if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        memo[g] = _iota_node(g, [memo[c] for c in g.children()])
    return memo[f]


def _iota_node(g, k):
    if isinstance(g, XAtom):
        return P.Atom(g.name)
    if isinstance(g, XTrue):
        return P.TRUE
    if isinstance(g, XNot):
        return P.Not(k[0])
    if isinstance(g, XAnd):
        return P.And(*k)
    phi, psi = k
    T = P.TRUE
    if g.axis == "down":
        u = P.Until("d", phi, psi)
        return P.Or(P.Next("d", u), P.ChainNext("d", u))
    if g.axis == "up":
        s = P.Since("d", phi, psi)
        return P.Or(P.Back("d", s), P.ChainBack("d", s))
    if g.axis == "right":
        d1 = P.HNext("u", P.HUntil("u", phi, psi))
        d2 = P.And(P.Not(P.HNext("u", P.HUntil("u", T, P.Not(phi)))),
                   P.PChainBack(_LT, P.PChainNext(_EQ, psi)))
        d3 = P.PBack(_LT, P.PChainNext(_LT, P.And(psi, P.Not(P.HBack("u", P.HSince("u", T, P.Not(phi)))))))
        d4 = P.PBack(_LT, P.And(P.PChainNext(_EQ, psi), P.Not(P.PChainNext(_LT, P.Not(phi)))))
        return P.Or(P.Or(P.Or(d1, d2), d3), d4)
    d1 = P.HBack("u", P.HSince("u", phi, psi))
    d2 = P.PChainBack(_EQ, P.PChainNext(_LT, P.And(P.Not(P.HNext("u", T)), P.HSince("u", phi, psi))))
    d3 = P.And(P.PChainBack(_LT, P.PNext(_LT, psi)), P.Not(P.HBack("u", P.HSince("u", T, P.Not(phi)))))
    d4 = P.PChainBack(_EQ, P.And(P.PNext(_LT, psi), P.Not(P.PChainNext(_LT, P.Not(phi)))))
    return P.Or(P.Or(P.Or(d1, d2), d3), d4)
