"""Past/future LTL on finite words and its translation into POTL."""
from __future__ import annotations

from dataclasses import dataclass

from .._ast import Node
from .._syntax import Grammar
from ..opalpha import TAKES, YIELDS
from ..opwords import OpWord
from . import formula as P


class Ltl(Node):
    __slots__ = ()

    def __repr__(self):
        return f"<{ltl_to_str(self)}>"

    def __str__(self):
        return ltl_to_str(self)


@dataclass(frozen=True, eq=False, repr=False)
class LAtom(Ltl):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class LTrue(Ltl):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class LNot(Ltl):
    arg: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LAnd(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LOr(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LNext(Ltl):
    arg: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LBack(Ltl):
    arg: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LUntil(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LSince(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True, eq=False, repr=False)
class LGlobally(Ltl):
    arg: Ltl


def ltl_eval(f: Ltl, w: OpWord) -> frozenset:
    """Textbook semantics over positions 0..n+1 of the linear order."""
    memo: dict = {}
    return frozenset(_leval(f, w, memo))


def _leval(f, w, memo):
    if f in memo:
        return memo[f]
    U = range(len(w.labels))
    last = len(w.labels) - 1
    kids = [_leval(c, w, memo) for c in f.children()]
    if isinstance(f, LAtom):
        res = {i for i in U if f.name in w.labels[i]}
    elif isinstance(f, LTrue):
        res = set(U)
    elif isinstance(f, LNot):
        res = set(U) - kids[0]
    elif isinstance(f, LAnd):
        res = kids[0] & kids[1]
    elif isinstance(f, LOr):
        res = kids[0] | kids[1]
    elif isinstance(f, LNext):
        res = {i for i in U if i < last and i + 1 in kids[0]}
    elif isinstance(f, LBack):
        res = {i for i in U if i > 0 and i - 1 in kids[0]}
    elif isinstance(f, LUntil):
        phi, psi = kids
        res = {i for i in U
               if any(j in psi and all(k in phi for k in range(i, j)) for j in range(i, last + 1))}
    elif isinstance(f, LSince):
        phi, psi = kids
        res = {i for i in U
               if any(j in psi and all(k in phi for k in range(j + 1, i + 1)) for j in range(i + 1))}
    elif isinstance(f, LGlobally):
        res = {i for i in U if all(j in kids[0] for j in range(i, last + 1))}
    else:
        raise TypeError(f"not an LTL formula: {f!r}")
    memo[f] = res
    return res


def alpha_guard(phi: P.Formula) -> P.Formula:
    bad = P.Until("d", P.TRUE, P.Not(phi))
    return P.implies(P.ChainNext("u", P.TRUE),
                     P.Not(P.Or(P.Next("d", bad), P.PChainNext(frozenset({YIELDS}), bad))))


def beta_guard(phi: P.Formula) -> P.Formula:
    bad = P.Since("u", P.TRUE, P.Not(phi))
    return P.implies(P.ChainBack("d", P.TRUE),
                     P.Not(P.Or(P.Back("u", bad), P.PChainBack(frozenset({TAKES}), bad))))


def translate_ltl(f: Ltl, printed: bool = False) -> P.Formula:
    """LTL to POTL.

    ``printed=True`` emits the until/since shape with the path guards applied
    at every position of the second summary phase, including its first one.
    That shape is wrong when the first position of the downward phase has a
    chain body on its left that starts before the evaluation point (the guard
    then inspects positions the LTL until never looks at); e.g. ``pA U pB`` at
    position 2 of ``exc{pC} call{pA,pErr} han{pB}``.  The default form drops
    the guard at that single position by unfolding the inner until once.
    """
    memo: dict = {}
    return _tr(f, memo, printed)


def _tr(f, memo, printed):
    if f in memo:
        return memo[f]
    k = [_tr(c, memo, printed) for c in f.children()]
    if isinstance(f, LAtom):
        out = P.Atom(f.name)
    elif isinstance(f, LTrue):
        out = P.TRUE
    elif isinstance(f, LNot):
        out = P.Not(k[0])
    elif isinstance(f, LAnd):
        out = P.And(*k)
    elif isinstance(f, LOr):
        out = P.Or(*k)
    elif isinstance(f, LNext):
        out = P.Or(P.Next("d", k[0]), P.Next("u", k[0]))
    elif isinstance(f, LBack):
        out = P.Or(P.Back("d", k[0]), P.Back("u", k[0]))
    elif isinstance(f, LGlobally):
        out = P.ltl_globally(k[0])
    elif isinstance(f, LUntil):
        phi, psi = k
        a, b = alpha_guard(phi), beta_guard(phi)
        down = P.Until("d", P.And(phi, b), P.And(psi, b))
        if printed:
            inner = P.Or(psi, down)
        else:
            inner = P.Or(psi, P.And(phi, P.Or(P.Next("d", down), P.ChainNext("d", down))))
        out = P.Or(psi, P.Until("u", P.And(phi, a), inner))
    elif isinstance(f, LSince):
        # mirror image of the until case under word reversal
        phi, psi = k
        a, b = alpha_guard(phi), beta_guard(phi)
        up = P.Since("u", P.And(phi, a), P.And(psi, a))
        if printed:
            inner = P.Or(psi, up)
        else:
            inner = P.Or(psi, P.And(phi, P.Or(P.Back("u", up), P.ChainBack("u", up))))
        out = P.Or(psi, P.Since("d", P.And(phi, b), inner))
    else:
        raise TypeError(f"not an LTL formula: {f!r}")
    memo[f] = out
    return out


def ltl_to_str(f: Ltl, level: int = 0) -> str:
    if isinstance(f, LAtom):
        return f.name
    if isinstance(f, LTrue):
        return "T"
    if isinstance(f, LNot):
        return "F" if isinstance(f.arg, LTrue) else "~" + ltl_to_str(f.arg, 4)
    for cls, name in ((LNext, "X"), (LBack, "Y"), (LGlobally, "G")):
        if isinstance(f, cls):
            return f"{name} " + ltl_to_str(f.arg, 4)
    if isinstance(f, LAnd):
        s, own = f"{ltl_to_str(f.left, 3)} & {ltl_to_str(f.right, 4)}", 3
    elif isinstance(f, LOr):
        s, own = f"{ltl_to_str(f.left, 2)} | {ltl_to_str(f.right, 3)}", 2
    elif isinstance(f, (LUntil, LSince)):
        op = "U" if isinstance(f, LUntil) else "S"
        s, own = f"{ltl_to_str(f.left, 1)} {op} {ltl_to_str(f.right, 0)}", 0
    else:
        raise TypeError(f"not an LTL formula: {f!r}")
    return f"({s})" if level > own else s


LTL_GRAMMAR = Grammar(
    atom=LAtom, true=LTrue, false=lambda: LNot(LTrue()), neg=LNot, conj=LAnd, disj=LOr,
    implies=lambda a, b: LOr(LNot(a), b),
    prefix={"X": LNext, "Y": LBack, "G": LGlobally},
    infix={"U": LUntil, "S": LSince},
)


def parse_ltl(text: str) -> Ltl:
    return LTL_GRAMMAR.parse(text)
