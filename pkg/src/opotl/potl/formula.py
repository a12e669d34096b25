"""POTL abstract syntax, derived operators, and the ASCII concrete syntax."""
from __future__ import annotations

from dataclasses import dataclass

from .._ast import Node
from .._syntax import Grammar
from ..opalpha import DOWN_RELS, EQUALS, TAKES, UP_RELS, YIELDS, Prec

DIRS = ("d", "u")


class Formula(Node):
    __slots__ = ()

    def __repr__(self):
        return f"<{to_str(self)}>"

    def __str__(self):
        return to_str(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


def _dir(d):
    if d not in DIRS:
        raise ValueError(f"direction must be 'd' or 'u', got {d!r}")


@dataclass(frozen=True, eq=False, repr=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False, repr=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, eq=False, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False, repr=False)
class Unary(Formula):
    dir: str
    arg: Formula

    def __post_init__(self):
        _dir(self.dir)


@dataclass(frozen=True, eq=False, repr=False)
class Binary(Formula):
    dir: str
    left: Formula
    right: Formula

    def __post_init__(self):
        _dir(self.dir)


class Next(Unary):
    """``Nd``/``Nu``: next position, reached with a down (up) relation."""


class Back(Unary):
    pass


class ChainNext(Unary):
    pass


class ChainBack(Unary):
    pass


class HNext(Unary):
    pass


class HBack(Unary):
    pass


class Until(Binary):
    """Summary until over downward (upward) summary paths."""


class Since(Binary):
    pass


class HUntil(Binary):
    pass


class HSince(Binary):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Filtered(Formula):
    """Next/back style operator restricted to an explicit set of relations."""
    rels: frozenset
    arg: Formula

    def __post_init__(self):
        rels = frozenset(r if isinstance(r, Prec) else Prec(r) for r in self.rels)
        if not rels:
            raise ValueError("empty relation filter")
        object.__setattr__(self, "rels", rels)


class PNext(Filtered):
    pass


class PBack(Filtered):
    pass


class PChainNext(Filtered):
    pass


class PChainBack(Filtered):
    pass


TRUE = Top()
FALSE = Not(TRUE)


def rels_of(direction: str) -> frozenset:
    return DOWN_RELS if direction == "d" else UP_RELS


def implies(a, b):
    return Or(Not(a), b)


def eventually(direction, f):
    return Until(direction, TRUE, f)


def globally(direction, f):
    return Not(eventually(direction, Not(f)))


def ltl_globally(f):
    return Not(eventually("u", eventually("d", Not(f))))


def call_thr(psi):
    exc = And(Atom("exc"), psi)
    return Or(Next("u", exc), ChainNext("u", exc))


def scall(phi, psi):
    call = Atom("call")
    return Since("d", implies(call, phi), And(call, psi))


def atoms_of(f: Formula):
    return sorted({g.name for g in f.subformulas() if isinstance(g, Atom)})


# --- concrete syntax -----------------------------------------------------

_PREFIX = {
    Next: "N", Back: "B", ChainNext: "CN", ChainBack: "CB", HNext: "HN", HBack: "HB",
}
_INFIX = {Until: "U", Since: "S", HUntil: "HU", HSince: "HS"}
_FILTER = {PNext: "N", PBack: "B", PChainNext: "CN", PChainBack: "CB"}
_REL_ORDER = {YIELDS: 0, EQUALS: 1, TAKES: 2}


def format_rels(rels) -> str:
    return "".join(r.value for r in sorted(rels, key=_REL_ORDER.get))


def to_str(f: Formula, level: int = 0) -> str:
    """ASCII rendering that `parse_potl` reads back to the same tree."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if f == FALSE:
        return "F"
    if isinstance(f, Not):
        return "~" + to_str(f.arg, 4)
    if type(f) in _PREFIX:
        return f"{_PREFIX[type(f)]}{f.dir} " + to_str(f.arg, 4)
    if type(f) in _FILTER:
        return f"{_FILTER[type(f)]}[{format_rels(f.rels)}] " + to_str(f.arg, 4)
    if isinstance(f, And):
        s, own = f"{to_str(f.left, 3)} & {to_str(f.right, 4)}", 3
    elif isinstance(f, Or):
        s, own = f"{to_str(f.left, 2)} | {to_str(f.right, 3)}", 2
    elif type(f) in _INFIX:
        s, own = f"{to_str(f.left, 1)} {_INFIX[type(f)]}{f.dir} {to_str(f.right, 0)}", 0
    else:
        raise TypeError(f"not a POTL formula: {f!r}")
    return f"({s})" if level > own else s


def _grammar():
    prefix = {}
    for cls, name in _PREFIX.items():
        for d in DIRS:
            prefix[name + d] = (lambda c, dd: lambda a: c(dd, a))(cls, d)
    for d in DIRS:
        prefix["F" + d] = (lambda dd: lambda a: eventually(dd, a))(d)
        prefix["G" + d] = (lambda dd: lambda a: globally(dd, a))(d)
    prefix["G"] = ltl_globally
    infix = {}
    for cls, name in _INFIX.items():
        for d in DIRS:
            infix[name + d] = (lambda c, dd: lambda a, b: c(dd, a, b))(cls, d)
    filters = {name: (lambda c: lambda rels, a: c(frozenset(Prec(r) for r in rels), a))(cls)
               for cls, name in _FILTER.items()}
    return Grammar(
        atom=Atom, true=lambda: TRUE, false=lambda: FALSE, neg=Not, conj=And, disj=Or,
        implies=implies, prefix=prefix, infix=infix, filters=filters,
        functions={"CallThr": (1, call_thr), "Scall": (2, scall)},
    )


GRAMMAR = _grammar()


def parse_potl(text: str) -> Formula:
    return GRAMMAR.parse(text)
