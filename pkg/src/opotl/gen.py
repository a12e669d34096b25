"""Random formulas and alphabets for the cross-check suites."""
from __future__ import annotations

import random

from .opalpha import DELIM, EQUALS, TAKES, YIELDS, OpAlphabet, Prec
from .potl import formula as P
from .potl import ltl as L

_POTL_UNARY = (P.Next, P.Back, P.ChainNext, P.ChainBack, P.HNext, P.HBack)
_POTL_BINARY = (P.Until, P.Since, P.HUntil, P.HSince)
_FILTERED = (P.PNext, P.PBack, P.PChainNext, P.PChainBack)


def _rng(seed, rng):
    return rng if rng is not None else random.Random(seed)


def random_potl(atoms, depth: int, seed=None, *, rng=None, filtered: bool = True) -> P.Formula:
    """A random formula of nesting depth at most ``depth``."""
    r = _rng(seed, rng)
    atoms = list(atoms)

    def go(d):
        if d == 0 or r.random() < 0.2:
            return P.TRUE if r.random() < 0.1 else P.Atom(r.choice(atoms))
        k = r.random()
        if k < 0.15:
            return P.Not(go(d - 1))
        if k < 0.3:
            return r.choice((P.And, P.Or))(go(d - 1), go(d - 1))
        if k < 0.6:
            return r.choice(_POTL_UNARY)(r.choice(P.DIRS), go(d - 1))
        if filtered and k < 0.7:
            rels = frozenset(x for x in Prec if r.random() < 0.5) or frozenset({r.choice(list(Prec))})
            return r.choice(_FILTERED)(rels, go(d - 1))
        return r.choice(_POTL_BINARY)(r.choice(P.DIRS), go(d - 1), go(d - 1))
    return go(depth)


def random_ltl(atoms, depth: int, seed=None, *, rng=None) -> L.Ltl:
    r = _rng(seed, rng)
    atoms = list(atoms)

    def go(d):
        if d == 0 or r.random() < 0.2:
            return L.LTrue() if r.random() < 0.1 else L.LAtom(r.choice(atoms))
        k = r.random()
        if k < 0.15:
            return L.LNot(go(d - 1))
        if k < 0.35:
            return r.choice((L.LAnd, L.LOr))(go(d - 1), go(d - 1))
        if k < 0.6:
            return r.choice((L.LNext, L.LBack, L.LGlobally))(go(d - 1))
        return r.choice((L.LUntil, L.LSince))(go(d - 1), go(d - 1))
    return go(depth)


def random_opm(n_structural: int, seed=None, *, rng=None, n_normal: int = 2,
               density: float = 0.85) -> OpAlphabet:
    """A random (possibly partial) precedence matrix over letters s0, s1, ..."""
    r = _rng(seed, rng)
    letters = [f"s{i}" for i in range(n_structural)]
    matrix = {}
    for a in letters:
        matrix[(DELIM, a)] = YIELDS
        matrix[(a, DELIM)] = TAKES
        for b in letters:
            if r.random() < density:
                matrix[(a, b)] = r.choice((YIELDS, EQUALS, TAKES))
    normal = [f"p{i}" for i in range(n_normal)]
    return OpAlphabet(letters, normal, matrix)


def random_xuntil(atoms, depth: int, seed=None, *, rng=None):
    from . import xuntil as X

    r = _rng(seed, rng)
    atoms = list(atoms)

    def go(d):
        if d == 0 or r.random() < 0.2:
            return X.XTRUE if r.random() < 0.1 else X.XAtom(r.choice(atoms))
        k = r.random()
        if k < 0.2:
            return X.XNot(go(d - 1))
        if k < 0.4:
            return X.XAnd(go(d - 1), go(d - 1))
        return X.XUntil(r.choice(X.AXES), go(d - 1), go(d - 1))
    return go(depth)
