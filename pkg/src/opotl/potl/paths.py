"""Summary and hierarchical paths, and a path-based reference evaluator.

The reference evaluator follows the definitions literally (search over all
candidate endpoints and build each path), so it shares nothing with the
sweeps in :mod:`semantics` beyond the chain set.
"""
from __future__ import annotations

from ..errors import PositionError
from ..opalpha import DOWN_RELS, TAKES, UP_RELS, YIELDS
from ..opparse import ChainSet
from ..opwords import OpWord
from .formula import (And, Atom, Back, ChainBack, ChainNext, Filtered, HBack, HNext, HSince,
                      HUntil, Next, Not, Or, PBack, PChainBack, PChainNext, PNext, Since, Top,
                      Until, rels_of)


def _check(w, *positions):
    for p in positions:
        if not 0 <= p < len(w.labels):
            raise PositionError(f"position {p} outside 0..{len(w.labels) - 1}")


def summary_path(w: OpWord, cs: ChainSet, i: int, j: int, rels) -> list[int] | None:
    """Forward path from i to j: jump to the greatest allowed chain target
    not beyond j, otherwise step to i+1 when the relation allows."""
    _check(w, i, j)
    if i > j:
        return None
    path, p = [i], i
    while p < j:
        targets = [k for k in cs.right_contexts_of(p) if k <= j and w.pr(p, k) in rels]
        if targets:
            p = max(targets)
        elif w.pr(p, p + 1) in rels:
            p += 1
        else:
            return None
        path.append(p)
    return path


def summary_path_back(w: OpWord, cs: ChainSet, i: int, j: int, rels) -> list[int] | None:
    """Backward path from i down to j (j <= i), built with the mirrored recurrence.

    Returned in decreasing order."""
    _check(w, i, j)
    if j > i:
        return None
    path, p = [i], i
    while p > j:
        sources = [h for h in cs.left_contexts_of(p) if h >= j and w.pr(h, p) in rels]
        if sources:
            p = min(sources)
        elif w.pr(p - 1, p) in rels:
            p -= 1
        else:
            return None
        path.append(p)
    return path


def dsp(w, cs, i, j):
    if i <= j:
        return summary_path(w, cs, i, j, DOWN_RELS)
    return summary_path_back(w, cs, i, j, DOWN_RELS)


def usp(w, cs, i, j):
    if i <= j:
        return summary_path(w, cs, i, j, UP_RELS)
    return summary_path_back(w, cs, i, j, UP_RELS)


def _up_context(w, cs, i):
    hs = [h for h in cs.left_contexts_of(i) if w.pr(h, i) is YIELDS]
    return hs[0] if hs else None


def _down_context(w, cs, i):
    hs = [h for h in cs.right_contexts_of(i) if w.pr(i, h) is TAKES]
    return hs[0] if hs else None


def uhp(w: OpWord, cs: ChainSet, i: int, j: int) -> list[int] | None:
    """Positions between i and j that share i's yielding left context, in order from i."""
    _check(w, i, j)
    lo, hi = min(i, j), max(i, j)
    h = _up_context(w, cs, lo)
    if h is None:
        return None
    group = [k for k in cs.right_contexts_of(h) if lo <= k <= hi and w.pr(h, k) is YIELDS]
    if not group or group[0] != lo or group[-1] != hi:
        return None
    return group if i <= j else group[::-1]


def dhp(w: OpWord, cs: ChainSet, i: int, j: int) -> list[int] | None:
    _check(w, i, j)
    lo, hi = min(i, j), max(i, j)
    h = _down_context(w, cs, hi)
    if h is None:
        return None
    group = [k for k in cs.left_contexts_of(h) if lo <= k <= hi and w.pr(k, h) is TAKES]
    if not group or group[0] != lo or group[-1] != hi:
        return None
    return group if i <= j else group[::-1]


def eval_by_paths(f, w: OpWord, cs: ChainSet) -> dict:
    """Map every subformula to its set of positions, straight from the definitions."""
    out: dict = {}
    _paths_eval(f, w, cs, out)
    return out


def _paths_eval(f, w, cs, out):
    if f in out:
        return out[f]
    U = range(len(w.labels))
    sub = [_paths_eval(c, w, cs, out) for c in f.children()]
    pr = w.pr
    if isinstance(f, Atom):
        res = {i for i in U if f.name in w.labels[i]}
    elif isinstance(f, Top):
        res = set(U)
    elif isinstance(f, Not):
        res = set(U) - sub[0]
    elif isinstance(f, And):
        res = sub[0] & sub[1]
    elif isinstance(f, Or):
        res = sub[0] | sub[1]
    else:
        rels = f.rels if isinstance(f, Filtered) else rels_of(f.dir) if hasattr(f, "dir") else None
        if isinstance(f, (Next, PNext)):
            res = {i for i in U if i + 1 in sub[0] and pr(i, i + 1) in rels}
        elif isinstance(f, (Back, PBack)):
            res = {i for i in U if i - 1 in sub[0] and pr(i - 1, i) in rels}
        elif isinstance(f, (ChainNext, PChainNext)):
            res = {i for i in U for j in U if cs.holds(i, j) and pr(i, j) in rels and j in sub[0]}
        elif isinstance(f, (ChainBack, PChainBack)):
            res = {i for i in U for j in U if cs.holds(j, i) and pr(j, i) in rels and j in sub[0]}
        elif isinstance(f, Until):
            phi, psi = sub
            res = set()
            for i in U:
                for j in U:
                    p = summary_path(w, cs, i, j, rels)
                    if p and j in psi and all(k in phi for k in p[:-1]):
                        res.add(i)
                        break
        elif isinstance(f, Since):
            phi, psi = sub
            res = set()
            for i in U:
                for j in U:
                    p = summary_path(w, cs, j, i, rels)
                    if p and j in psi and all(k in phi for k in p[1:]):
                        res.add(i)
                        break
        elif isinstance(f, (HNext, HBack)):
            res = {i for i in U if _hier_step(w, cs, f, i) in sub[0]}
        elif isinstance(f, (HUntil, HSince)):
            phi, psi = sub
            find = uhp if f.dir == "u" else dhp
            res = set()
            for i in U:
                for j in U:
                    if isinstance(f, HUntil):
                        p = find(w, cs, i, j) if j >= i else None
                        rest = p[:-1] if p else ()
                    else:
                        p = find(w, cs, j, i) if j <= i else None
                        rest = p[1:] if p else ()
                    if p and j in psi and all(k in phi for k in rest):
                        res.add(i)
                        break
        else:
            raise TypeError(f"cannot evaluate {f!r}")
    out[f] = res
    return res


def _hier_step(w, cs, f, i):
    """Target of a hierarchical next/back at i, or None."""
    if f.dir == "u":
        hs = [h for h in range(i) if cs.holds(h, i) and w.pr(h, i) is YIELDS]
        if not hs:
            return None
        h = hs[0]
        ks = [k for k in cs.right_contexts_of(h) if w.pr(h, k) is YIELDS]
    else:
        hs = [h for h in range(i + 1, len(w.labels)) if cs.holds(i, h) and w.pr(i, h) is TAKES]
        if not hs:
            return None
        h = hs[0]
        ks = [k for k in cs.left_contexts_of(h) if w.pr(k, h) is TAKES]
    if isinstance(f, HNext):
        later = [k for k in ks if k > i]
        return min(later) if later else None
    earlier = [k for k in ks if k < i]
    return max(earlier) if earlier else None
