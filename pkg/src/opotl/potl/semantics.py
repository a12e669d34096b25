"""Bottom-up labeling of POTL formulas on finite OP words.

Truth sets are kept as integer bitmasks over the positions 0..n+1.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..opalpha import TAKES, YIELDS
from ..opparse import ChainSet, parse
from ..opwords import OpWord
from .formula import (And, Atom, Back, ChainBack, ChainNext, Filtered, Formula, HBack, HNext,
                      HSince, HUntil, Next, Not, Or, PBack, PChainBack, PChainNext, PNext, Since,
                      Top, Until, rels_of)


class Structure:
    """Per-word tables shared by every operator."""

    def __init__(self, w: OpWord, cs: ChainSet):
        self.word = w
        self.chains = cs
        size = len(w.labels)
        self.size = size
        self.full = (1 << size) - 1
        self.adj = [w.pr(i, i + 1) for i in range(size - 1)]
        self.right = [[(j, w.pr(i, j)) for j in cs.right_contexts_of(i)] for i in range(size)]
        self.left = [[(h, w.pr(h, i)) for h in cs.left_contexts_of(i)] for i in range(size)]
        self.hu_next, self.hu_prev, self.hu_base = self._siblings("u")
        self.hd_next, self.hd_prev, self.hd_base = self._siblings("d")

    def _siblings(self, direction):
        """Hierarchical successor/predecessor tables.

        Up: positions sharing the same left context h with h < i in the yields
        relation.  Down: positions sharing the right context h with i > h
        in the takes relation.
        """
        nxt = [None] * self.size
        prv = [None] * self.size
        base = 0
        for i in range(self.size):
            if direction == "u":
                ctx = self.left[i]
                if not ctx or ctx[0][1] is not YIELDS:
                    continue
                h = ctx[0][0]
                group = [k for k, r in self.right[h] if r is YIELDS]
            else:
                ctx = self.right[i]
                if not ctx or ctx[-1][1] is not TAKES:
                    continue
                h = ctx[-1][0]
                group = [k for k, r in self.left[h] if r is TAKES]
            base |= 1 << i
            at = group.index(i)
            if at + 1 < len(group):
                nxt[i] = group[at + 1]
            if at > 0:
                prv[i] = group[at - 1]
        return nxt, prv, base

    def atom(self, name):
        m = 0
        for i, ls in enumerate(self.word.labels):
            if name in ls:
                m |= 1 << i
        return m


def _bit(m, i):
    return (m >> i) & 1


class EvalResult:
    """Truth sets of every evaluated subformula."""

    def __init__(self, structure: Structure, masks: dict):
        self.structure = structure
        self._masks = masks

    def mask(self, f: Formula) -> int:
        return self._masks[f]

    def holds(self, f: Formula) -> frozenset:
        m = self._masks[f]
        return frozenset(i for i in range(self.structure.size) if _bit(m, i))

    __getitem__ = holds

    def at(self, f: Formula, i: int) -> bool:
        return bool(_bit(self._masks[f], i))

    def interior(self, f: Formula) -> frozenset:
        return frozenset(i for i in self.holds(f) if 0 < i < self.structure.size - 1)

    def subformulas(self):
        return list(self._masks)

    def as_sets(self):
        return {f: self.holds(f) for f in self._masks}


class Evaluator:
    def __init__(self, structure: Structure):
        self.s = structure
        self.memo: dict = {}

    def __call__(self, f: Formula) -> int:
        # iterative post-order so deep translated formulas do not hit the recursion limit
        memo = self.memo
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
            memo[g] = self._apply(g)
        return memo[f]

    def _apply(self, f):
        s, m = self.s, self.memo
        if isinstance(f, Atom):
            return s.atom(f.name)
        if isinstance(f, Top):
            return s.full
        if isinstance(f, Not):
            return s.full & ~m[f.arg]
        if isinstance(f, And):
            return m[f.left] & m[f.right]
        if isinstance(f, Or):
            return m[f.left] | m[f.right]
        if isinstance(f, Filtered):
            rels = f.rels
        elif hasattr(f, "dir"):
            rels = rels_of(f.dir)
        if isinstance(f, (Next, PNext)):
            return self._next(rels, m[f.arg])
        if isinstance(f, (Back, PBack)):
            return self._back(rels, m[f.arg])
        if isinstance(f, (ChainNext, PChainNext)):
            return self._chain(s.right, rels, m[f.arg])
        if isinstance(f, (ChainBack, PChainBack)):
            return self._chain(s.left, rels, m[f.arg])
        if isinstance(f, Until):
            return self._until(rels, m[f.left], m[f.right])
        if isinstance(f, Since):
            return self._since(rels, m[f.left], m[f.right])
        if isinstance(f, HNext):
            table = s.hu_next if f.dir == "u" else s.hd_next
            return self._follow(table, m[f.arg])
        if isinstance(f, HBack):
            table = s.hu_prev if f.dir == "u" else s.hd_prev
            return self._follow(table, m[f.arg])
        if isinstance(f, (HUntil, HSince)):
            up = f.dir == "u"
            base = s.hu_base if up else s.hd_base
            if isinstance(f, HUntil):
                table, order = (s.hu_next if up else s.hd_next), range(s.size - 1, -1, -1)
            else:
                table, order = (s.hu_prev if up else s.hd_prev), range(s.size)
            return self._hier(table, order, base, m[f.left], m[f.right])
        raise TypeError(f"cannot evaluate {f!r}")

    def _next(self, rels, a):
        out = 0
        for i, r in enumerate(self.s.adj):
            if r in rels and _bit(a, i + 1):
                out |= 1 << i
        return out

    def _back(self, rels, a):
        out = 0
        for i, r in enumerate(self.s.adj):
            if r in rels and _bit(a, i):
                out |= 1 << (i + 1)
        return out

    def _chain(self, ctx, rels, a):
        out = 0
        for i, pairs in enumerate(ctx):
            if any(r in rels and _bit(a, j) for j, r in pairs):
                out |= 1 << i
        return out

    def _until(self, rels, phi, psi):
        s = self.s
        out = 0
        for i in range(s.size - 1, -1, -1):
            if _bit(psi, i):
                out |= 1 << i
            elif _bit(phi, i):
                if i + 1 < s.size and s.adj[i] in rels and _bit(out, i + 1):
                    out |= 1 << i
                elif any(r in rels and _bit(out, j) for j, r in s.right[i]):
                    out |= 1 << i
        return out

    def _since(self, rels, phi, psi):
        s = self.s
        out = 0
        for i in range(s.size):
            if _bit(psi, i):
                out |= 1 << i
            elif _bit(phi, i):
                if i > 0 and s.adj[i - 1] in rels and _bit(out, i - 1):
                    out |= 1 << i
                elif any(r in rels and _bit(out, h) for h, r in s.left[i]):
                    out |= 1 << i
        return out

    def _follow(self, table, a):
        out = 0
        for i, j in enumerate(table):
            if j is not None and _bit(a, j):
                out |= 1 << i
        return out

    def _hier(self, table, order, base, phi, psi):
        out = 0
        for i in order:
            j = table[i]
            if (_bit(psi, i) and _bit(base, i)) or (_bit(phi, i) and j is not None and _bit(out, j)):
                out |= 1 << i
        return out


def evaluate(f: Formula, w: OpWord, cs: ChainSet | None = None) -> EvalResult:
    """Label every subformula of ``f`` with the positions where it holds."""
    if cs is None:
        cs = parse(w).chains
    ev = Evaluator(Structure(w, cs))
    ev(f)
    return EvalResult(ev.s, ev.memo)


def holds_at(f: Formula, w: OpWord, i: int, cs: ChainSet | None = None) -> bool:
    return evaluate(f, w, cs).at(f, i)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    checked: int
    counterexample: OpWord | None = None

    def __bool__(self):
        return self.ok


def check_automaton(a, f: Formula, max_body: int) -> CheckResult:
    """Evaluate ``f`` at position 0 of every word the automaton accepts up to ``max_body``."""
    from ..opa import enumerate_accepted

    words = enumerate_accepted(a, max_body)
    for k, w in enumerate(words):
        if not holds_at(f, w, 0):
            return CheckResult(False, k + 1, w)
    return CheckResult(True, len(words))
