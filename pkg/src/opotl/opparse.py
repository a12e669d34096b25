"""Bottom-up operator precedence parsing and the chain relation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import IncompatibleWord, ParseStuck
from .opalpha import EQUALS, TAKES, YIELDS
from .opwords import OpWord


@dataclass(eq=False)
class Node:
    """Internal (non-terminal) node; children are positions or nodes."""
    children: list = field(default_factory=list)

    @property
    def span(self):
        leaves = list(self.leaves())
        return (leaves[0], leaves[-1]) if leaves else None

    def leaves(self):
        for c in self.children:
            if isinstance(c, Node):
                yield from c.leaves()
            else:
                yield c

    def internal_nodes(self):
        yield self
        for c in self.children:
            if isinstance(c, Node):
                yield from c.internal_nodes()

    def shape(self):
        """Nested tuples, handy for comparisons and printing."""
        return tuple(c.shape() if isinstance(c, Node) else c for c in self.children)


@dataclass(eq=False)
class SyntaxTree:
    root: Node

    def leaves(self):
        return list(self.root.leaves())

    def shape(self):
        return self.root.shape()


class ChainSet:
    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        self.pairs = frozenset(pairs)
        right, left = {}, {}
        for i, j in self.pairs:
            right.setdefault(i, []).append(j)
            left.setdefault(j, []).append(i)
        self._right = {k: tuple(sorted(v)) for k, v in right.items()}
        self._left = {k: tuple(sorted(v)) for k, v in left.items()}

    def holds(self, i: int, j: int) -> bool:
        return (i, j) in self.pairs

    def right_contexts_of(self, i: int) -> list[int]:
        return list(self._right.get(i, ()))

    def left_contexts_of(self, j: int) -> list[int]:
        return list(self._left.get(j, ()))

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def __eq__(self, other):
        if isinstance(other, ChainSet):
            return self.pairs == other.pairs
        return self.pairs == frozenset(other)

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return "ChainSet({" + ", ".join(f"({i},{j})" for i, j in self) + "})"


def chain_holds(cs: ChainSet, i: int, j: int) -> bool:
    return cs.holds(i, j)


@dataclass(frozen=True)
class ParseResult:
    tree: SyntaxTree
    chains: ChainSet
    trace: tuple[str, ...]

    def __iter__(self):
        return iter((self.tree, self.chains, self.trace))


def _render(w: OpWord, items) -> str:
    out = []
    prev = None
    pending_n = False
    for it in items:
        if isinstance(it, Node):
            pending_n = True
            continue
        if prev is None:
            out.append(w.structural[it])
        else:
            r = w.pr(prev, it).value
            if pending_n:
                out.append(f"N {r} " if r == ">" else f"{r} N ")
            else:
                out.append(f"{r} ")
            out[-1] += w.structural[it]
        prev, pending_n = it, False
    return " ".join(out)


def _rel(w, a, b):
    r = w.pr(a, b)
    if r is None:
        raise IncompatibleWord(a, b)
    return r


def parse(w: OpWord) -> ParseResult:
    """Reduce the leftmost innermost handle until only ``# N #`` remains."""
    n = w.n
    if n == 0:
        return ParseResult(SyntaxTree(Node([])), ChainSet(), ("# #",))
    for i in range(n + 1):
        _rel(w, i, i + 1)
    items: list = list(range(n + 2))
    rows = [_render(w, items)]
    chains = []
    while True:
        terms = [k for k, it in enumerate(items) if not isinstance(it, Node)]
        if len(terms) == 2:
            break
        for k in range(len(terms) - 1):
            if _rel(w, items[terms[k]], items[terms[k + 1]]) is TAKES:
                break
        else:
            raise ParseStuck("no handle ends with a '>' relation")
        j = k
        while j > 0 and _rel(w, items[terms[j - 1]], items[terms[j]]) is EQUALS:
            j -= 1
        if j == 0 or _rel(w, items[terms[j - 1]], items[terms[j]]) is not YIELDS:
            raise ParseStuck(f"handle ending at position {items[terms[k]]} has no '<' on its left")
        lo, hi = terms[j - 1], terms[k + 1]
        # the contexts become adjacent; neither can be reduced without comparing them
        _rel(w, items[lo], items[hi])
        chains.append((items[lo], items[hi]))
        node = Node(items[lo + 1:hi])
        items[lo + 1:hi] = [node]
        rows.append(_render(w, items))
    root = items[1]
    return ParseResult(SyntaxTree(root), ChainSet(chains), tuple(rows))


@dataclass(frozen=True)
class ChainReport:
    ok: bool
    prop: int | None = None
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def validate_chain_properties(w: OpWord, cs: ChainSet) -> ChainReport:
    pairs = sorted(cs.pairs)
    for i, j in pairs:
        for h, k in pairs:
            if (i < h < j and not k <= j) or (i < k < j and not i <= h):
                return ChainReport(False, 1, ((i, j), (h, k)))
    for i, j in pairs:
        if w.pr(i, i + 1) is not YIELDS or w.pr(j - 1, j) is not TAKES:
            return ChainReport(False, 2, ((i, j),))
    for j in sorted({j for _, j in pairs}):
        lefts = cs.left_contexts_of(j)
        if w.pr(lefts[0], j) not in (YIELDS, EQUALS):
            return ChainReport(False, 3, (lefts[0], j))
        for i in lefts[1:]:
            if w.pr(i, j) is not TAKES:
                return ChainReport(False, 3, (i, j))
    for i in sorted({i for i, _ in pairs}):
        rights = cs.right_contexts_of(i)
        if w.pr(i, rights[-1]) not in (TAKES, EQUALS):
            return ChainReport(False, 4, (i, rights[-1]))
        for j in rights[:-1]:
            if w.pr(i, j) is not YIELDS:
                return ChainReport(False, 4, (i, j))
    return ChainReport(True)
