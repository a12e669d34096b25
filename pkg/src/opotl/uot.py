"""Unranked ordered trees and their correspondence with OP words.

A node address is a tuple of child numbers whose first entry is the root's
``0``; the root is ``(0,)`` and its k-th child is ``(0, k)``.  Addresses are
rendered dotted ("0", "0.1", "0.1.0").
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import IncompatibleTree, InvalidLabelSet, NodeNotFound, ParseError
from .opalpha import DELIM, EQUALS, TAKES, YIELDS, OpAlphabet
from .opparse import ChainSet, parse
from .opwords import OpWord, format_labelset, parse_tokens

ROOT = (0,)


def format_addr(s: tuple) -> str:
    return ".".join(str(k) for k in s)


def parse_addr(text: str) -> tuple:
    try:
        addr = tuple(int(k) for k in text.split("."))
    except ValueError:
        raise ParseError(f"bad node address {text!r}") from None
    if not addr or addr[0] != 0 or any(k < 0 for k in addr):
        raise ParseError(f"bad node address {text!r}")
    return addr


class Uot:
    """A finite labeled UOT.

    ``labels`` maps every node address to its label set.  When the tree is
    produced by :func:`tau`, ``node_of[i]`` and ``position_of[s]`` give the
    position/node bijection.
    """

    def __init__(self, labels: Mapping[tuple, frozenset], alphabet: OpAlphabet | None = None):
        labels = {tuple(s): frozenset(ls) for s, ls in labels.items()}
        if ROOT not in labels:
            raise InvalidLabelSet("tree has no root node 0")
        kids: dict = {s: [] for s in labels}
        for s in labels:
            if s[0] != 0 or any(k < 0 for k in s):
                raise InvalidLabelSet(f"bad address {format_addr(s)}")
            if s == ROOT:
                continue
            parent = s[:-1]
            if parent not in labels:
                raise InvalidLabelSet(f"node {format_addr(s)} has no parent")
            if s[-1] > 0 and parent + (s[-1] - 1,) not in labels:
                raise InvalidLabelSet(f"node {format_addr(s)} has no left sibling")
            kids[parent].append(s)
        for lst in kids.values():
            lst.sort()
        if alphabet is not None:
            for s, ls in labels.items():
                alphabet.structural_of(ls)
        self.labels = labels
        self.alphabet = alphabet
        self._children = {s: tuple(v) for s, v in kids.items()}
        self.node_of: tuple | None = None
        self.position_of: dict | None = None

    def _has(self, s):
        if s not in self.labels:
            raise NodeNotFound(f"no node {format_addr(s) if isinstance(s, tuple) else s}")

    @property
    def root(self):
        return ROOT

    def __len__(self):
        return len(self.labels)

    def __contains__(self, s):
        return s in self.labels

    def __eq__(self, other):
        return isinstance(other, Uot) and self.labels == other.labels

    def __hash__(self):
        return hash(frozenset(self.labels.items()))

    def __repr__(self):
        return f"Uot({len(self)} nodes)"

    def label(self, s):
        self._has(s)
        return self.labels[s]

    def children(self, s) -> tuple:
        self._has(s)
        return self._children[s]

    def parent(self, s):
        self._has(s)
        return s[:-1] if len(s) > 1 else None

    def next_sibling(self, s):
        self._has(s)
        if s == ROOT:
            return None
        r = s[:-1] + (s[-1] + 1,)
        return r if r in self.labels else None

    def prev_sibling(self, s):
        self._has(s)
        if s == ROOT or s[-1] == 0:
            return None
        return s[:-1] + (s[-1] - 1,)

    def preorder(self) -> list:
        out, stack = [], [ROOT]
        while stack:
            s = stack.pop()
            out.append(s)
            stack.extend(reversed(self._children[s]))
        return out

    def rel(self, s, t, alphabet: OpAlphabet | None = None):
        alpha = alphabet or self.alphabet
        if alpha is None:
            raise ValueError("tree has no alphabet; pass one explicitly")
        return alpha.rel(alpha.structural_of(self.label(s)), alpha.structural_of(self.label(t)))


def tau(w: OpWord, cs: ChainSet | None = None) -> Uot:
    if cs is None:
        cs = parse(w).chains
    size = len(w.labels)
    node_of: list = [None] * size
    node_of[0] = ROOT
    for i in range(size):
        s = node_of[i]
        if i + 1 >= size:
            continue
        r = w.pr(i, i + 1)
        if r is EQUALS:
            node_of[i + 1] = s + (0,)
        elif r is YIELDS:
            node_of[i + 1] = s + (0,)
            targets = [j for j in cs.right_contexts_of(i) if w.pr(i, j) in (YIELDS, EQUALS)]
            for k, j in enumerate(targets, 1):
                node_of[j] = s + (k,)
    t = Uot({node_of[i]: w.labels[i] for i in range(size)}, w.alphabet)
    t.node_of = tuple(node_of)
    t.position_of = {s: i for i, s in enumerate(node_of)}
    return t


def rc(t: Uot, s, alphabet: OpAlphabet | None = None):
    """Right context of ``s``, or None.

    The ``≐``-child test applies to ``s`` itself; climbing towards the root
    only looks for the first ancestor-or-self with a right sibling.  This is
    the reading under which the rightmost leaf of every non-last subtree has
    the next subtree's root as its right context.
    """
    t._has(s)
    if any(t.rel(s, c, alphabet) is EQUALS for c in t.children(s)[-1:]):
        return None
    p = s
    while p != ROOT:
        r = t.next_sibling(p)
        if r is not None:
            return r
        p = p[:-1]
    return None


@dataclass(frozen=True)
class CompatReport:
    ok: bool
    node: tuple | None = None
    rule: str | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def check_compat(t: Uot, alpha: OpAlphabet) -> CompatReport:
    """Check the four compatibility rules, stopping at the first broken one (pre-order)."""
    root_kids = t.children(ROOT)
    delim_nodes = {ROOT} | ({root_kids[-1]} if root_kids else set())

    def fail(s, rule, msg):
        return CompatReport(False, s, rule, f"node {format_addr(s)}: {msg}")

    for s in t.preorder():
        ls = t.labels[s]
        try:
            a = alpha.structural_of(ls)
        except InvalidLabelSet as e:
            return fail(s, "labels", str(e))
        if (a == DELIM) != (s in delim_nodes):
            return fail(s, "delimiter", "only the root and its rightmost child carry #")
        if a == DELIM and ls != {DELIM}:
            return fail(s, "delimiter", "# nodes carry no other label")
        kids = t.children(s)
        for k, c in enumerate(kids):
            try:
                r = alpha.rel(a, alpha.structural_of(t.labels[c]))
            except InvalidLabelSet as e:
                return fail(c, "labels", str(e))
            if k == len(kids) - 1:
                if r not in (YIELDS, EQUALS):
                    return fail(s, "rightmost-child", f"rightmost child {format_addr(c)} is not ⋖ or ≐")
            elif r is not YIELDS:
                return fail(s, "child-yields", f"child {format_addr(c)} is not ⋖")
        if s == ROOT and not kids:
            return fail(s, "delimiter", "root has no #-labeled rightmost child")
        r_ctx = rc(t, s, alpha)
        if r_ctx is not None:
            try:
                rel = alpha.rel(a, alpha.structural_of(t.labels[r_ctx]))
            except InvalidLabelSet as e:
                return fail(r_ctx, "labels", str(e))
            if rel is not TAKES:
                return fail(s, "right-context", f"not ⋗ its right context {format_addr(r_ctx)}")
    return CompatReport(True)


def tau_inverse(t: Uot, alpha: OpAlphabet | None = None) -> OpWord:
    """Pre-order flattening of a compatible tree back into a word."""
    alpha = alpha or t.alphabet
    if alpha is None:
        raise ValueError("tree has no alphabet; pass one explicitly")
    report = check_compat(t, alpha)
    if not report:
        raise IncompatibleTree(report.message)
    order = t.preorder()
    return OpWord(alpha, [t.labels[s] for s in order[1:-1]])


def serialize_tree(t: Uot, alphabet: OpAlphabet | None = None) -> str:
    alpha = alphabet or t.alphabet
    lines = []
    for s in t.preorder():
        ls = t.labels[s]
        text = format_labelset(alpha, ls) if alpha is not None else "{" + ",".join(sorted(ls)) + "}"
        lines.append("  " * (len(s) - 1) + f"{format_addr(s)} {text}")
    return "\n".join(lines) + "\n"


def load_tree(text: str, alpha: OpAlphabet | None = None) -> Uot:
    """Read ``addr label-set`` lines; indentation is for humans and ignored."""
    labels = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'address labels'", no)
        addr = parse_addr(parts[0])
        if parts[1] == DELIM:
            ls = frozenset({DELIM})
        else:
            try:
                (ls,) = parse_tokens(parts[1])
            except ParseError as e:
                raise ParseError(str(e), no) from None
        if addr in labels:
            raise ParseError(f"duplicate node {parts[0]}", no)
        labels[addr] = ls
    try:
        return Uot(labels, alpha)
    except InvalidLabelSet as e:
        raise ParseError(str(e)) from None
