"""Finite OP words: delimiter-bracketed sequences of label sets."""
from __future__ import annotations

import random
import re
from typing import Iterable, Sequence

from .errors import (AdjacentPrecedenceUndefined, GenerationFailure, InvalidLabelSet,
                     MissingStructuralLabel, ParseError, PositionError, UnknownProp)
from .opalpha import DELIM, EQUALS, TAKES, YIELDS, OpAlphabet, Prec

DELIM_SET = frozenset({DELIM})


class OpWord:
    """Positions 0..n+1, where 0 and n+1 carry exactly ``{#}``.

    The constructor takes the interior label sets.  With ``check=False`` the
    adjacent-precedence invariant is not enforced, which is how arbitrary
    strings over the alphabet are represented (the parser and automata then
    reject them).
    """

    def __init__(self, alphabet: OpAlphabet, body: Iterable[Iterable[str]], check: bool = True):
        self.alphabet = alphabet
        body = tuple(frozenset(ls) for ls in body)
        for i, ls in enumerate(body, 1):
            unknown = ls - alphabet.props
            if unknown:
                raise UnknownProp(f"position {i}: unknown propositions {sorted(unknown)}")
            if DELIM in ls:
                raise InvalidLabelSet(f"position {i}: '#' only labels the delimiters")
            structural = [p for p in ls if p in alphabet.structural]
            if not structural:
                raise MissingStructuralLabel(f"position {i}: no structural label in {sorted(ls)}")
            if len(structural) > 1:
                raise InvalidLabelSet(f"position {i}: several structural labels {sorted(structural)}")
        self.labels = (DELIM_SET,) + body + (DELIM_SET,)
        self.structural = tuple(alphabet.structural_of(ls) for ls in self.labels)
        if check:
            for i in range(len(self.labels) - 1):
                if self.pr(i, i + 1) is None:
                    raise AdjacentPrecedenceUndefined(i)

    @property
    def n(self):
        return len(self.labels) - 2

    @property
    def body(self):
        return self.labels[1:-1]

    def __len__(self):
        return len(self.labels)

    def pr(self, i: int, j: int) -> Prec | None:
        size = len(self.labels)
        if not (0 <= i < size and 0 <= j < size):
            raise PositionError(f"positions ({i}, {j}) outside 0..{size - 1}")
        return self.alphabet.rel(self.structural[i], self.structural[j])

    def holds(self, prop: str, i: int) -> bool:
        return prop in self.labels[i]

    def __eq__(self, other):
        return isinstance(other, OpWord) and self.alphabet == other.alphabet and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"OpWord({serialize_word(self)!r})"


def pr_at(w: OpWord, i: int, j: int) -> Prec | None:
    return w.pr(i, j)


_TOKEN_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)(?:\{([^{}]*)\})?$")


def parse_tokens(text: str) -> list[frozenset[str]]:
    out = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ParseError(f"bad word token {tok!r}")
        head, extra = m.groups()
        labels = {head}
        if extra:
            labels |= {p.strip() for p in extra.split(",") if p.strip()}
        out.append(frozenset(labels))
    return out


def load_word(alpha: OpAlphabet, text: str, check: bool = True) -> OpWord:
    for tok in text.split():
        head = tok.split("{", 1)[0]
        if head in alpha.normal:
            raise MissingStructuralLabel(f"token {tok!r} must start with a structural label")
    return OpWord(alpha, parse_tokens(text), check=check)


def format_labelset(alpha: OpAlphabet, ls) -> str:
    s = alpha.structural_of(ls)
    rest = sorted(ls - {s})
    return s + ("{" + ",".join(rest) + "}" if rest else "")


def serialize_word(w: OpWord) -> str:
    return " ".join(format_labelset(w.alphabet, ls) for ls in w.body)


def _next_symbols(alpha: OpAlphabet, stack: list[str], symbols: Sequence[str]):
    """Symbols that can be read next without getting the parse stuck.

    ``stack`` mirrors the stack of the max-automaton (structural labels only,
    ``#`` at the bottom).  Returns pairs (symbol, stack after reading it).
    """
    out = []
    for c in symbols:
        st = list(stack)
        while True:
            r = alpha.rel(st[-1], c)
            if r is None:
                break
            if r is TAKES:
                st.pop()
                continue
            if r is YIELDS:
                st.append(c)
            else:
                st[-1] = c
            out.append((c, st))
            break
    return out


def random_compatible_word(alpha: OpAlphabet, max_body: int, seed=None, *,
                           decorate: bool = True, rng: random.Random | None = None) -> OpWord:
    """Sample a word that is compatible with the matrix.

    Symbols are drawn one at a time while simulating the stack of the
    max-automaton, so every prefix can still be completed: each label takes
    precedence over the closing delimiter, and reading a candidate symbol is
    only allowed when the pops it triggers end on a defined relation.
    """
    rng = rng or random.Random(seed)
    symbols = sorted(alpha.structural)
    if not any(alpha.rel(DELIM, s) is YIELDS for s in symbols):
        raise GenerationFailure("no structural label is reachable from '#'")
    target = rng.randint(0, max_body)
    stack = [DELIM]
    body = []
    normals = sorted(alpha.normal)
    while len(body) < target:
        options = _next_symbols(alpha, stack, symbols)
        if not options:
            break
        c, stack = rng.choice(options)
        ls = {c}
        if decorate:
            ls |= {p for p in normals if rng.random() < 0.3}
        body.append(frozenset(ls))
    if not all(alpha.rel(s, DELIM) is TAKES for s in stack[1:]):
        raise GenerationFailure("generated prefix cannot be closed by '#'")
    return OpWord(alpha, body)


def random_string(alpha: OpAlphabet, max_body: int, seed=None, *, decorate: bool = False,
                  rng: random.Random | None = None) -> OpWord:
    """Arbitrary label sequence, compatible or not (unchecked word)."""
    rng = rng or random.Random(seed)
    symbols = sorted(alpha.structural)
    normals = sorted(alpha.normal)
    body = []
    for _ in range(rng.randint(0, max_body)):
        ls = {rng.choice(symbols)}
        if decorate:
            ls |= {p for p in normals if rng.random() < 0.3}
        body.append(frozenset(ls))
    return OpWord(alpha, body, check=False)
