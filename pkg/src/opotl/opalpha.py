"""Operator precedence alphabets.

An alphabet partitions atomic propositions into structural labels, which
drive all precedence lookups, and normal labels, which are decorations.
Precedence relations are stored over structural labels only.
"""
from __future__ import annotations

import enum
import re
from typing import Iterable, Mapping

from .errors import ConflictError, InvalidLabelSet, ParseError

DELIM = "#"

LabelSet = frozenset


class Prec(enum.Enum):
    YIELDS = "<"
    EQUALS = "="
    TAKES = ">"

    @property
    def symbol(self):
        return {"<": "⋖", "=": "≐", ">": "⋗"}[self.value]

    @classmethod
    def parse(cls, text):
        return cls(text)


YIELDS, EQUALS, TAKES = Prec.YIELDS, Prec.EQUALS, Prec.TAKES
DOWN_RELS = frozenset({YIELDS, EQUALS})
UP_RELS = frozenset({TAKES, EQUALS})


class OpAlphabet:
    """Structural and normal labels plus a partial precedence matrix.

    With ``delimiter_convention`` (the default) every missing ``#`` entry is
    filled in: ``#`` yields to every label and every label takes precedence
    over ``#``.  The pair ``(#, #)`` is never stored; lookups answer Equals,
    which is the relation used when only the two delimiters remain.
    """

    def __init__(self, structural: Iterable[str], normal: Iterable[str] = (),
                 matrix: Mapping[tuple[str, str], Prec] | None = None,
                 delimiter_convention: bool = True):
        structural = frozenset(structural) - {DELIM}
        normal = frozenset(normal)
        clash = structural & normal
        if clash:
            raise InvalidLabelSet(f"labels declared both structural and normal: {sorted(clash)}")
        if DELIM in normal:
            raise InvalidLabelSet("'#' is reserved as a structural label")
        self.structural = structural
        self.normal = normal
        self.delimiter_convention = delimiter_convention
        entries = {}
        for (a, b), rel in (matrix or {}).items():
            _check_entry(a, b, rel, structural)
            entries[(a, b)] = rel
        if delimiter_convention:
            for a in structural:
                entries.setdefault((DELIM, a), YIELDS)
                entries.setdefault((a, DELIM), TAKES)
        self._matrix = entries
        self._key = (structural, normal, frozenset(entries.items()))

    @property
    def props(self):
        return self.structural | self.normal | {DELIM}

    @property
    def matrix(self):
        return dict(self._matrix)

    @property
    def labels(self):
        """Structural labels including the delimiter."""
        return self.structural | {DELIM}

    def rel(self, a: str, b: str) -> Prec | None:
        if a == DELIM and b == DELIM:
            return EQUALS
        return self._matrix.get((a, b))

    def structural_of(self, labelset) -> str:
        found = [p for p in labelset if p == DELIM or p in self.structural]
        if len(found) != 1:
            raise InvalidLabelSet(f"label set {sorted(labelset)} has {len(found)} structural labels")
        return found[0]

    def is_complete(self):
        labs = self.labels
        return all(self.rel(a, b) is not None for a in labs for b in labs)

    def __eq__(self, other):
        return isinstance(other, OpAlphabet) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"OpAlphabet(structural={sorted(self.structural)}, normal={sorted(self.normal)})"


def _check_entry(a, b, rel, structural):
    for x in (a, b):
        if x != DELIM and x not in structural:
            raise InvalidLabelSet(f"unknown structural label {x!r}")
    if a == DELIM and b == DELIM:
        raise InvalidLabelSet("the (#, #) entry is implicit")
    if a == DELIM and rel is not YIELDS:
        raise InvalidLabelSet(f"'#' can only yield precedence, got # {rel.value} {b}")
    if b == DELIM and rel is not TAKES:
        raise InvalidLabelSet(f"every label takes precedence over '#', got {a} {rel.value} #")


def precedence_of(alpha: OpAlphabet, a, b) -> Prec | None:
    """Relation between two label sets, or None when undefined."""
    return alpha.rel(alpha.structural_of(a), alpha.structural_of(b))


_MCALL = {
    ("call", "call"): YIELDS, ("call", "ret"): EQUALS, ("call", "han"): YIELDS, ("call", "exc"): TAKES,
    ("ret", "call"): TAKES, ("ret", "ret"): TAKES, ("ret", "han"): TAKES, ("ret", "exc"): TAKES,
    ("han", "call"): YIELDS, ("han", "ret"): TAKES, ("han", "han"): YIELDS, ("han", "exc"): EQUALS,
    ("exc", "call"): TAKES, ("exc", "ret"): TAKES, ("exc", "han"): TAKES, ("exc", "exc"): TAKES,
}


def builtin_mcall() -> OpAlphabet:
    return OpAlphabet(["call", "ret", "han", "exc"], ["pA", "pB", "pC", "pErr"], _MCALL)


_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_NAME_RE = re.compile(rf"^(?:{_IDENT}|#)$")
_REL_RE = re.compile(rf"^({_IDENT}|#)\s*([<=>])\s*({_IDENT}|#)$")


def _names(text, lineno):
    out = [t.strip() for t in text.split(",") if t.strip()]
    for name in out:
        if not _NAME_RE.match(name):
            raise ParseError(f"bad label name {name!r}", lineno)
    return out


def load_opm(text: str) -> OpAlphabet:
    structural, normal = [], []
    convention = True
    entries: dict[tuple[str, str], Prec] = {}
    rel_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep:
            key = key.strip()
            if key == "props":
                structural += _names(rest, lineno)
            elif key == "normal":
                normal += _names(rest, lineno)
            elif key == "delimiters":
                mode = rest.strip()
                if mode not in ("implicit", "explicit"):
                    raise ParseError(f"delimiters must be implicit or explicit, got {mode!r}", lineno)
                convention = mode == "implicit"
            else:
                raise ParseError(f"unknown declaration {key!r}", lineno)
            continue
        m = _REL_RE.match(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", lineno)
        a, r, b = m.groups()
        rel = Prec(r)
        if (a, b) in entries and entries[(a, b)] is not rel:
            raise ConflictError(a, b, entries[(a, b)], rel)
        entries[(a, b)] = rel
        rel_lines.append(((a, b), lineno))
    try:
        return OpAlphabet(structural, normal, entries, delimiter_convention=convention)
    except InvalidLabelSet as exc:
        bad = [ln for (pair, ln) in rel_lines if any(x in str(exc) for x in pair)]
        raise ParseError(str(exc), bad[0] if bad else None) from exc


def serialize_opm(alpha: OpAlphabet) -> str:
    lines = ["props: " + ", ".join(sorted(alpha.structural))]
    if alpha.normal:
        lines.append("normal: " + ", ".join(sorted(alpha.normal)))
    if not alpha.delimiter_convention:
        lines.append("delimiters: explicit")
    for (a, b), rel in sorted(alpha.matrix.items()):
        if alpha.delimiter_convention and DELIM in (a, b):
            continue
        lines.append(f"{a} {rel.value} {b}")
    return "\n".join(lines) + "\n"
