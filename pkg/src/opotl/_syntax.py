"""A small recursive-descent parser shared by the three concrete syntaxes.

Precedence, loosest first: infix temporal operators (right-associative),
``->`` (right-associative), ``|``, ``&``, then prefix operators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import ParseError

_TOKEN = re.compile(r"\s*(->|[A-Za-z_][A-Za-z0-9_']*\[[<=>]+\]|[A-Za-z_][A-Za-z0-9_']*|#|[()~&|,])")


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


@dataclass
class Grammar:
    atom: Callable
    true: Callable
    false: Callable
    neg: Callable
    conj: Callable
    disj: Callable
    implies: Callable
    prefix: dict = field(default_factory=dict)
    infix: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)   # name -> (arity, builder)
    filters: dict = field(default_factory=dict)     # name -> builder(rels, arg)

    @property
    def keywords(self):
        return set(self.prefix) | set(self.infix) | set(self.functions) | set(self.filters) | {"T", "F"}

    def parse(self, text: str):
        toks = tokenize(text)
        if not toks:
            raise ParseError("empty formula")
        p = _Parser(self, toks)
        f = p.expr()
        if p.i != len(toks):
            raise ParseError(f"unexpected token {toks[p.i]!r}")
        return f


class _Parser:
    def __init__(self, g: Grammar, toks):
        self.g, self.toks, self.i = g, toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of formula")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        left = self.impl()
        tok = self.peek()
        if tok in self.g.infix:
            self.take()
            return self.g.infix[tok](left, self.expr())
        return left

    def impl(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return self.g.implies(left, self.impl())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "|":
            self.take()
            left = self.g.disj(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = self.g.conj(left, self.unary())
        return left

    def unary(self):
        g = self.g
        tok = self.take()
        if tok == "~":
            return g.neg(self.unary())
        if tok == "(":
            f = self.expr()
            self.take(")")
            return f
        if tok == "T":
            return g.true()
        if tok == "F":
            return g.false()
        if tok in g.prefix:
            return g.prefix[tok](self.unary())
        if "[" in tok:
            name, rels = tok[:-1].split("[")
            if name not in g.filters:
                raise ParseError(f"unknown filtered operator {name!r}")
            if len(set(rels)) != len(rels):
                raise ParseError(f"repeated relation in {tok!r}")
            return g.filters[name](frozenset(rels), self.unary())
        if tok in g.functions:
            arity, build = g.functions[tok]
            self.take("(")
            args = [self.expr()]
            while len(args) < arity:
                self.take(",")
                args.append(self.expr())
            self.take(")")
            return build(*args)
        if tok in g.infix or tok in {")", ",", "&", "|", "->"}:
            raise ParseError(f"unexpected token {tok!r}")
        return g.atom(tok)
