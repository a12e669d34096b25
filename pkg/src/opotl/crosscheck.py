"""Randomized equivalence suites between independent evaluators.

Each suite draws a fixed list of words and a fixed list of formulas from one
seeded generator and checks every (word, formula, position) triple.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import folog
from . import xuntil as X
from .gen import random_ltl, random_potl, random_xuntil
from .opalpha import OpAlphabet
from .opparse import parse
from .opwords import random_compatible_word, serialize_word
from .potl import formula as P
from .potl.expand import expansion_laws
from .potl.ltl import ltl_eval, ltl_to_str, translate_ltl
from .potl.semantics import Evaluator, Structure
from .uot import tau

SUITES = ("fo", "xuntil", "ltl", "expansion")
MAX_FAILURES = 20


@dataclass
class Failure:
    word: str
    formula: str
    position: int
    expected: bool
    got: bool

    def as_dict(self):
        return dict(self.__dict__)


@dataclass
class Report:
    suite: str
    seed: int
    words: int = 0
    formulas: int = 0
    checked: int = 0
    mismatches: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self):
        return self.mismatches == 0

    def record(self, word, formula, i, expected, got):
        self.mismatches += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(Failure(word, formula, i, expected, got))

    def as_dict(self, timing=False):
        d = {"suite": self.suite, "seed": self.seed, "ok": self.ok, "words": self.words,
             "formulas": self.formulas, "checked": self.checked, "mismatches": self.mismatches,
             "failures": [f.as_dict() for f in self.failures], "notes": self.notes}
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def summary(self):
        head = f"{self.suite}: {'PASS' if self.ok else 'FAIL'} " \
               f"({self.checked} checks, {self.mismatches} mismatches, " \
               f"{self.words} words x {self.formulas} formulas, seed {self.seed})"
        lines = [head]
        for k, v in self.notes.items():
            lines.append(f"  {k}: {v}")
        for f in self.failures[:5]:
            lines.append(f"  at {f.position} of [{f.word}] for {f.formula}: "
                         f"expected {f.expected}, got {f.got}")
        return "\n".join(lines)


def _atoms(alpha):
    return sorted(alpha.structural | alpha.normal)


def _words(alpha, n, max_len, rng):
    return [random_compatible_word(alpha, max_len, rng=rng) for _ in range(n)]


def run_fo(alpha: OpAlphabet, n_words=200, n_formulas=100, max_len=10, depth=3, seed=0) -> Report:
    rng = random.Random(seed)
    rep = Report("fo", seed)
    words = _words(alpha, n_words, max_len, rng)
    formulas = [random_potl(_atoms(alpha), depth, rng=rng) for _ in range(n_formulas)]
    translated = [folog.nu(f) for f in formulas]
    rep.words, rep.formulas = len(words), len(formulas)
    widest = max((len(folog.variables(g)) for g in translated), default=0)
    rep.notes["max variables"] = widest
    if widest > 3:
        rep.mismatches += 1
    for w in words:
        cs = parse(w).chains
        ev = Evaluator(Structure(w, cs))
        for f, g in zip(formulas, translated):
            mask = ev(f)
            got = folog.fo_positions(g, w, cs)
            for i in range(len(w.labels)):
                e = bool((mask >> i) & 1)
                rep.checked += 1
                if e != (i in got):
                    rep.record(serialize_word(w), P.to_str(f), i, e, i in got)
    return rep


def run_xuntil(alpha: OpAlphabet, n_words=200, n_formulas=100, max_len=10, depth=3, seed=0) -> Report:
    """Tree semantics against the translated formula at interior positions.

    Delimiter positions are compared too but only counted in the notes.
    """
    rng = random.Random(seed)
    rep = Report("xuntil", seed)
    words = _words(alpha, n_words, max_len, rng)
    formulas = [random_xuntil(_atoms(alpha), depth, rng=rng) for _ in range(n_formulas)]
    translated = [X.iota(f) for f in formulas]
    rep.words, rep.formulas = len(words), len(formulas)
    delim_bad = 0
    for w in words:
        cs = parse(w).chains
        t = tau(w, cs)
        ev = Evaluator(Structure(w, cs))
        for f, g in zip(formulas, translated):
            tree_set = X.xeval(f, t).holds(f)
            mask = ev(g)
            last = len(w.labels) - 1
            for i in range(last + 1):
                expected = t.node_of[i] in tree_set
                got = bool((mask >> i) & 1)
                if i in (0, last):
                    delim_bad += expected != got
                    continue
                rep.checked += 1
                if expected != got:
                    rep.record(serialize_word(w), X.x_to_str(f), i, expected, got)
    rep.notes["delimiter mismatches"] = delim_bad
    return rep


def run_ltl(alpha: OpAlphabet, n_words=200, n_formulas=100, max_len=10, depth=3, seed=0,
            printed=False) -> Report:
    rng = random.Random(seed)
    rep = Report("ltl", seed)
    words = _words(alpha, n_words, max_len, rng)
    formulas = [random_ltl(_atoms(alpha), depth, rng=rng) for _ in range(n_formulas)]
    translated = [translate_ltl(f, printed=printed) for f in formulas]
    rep.words, rep.formulas = len(words), len(formulas)
    for w in words:
        ev = Evaluator(Structure(w, parse(w).chains))
        for f, g in zip(formulas, translated):
            expected = ltl_eval(f, w)
            mask = ev(g)
            for i in range(len(w.labels)):
                got = bool((mask >> i) & 1)
                rep.checked += 1
                if (i in expected) != got:
                    rep.record(serialize_word(w), ltl_to_str(f), i, i in expected, got)
    return rep


def run_expansion(alpha: OpAlphabet, n_words=300, n_formulas=50, max_len=12, depth=2, seed=0,
                  corrected=False) -> Report:
    """Both sides of every unfolding law on every position; one law instance per
    operand pair and law."""
    rng = random.Random(seed)
    rep = Report("expansion", seed)
    words = _words(alpha, n_words, max_len, rng)
    pairs = [(random_potl(_atoms(alpha), depth, rng=rng), random_potl(_atoms(alpha), depth, rng=rng))
             for _ in range(n_formulas)]
    laws = [expansion_laws(a, b, corrected) for a, b in pairs]
    rep.words, rep.formulas = len(words), len(pairs)
    per_law = {name: 0 for name, _, _ in laws[0]} if laws else {}
    for w in words:
        ev = Evaluator(Structure(w, parse(w).chains))
        for instance in laws:
            for name, lhs, rhs in instance:
                diff = ev(lhs) ^ ev(rhs)
                rep.checked += len(w.labels)
                if diff:
                    per_law[name] += 1
                    for i in range(len(w.labels)):
                        if (diff >> i) & 1:
                            rep.record(serialize_word(w), f"{name}: {P.to_str(lhs)}", i,
                                       bool((ev(lhs) >> i) & 1), bool((ev(rhs) >> i) & 1))
                            break
    rep.notes["violating instances per law"] = per_law
    return rep


def run_suite(name: str, alpha: OpAlphabet, **kw) -> Report:
    fn = {"fo": run_fo, "xuntil": run_xuntil, "ltl": run_ltl, "expansion": run_expansion}[name]
    start = time.perf_counter()
    rep = fn(alpha, **kw)
    rep.elapsed = time.perf_counter() - start
    return rep
