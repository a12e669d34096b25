"""Operator precedence automata: moves, acceptance, bounded enumeration."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import CapExceeded, ParseError, UndefinedPrecedence
from .opalpha import DELIM, EQUALS, TAKES, YIELDS, OpAlphabet, builtin_mcall
from .opwords import DELIM_SET, OpWord, format_labelset, parse_tokens

WILDCARD = "*"
ENUM_CAP = 14


def wildcard(label: str) -> frozenset:
    """Transition label matching every label set whose structural label is ``label``."""
    return frozenset({label, WILDCARD})


def _matches(pattern: frozenset, ls: frozenset, alpha: OpAlphabet) -> bool:
    if WILDCARD in pattern:
        (s,) = pattern - {WILDCARD}
        return alpha.structural_of(ls) == s
    return pattern == ls


@dataclass(frozen=True)
class Configuration:
    """Input index (next position to read), state, and stack bottom-to-top.

    The stack holds (label set, state) pairs; the bottom marker is implicit.
    """
    index: int
    state: str
    stack: tuple = ()

    def smb(self):
        return self.stack[-1][0] if self.stack else DELIM_SET


class Opa:
    def __init__(self, alphabet: OpAlphabet, states: Iterable[str], initials: Iterable[str],
                 finals: Iterable[str], push=(), shift=(), pop=()):
        self.alphabet = alphabet
        self.states = tuple(dict.fromkeys(states))
        self.initials = frozenset(initials)
        self.finals = frozenset(finals)
        self.push = frozenset((q, frozenset(ls), r) for q, ls, r in push)
        self.shift = frozenset((q, frozenset(ls), r) for q, ls, r in shift)
        self.pop = frozenset(pop)
        known = set(self.states)
        used = set(self.initials) | set(self.finals)
        for q, _, r in self.push | self.shift | self.pop:
            used |= {q, r}
        for q, p, r in self.pop:
            used.add(p)
        missing = used - known
        if missing:
            raise ValueError(f"undeclared states: {sorted(missing)}")
        self._push = _index(self.push)
        self._shift = _index(self.shift)
        pops = {}
        for q, p, r in self.pop:
            pops.setdefault((q, p), []).append(r)
        self._pop = {k: tuple(sorted(v)) for k, v in pops.items()}

    def is_deterministic(self):
        def functional(rel):
            keys = [(q, ls) for q, ls, _ in rel]
            return len(keys) == len(set(keys))
        return len(self.initials) == 1 and functional(self.push) and functional(self.shift) \
            and functional({(q, p, r) for q, p, r in self.pop})

    def targets(self, table, q, ls):
        for pattern, r in table.get(q, ()):
            if _matches(pattern, ls, self.alphabet):
                yield r

    def input_symbols(self):
        """Label sets used for enumeration (wildcards stand for the bare label)."""
        out = set()
        for _, pattern, _ in self.push | self.shift:
            out.add(pattern - {WILDCARD})
        return sorted(out, key=lambda ls: format_labelset(self.alphabet, ls))


def _index(rel):
    table = {}
    for q, ls, r in rel:
        table.setdefault(q, []).append((ls, r))
    for v in table.values():
        v.sort(key=lambda t: (sorted(t[0]), t[1]))
    return table


def _lookahead(w: OpWord, index: int):
    return w.labels[index] if index <= w.n else DELIM_SET


def step(a: Opa, w: OpWord, c: Configuration) -> set[Configuration]:
    """All successors of ``c`` on word ``w``."""
    look = _lookahead(w, c.index)
    top = c.smb()
    rel = a.alphabet.rel(a.alphabet.structural_of(top), a.alphabet.structural_of(look))
    if rel is None:
        raise UndefinedPrecedence(format_labelset(a.alphabet, top), format_labelset(a.alphabet, look))
    out = set()
    if rel is YIELDS:
        if c.index > w.n:
            return out
        for r in a.targets(a._push, c.state, look):
            out.add(Configuration(c.index + 1, r, c.stack + ((look, c.state),)))
    elif not c.stack:
        return out
    elif rel is EQUALS:
        if c.index > w.n:
            return out
        _, p = c.stack[-1]
        for r in a.targets(a._shift, c.state, look):
            out.add(Configuration(c.index + 1, r, c.stack[:-1] + ((look, p),)))
    else:
        _, p = c.stack[-1]
        for r in a._pop.get((c.state, p), ()):
            out.add(Configuration(c.index, r, c.stack[:-1]))
    return out


@dataclass(frozen=True)
class RunResult:
    accepted: bool
    witness: tuple | None = None
    stuck: str | None = None

    def __bool__(self):
        return self.accepted


def run(a: Opa, w: OpWord) -> RunResult:
    """Exhaustive depth-first search for an accepting run."""
    end = w.n + 1
    seen = set()
    reasons = []
    for q0 in sorted(a.initials):
        todo = [(Configuration(1, q0), None)]
        parent = {}
        while todo:
            c, prev = todo.pop()
            if c in seen:
                continue
            seen.add(c)
            parent[c] = prev
            if c.index == end and not c.stack and c.state in a.finals:
                path = []
                while c is not None:
                    path.append(c)
                    c = parent[c]
                return RunResult(True, tuple(reversed(path)))
            try:
                succ = step(a, w, c)
            except UndefinedPrecedence as exc:
                reasons.append(str(exc))
                continue
            for s in sorted(succ, key=_conf_key, reverse=True):
                if s not in seen:
                    todo.append((s, c))
    return RunResult(False, None, reasons[0] if reasons else "no accepting run")


def _conf_key(c):
    return (c.index, c.state, tuple((tuple(sorted(ls)), q) for ls, q in c.stack))


def accepts(a: Opa, w: OpWord) -> bool:
    return run(a, w).accepted


def max_automaton(alpha: OpAlphabet) -> Opa:
    labels = [wildcard(s) for s in sorted(alpha.structural)]
    return Opa(alpha, ["q"], ["q"], ["q"],
               push=[("q", ls, "q") for ls in labels],
               shift=[("q", ls, "q") for ls in labels],
               pop=[("q", "q", "q")])


def _close(a: Opa, confs, look):
    """Configurations reachable by pops with lookahead ``look``, then the push/shift on it.

    ``confs`` hold (state, stack) pairs; with ``look=None`` the end of input is
    meant and only pops are applied (returns the configurations with empty stack).
    """
    alpha = a.alphabet
    s_look = DELIM if look is None else alpha.structural_of(look)
    out = set()
    frontier = list(confs)
    seen = set(frontier)
    while frontier:
        q, stack = frontier.pop()
        top = alpha.structural_of(stack[-1][0]) if stack else DELIM
        rel = alpha.rel(top, s_look)
        if rel is None:
            continue
        if look is None:
            if not stack:
                out.add((q, stack))
                continue
            rel = TAKES
        if rel is TAKES:
            if not stack:
                continue
            for r in a._pop.get((q, stack[-1][1]), ()):
                nxt = (r, stack[:-1])
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        elif rel is YIELDS:
            for r in a.targets(a._push, q, look):
                out.add((r, stack + ((look, q),)))
        elif stack:
            p = stack[-1][1]
            for r in a.targets(a._shift, q, look):
                out.add((r, stack[:-1] + ((look, p),)))
    return frozenset(out)


def enumerate_accepted(a: Opa, max_body: int, cap: int = ENUM_CAP) -> list[OpWord]:
    """Accepted words with body length at most ``max_body``, sorted by their tokens.

    Search runs over prefixes, tracking the set of configurations reached
    after each one, and drops prefixes with no live configuration.
    """
    if max_body > cap:
        raise CapExceeded(f"max_body {max_body} exceeds cap {cap}")
    symbols = a.input_symbols()
    found = []
    todo = [((), frozenset((q, ()) for q in a.initials))]
    while todo:
        prefix, confs = todo.pop()
        if any(q in a.finals for q, _ in _close(a, confs, None)):
            found.append(prefix)
        if len(prefix) == max_body:
            continue
        for ls in symbols:
            nxt = _close(a, confs, ls)
            if nxt:
                todo.append((prefix + (ls,), nxt))
    words = [OpWord(a.alphabet, body) for body in set(found)]
    words.sort(key=lambda w: [format_labelset(a.alphabet, ls) for ls in w.body])
    return words


_TRANS_RE = re.compile(r"^(\S+)\s+--(push|shift|pop)\s+(.+?)-->\s*(\S+)$")


def load_opa(alpha: OpAlphabet, text: str) -> Opa:
    states, initials, finals = [], [], []
    push, shift, pop = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        m = _TRANS_RE.match(line)
        if m:
            q, kind, lab, r = m.groups()
            lab = lab.strip()
            if kind == "pop":
                pop.append((q, lab, r))
                continue
            try:
                target = push if kind == "push" else shift
                for ls in _parse_labels(alpha, lab):
                    target.append((q, ls, r))
            except ParseError as exc:
                raise ParseError(str(exc), lineno) from exc
            continue
        key, sep, rest = line.partition(":")
        names = [t.strip() for t in rest.split(",") if t.strip()]
        if sep and key.strip() == "states":
            states += names
        elif sep and key.strip() == "initial":
            initials += names
        elif sep and key.strip() == "final":
            finals += names
        else:
            raise ParseError(f"cannot parse {line!r}", lineno)
    try:
        return Opa(alpha, states, initials, finals, push, shift, pop)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _parse_labels(alpha, text):
    """A transition label: one token, or several separated by ``|``."""
    out = []
    for part in text.split("|"):
        part = part.strip()
        if part.endswith("{*}"):
            s = part[:-3]
            if s not in alpha.structural:
                raise ParseError(f"unknown structural label {s!r}")
            out.append(wildcard(s))
            continue
        (ls,) = parse_tokens(part) or [None]
        if ls is None or not ls:
            raise ParseError(f"empty label in {text!r}")
        unknown = ls - alpha.props
        if unknown:
            raise ParseError(f"unknown propositions {sorted(unknown)}")
        alpha.structural_of(ls)
        out.append(ls)
    return out


def serialize_opa(a: Opa) -> str:
    fmt = lambda ls: (sorted(ls - {WILDCARD})[0] + "{*}") if WILDCARD in ls \
        else format_labelset(a.alphabet, ls)
    lines = [
        "states: " + ", ".join(a.states),
        "initial: " + ", ".join(sorted(a.initials)),
        "final: " + ", ".join(sorted(a.finals)),
    ]
    for kind, rel in (("push", a.push), ("shift", a.shift)):
        for q, ls, r in sorted(rel, key=lambda t: (t[0], fmt(t[1]), t[2])):
            lines.append(f"{q} --{kind} {fmt(ls)}--> {r}")
    for q, p, r in sorted(a.pop):
        lines.append(f"{q} --pop {p}--> {r}")
    return "\n".join(lines) + "\n"


def builtin_fig5() -> Opa:
    """The exception-handling automaton over M_call."""
    s = lambda *p: frozenset(p)
    states = ["M0", "A0", "A1", "B0", "C0", "A2", "A3", "Er", "A4", "Ar", "Ar'", "Mr"]
    push = [
        ("M0", s("call", "pA"), "A0"),
        ("A0", s("han"), "A1"),
        ("A1", s("call", "pB"), "B0"),
        ("B0", s("call", "pC"), "C0"),
        ("C0", s("call", "pC"), "C0"),
        ("A3", s("call", "pErr"), "Er"),
        ("A4", s("call", "pErr"), "Er"),
    ]
    shift = [
        ("C0", s("exc"), "A2"),
        ("Er", s("ret", "pErr"), "Er"),
        ("Ar", s("ret", "pA"), "Ar'"),
    ]
    pop = [
        ("C0", "A1", "C0"), ("C0", "B0", "C0"), ("C0", "C0", "C0"),
        ("A2", "A0", "A3"),
        ("Er", "A3", "A4"),
        ("Er", "A4", "Ar"),
        ("Ar'", "M0", "Mr"),
    ]
    return Opa(builtin_mcall(), states, ["M0"], ["Mr"], push, shift, pop)
