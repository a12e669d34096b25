"""First-order logic over OP words, and the translation of POTL into it.

Formulas use the variables x, y, z only.  Two evaluators are provided:
``fo_eval`` computes the truth table of every subformula over all
assignments at once (one boolean array per subformula, quantifiers are
reductions along an axis); ``fo_eval_naive`` recurses over assignments and
is exponential in the quantifier depth, so it is capped.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from ._ast import Node
from .errors import QuantifierDepthExceeded, UnboundVariable, UnsupportedOperator, WordTooLarge
from .opalpha import DELIM, EQUALS, TAKES, YIELDS, Prec
from .opparse import ChainSet
from .opwords import OpWord
from .potl import formula as P

VARS = ("x", "y", "z")
WORD_CAP = 16
DEPTH_CAP = 8


class Fo(Node):
    __slots__ = ()

    def __repr__(self):
        return f"<{to_text(self)}>"

    def __str__(self):
        return to_text(self)


def _var(v):
    if v not in VARS:
        raise ValueError(f"variable must be one of {VARS}, got {v!r}")


@dataclass(frozen=True, eq=False, repr=False)
class FTrue(Fo):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class FAtom(Fo):
    prop: str
    var: str

    def __post_init__(self):
        _var(self.var)


@dataclass(frozen=True, eq=False, repr=False)
class Rel2(Fo):
    a: str
    b: str

    def __post_init__(self):
        _var(self.a)
        _var(self.b)


class Less(Rel2):
    pass


class Leq(Rel2):
    pass


class Eq(Rel2):
    pass


class Succ(Rel2):
    pass


class Chi(Rel2):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class PrecAtom(Fo):
    rel: Prec
    a: str
    b: str

    def __post_init__(self):
        _var(self.a)
        _var(self.b)


@dataclass(frozen=True, eq=False, repr=False)
class FNot(Fo):
    arg: Fo


@dataclass(frozen=True, eq=False, repr=False)
class FAnd(Fo):
    left: Fo
    right: Fo


@dataclass(frozen=True, eq=False, repr=False)
class FOr(Fo):
    left: Fo
    right: Fo


@dataclass(frozen=True, eq=False, repr=False)
class FImplies(Fo):
    left: Fo
    right: Fo


@dataclass(frozen=True, eq=False, repr=False)
class Quant(Fo):
    var: str
    body: Fo

    def __post_init__(self):
        _var(self.var)


class Exists(Quant):
    pass


class Forall(Quant):
    pass


FFALSE = FNot(FTrue())


def conj(*fs):
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = FAnd(f, out)
    return out


def disj(*fs):
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = FOr(f, out)
    return out


# --- structural queries ---------------------------------------------------

def free_vars(f: Fo) -> frozenset:
    memo = {}

    def go(g):
        if id(g) in memo:
            return memo[id(g)]
        if isinstance(g, FAtom):
            r = frozenset({g.var})
        elif isinstance(g, (Rel2, PrecAtom)):
            r = frozenset({g.a, g.b})
        elif isinstance(g, Quant):
            r = go(g.body) - {g.var}
        else:
            r = frozenset().union(*[go(c) for c in g.children()])
        memo[id(g)] = r
        return r
    return go(f)


def variables(f: Fo) -> frozenset:
    """Every variable name occurring in f, free or bound."""
    out = set()
    for g in f.subformulas():
        if isinstance(g, FAtom):
            out.add(g.var)
        elif isinstance(g, (Rel2, PrecAtom)):
            out |= {g.a, g.b}
        elif isinstance(g, Quant):
            out.add(g.var)
    return frozenset(out)


def quantifier_depth(f: Fo) -> int:
    memo = {}

    def go(g):
        if id(g) not in memo:
            inner = max((go(c) for c in g.children()), default=0)
            memo[id(g)] = inner + (1 if isinstance(g, Quant) else 0)
        return memo[id(g)]
    return go(f)


def expand_succ(f: Fo) -> Fo:
    """Replace succ(a,b) by a < b and no position strictly in between."""
    memo = {}

    def go(g):
        if id(g) in memo:
            return memo[id(g)]
        if isinstance(g, Succ):
            (c,) = [v for v in VARS if v not in (g.a, g.b)] or [None]
            if c is None:
                raise ValueError("succ(v, v) has no spare variable")
            r = FAnd(Less(g.a, g.b), FNot(Exists(c, FAnd(Less(g.a, c), Less(c, g.b)))))
        elif isinstance(g, (FAtom, FTrue, Rel2, PrecAtom)):
            r = g
        else:
            r = _rebuild(g, [go(c) for c in g.children()])
        memo[id(g)] = r
        return r
    return go(f)


def _rebuild(g, kids):
    if isinstance(g, FNot):
        return FNot(kids[0])
    if isinstance(g, Quant):
        return type(g)(g.var, kids[0])
    return type(g)(*kids)


def sigma(labelset, var: str, props) -> Fo:
    """sigma_a(v): exactly the propositions in ``labelset`` hold at v."""
    parts = [FAtom(p, var) if p in labelset else FNot(FAtom(p, var)) for p in sorted(props)]
    return conj(*parts)


def expand_prec(rel: Prec, a: str, b: str, alpha, props=None) -> Fo:
    """The disjunction over label-set pairs in relation ``rel``."""
    props = sorted(props if props is not None else alpha.props)
    normals = [p for p in props if p in alpha.normal]
    structurals = [p for p in props if p == DELIM or p in alpha.structural]
    sets = []
    for s in structurals:
        extra = [()] if s == DELIM else [c for c in product((0, 1), repeat=len(normals))]
        for bits in extra:
            sets.append(frozenset({s} | {n for n, on in zip(normals, bits) if on}))
    disjuncts = [FAnd(sigma(x, a, props), sigma(y, b, props))
                 for x in sets for y in sets
                 if alpha.rel(alpha.structural_of(x), alpha.structural_of(y)) is rel]
    return disj(*disjuncts) if disjuncts else FFALSE


# --- evaluation -----------------------------------------------------------

class _Tables:
    def __init__(self, w: OpWord, cs: ChainSet):
        N = len(w.labels)
        self.N = N
        ar = np.arange(N)
        self.idx = {"x": ar[:, None, None], "y": ar[None, :, None], "z": ar[None, None, :]}
        self.axis = {"x": 0, "y": 1, "z": 2}
        chi = np.zeros((N, N), bool)
        for i, j in cs.pairs:
            chi[i, j] = True
        self.chi = chi
        self.prec = {r: np.zeros((N, N), bool) for r in Prec}
        for i in range(N):
            for j in range(N):
                r = w.pr(i, j)
                if r is not None:
                    self.prec[r][i, j] = True
        self.word = w
        self.shape = (N, N, N)

    def full(self, arr):
        return np.broadcast_to(arr, self.shape)


def fo_table(f: Fo, w: OpWord, cs: ChainSet) -> np.ndarray:
    """Truth value of f for every assignment, indexed [x, y, z]."""
    t = _Tables(w, cs)
    memo: dict = {}
    stack = [f]
    while stack:
        g = stack[-1]
        if id(g) in memo:
            stack.pop()
            continue
        pending = [c for c in g.children() if id(c) not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        memo[id(g)] = (g, _table_node(g, t, memo))
    return memo[id(f)][1]


def _table_node(g, t, memo):
    kid = lambda c: memo[id(c)][1]
    I = t.idx
    if isinstance(g, FTrue):
        return t.full(np.ones((1, 1, 1), bool))
    if isinstance(g, FAtom):
        col = np.array([g.prop in ls for ls in t.word.labels])
        return t.full(col[I[g.var]])
    if isinstance(g, Less):
        return t.full(I[g.a] < I[g.b])
    if isinstance(g, Leq):
        return t.full(I[g.a] <= I[g.b])
    if isinstance(g, Eq):
        return t.full(I[g.a] == I[g.b])
    if isinstance(g, Succ):
        return t.full(I[g.a] + 1 == I[g.b])
    if isinstance(g, Chi):
        return t.full(t.chi[I[g.a], I[g.b]])
    if isinstance(g, PrecAtom):
        return t.full(t.prec[g.rel][I[g.a], I[g.b]])
    if isinstance(g, FNot):
        return ~kid(g.arg)
    if isinstance(g, FAnd):
        return kid(g.left) & kid(g.right)
    if isinstance(g, FOr):
        return kid(g.left) | kid(g.right)
    if isinstance(g, FImplies):
        return ~kid(g.left) | kid(g.right)
    if isinstance(g, Exists):
        return t.full(kid(g.body).any(axis=t.axis[g.var], keepdims=True))
    if isinstance(g, Forall):
        return t.full(kid(g.body).all(axis=t.axis[g.var], keepdims=True))
    raise TypeError(f"not an FO formula: {g!r}")


def _check_env(f, w, env, cap):
    if len(w.labels) > cap:
        raise WordTooLarge(f"|U| = {len(w.labels)} exceeds cap {cap}")
    missing = free_vars(f) - set(env)
    if missing:
        raise UnboundVariable(f"unbound variables: {sorted(missing)}")
    for v, p in env.items():
        _var(v)
        if not 0 <= p < len(w.labels):
            raise ValueError(f"{v} = {p} outside the word")


def fo_eval(f: Fo, w: OpWord, cs: ChainSet, env: dict | None = None, *, cap: int = WORD_CAP) -> bool:
    env = dict(env or {})
    _check_env(f, w, env, cap)
    table = fo_table(f, w, cs)
    return bool(table[env.get("x", 0), env.get("y", 0), env.get("z", 0)])


def fo_positions(f: Fo, w: OpWord, cs: ChainSet, *, cap: int = WORD_CAP) -> frozenset:
    """Positions i such that f holds with x = i (f has at most x free)."""
    if len(w.labels) > cap:
        raise WordTooLarge(f"|U| = {len(w.labels)} exceeds cap {cap}")
    extra = free_vars(f) - {"x"}
    if extra:
        raise UnboundVariable(f"unbound variables: {sorted(extra)}")
    table = fo_table(f, w, cs)
    return frozenset(int(i) for i in np.nonzero(table[:, 0, 0])[0])


def fo_eval_naive(f: Fo, w: OpWord, cs: ChainSet, env: dict | None = None, *,
                  cap: int = WORD_CAP, max_depth: int = DEPTH_CAP) -> bool:
    """Direct recursion over assignments (reference for small formulas)."""
    env = dict(env or {})
    _check_env(f, w, env, cap)
    if quantifier_depth(f) > max_depth:
        raise QuantifierDepthExceeded(f"quantifier depth {quantifier_depth(f)} exceeds {max_depth}")
    U = range(len(w.labels))

    def ev(g, e):
        if isinstance(g, FTrue):
            return True
        if isinstance(g, FAtom):
            return g.prop in w.labels[e[g.var]]
        if isinstance(g, Less):
            return e[g.a] < e[g.b]
        if isinstance(g, Leq):
            return e[g.a] <= e[g.b]
        if isinstance(g, Eq):
            return e[g.a] == e[g.b]
        if isinstance(g, Succ):
            return e[g.a] + 1 == e[g.b]
        if isinstance(g, Chi):
            return cs.holds(e[g.a], e[g.b])
        if isinstance(g, PrecAtom):
            return w.pr(e[g.a], e[g.b]) is g.rel
        if isinstance(g, FNot):
            return not ev(g.arg, e)
        if isinstance(g, FAnd):
            return ev(g.left, e) and ev(g.right, e)
        if isinstance(g, FOr):
            return ev(g.left, e) or ev(g.right, e)
        if isinstance(g, FImplies):
            return (not ev(g.left, e)) or ev(g.right, e)
        if isinstance(g, Exists):
            return any(ev(g.body, {**e, g.var: p}) for p in U)
        if isinstance(g, Forall):
            return all(ev(g.body, {**e, g.var: p}) for p in U)
        raise TypeError(f"not an FO formula: {g!r}")
    return ev(f, env)


# --- printing ---------------------------------------------------------------

_REL_SYM = {YIELDS: "⋖", EQUALS: "≐", TAKES: "⋗"}
_REL_LISP = {YIELDS: "prec<", EQUALS: "prec=", TAKES: "prec>"}


def _flatten(g, cls):
    if isinstance(g, cls):
        return _flatten(g.left, cls) + _flatten(g.right, cls)
    return [g]


def to_lisp(f: Fo) -> str:
    if isinstance(f, FTrue):
        return "true"
    if isinstance(f, FAtom):
        return f"({f.prop} {f.var})"
    for cls, name in ((Less, "<"), (Leq, "<="), (Eq, "="), (Succ, "succ"), (Chi, "chi")):
        if isinstance(f, cls):
            return f"({name} {f.a} {f.b})"
    if isinstance(f, PrecAtom):
        return f"({_REL_LISP[f.rel]} {f.a} {f.b})"
    if isinstance(f, FNot):
        return f"(not {to_lisp(f.arg)})"
    if isinstance(f, (FAnd, FOr)):
        name = "and" if isinstance(f, FAnd) else "or"
        return f"({name} " + " ".join(to_lisp(g) for g in _flatten(f, type(f))) + ")"
    if isinstance(f, FImplies):
        return f"(implies {to_lisp(f.left)} {to_lisp(f.right)})"
    if isinstance(f, Quant):
        name = "exists" if isinstance(f, Exists) else "forall"
        return f"({name} {f.var} {to_lisp(f.body)})"
    raise TypeError(f"not an FO formula: {f!r}")


def to_text(f: Fo, level: int = 0) -> str:
    """Mathematical notation, e.g. ``∃y(succ(x,y) ∧ (x⋖y ∨ x≐y) ∧ ...)``."""
    if isinstance(f, FTrue):
        return "⊤"
    if isinstance(f, FAtom):
        return f"{f.prop}({f.var})"
    for cls, sym in ((Less, "<"), (Leq, "≤"), (Eq, "=")):
        if isinstance(f, cls):
            return f"{f.a}{sym}{f.b}"
    if isinstance(f, Succ):
        return f"succ({f.a},{f.b})"
    if isinstance(f, Chi):
        return f"χ({f.a},{f.b})"
    if isinstance(f, PrecAtom):
        return f"{f.a}{_REL_SYM[f.rel]}{f.b}"
    if isinstance(f, FNot):
        return "¬" + to_text(f.arg, 4)
    if isinstance(f, Quant):
        q = "∃" if isinstance(f, Exists) else "∀"
        return f"{q}{f.var}({to_text(f.body)})"
    if isinstance(f, FAnd):
        s, own = " ∧ ".join(to_text(g, 3) for g in _flatten(f, FAnd)), 3
    elif isinstance(f, FOr):
        s, own = " ∨ ".join(to_text(g, 2) for g in _flatten(f, FOr)), 2
    elif isinstance(f, FImplies):
        s, own = f"{to_text(f.left, 2)} → {to_text(f.right, 1)}", 1
    else:
        raise TypeError(f"not an FO formula: {f!r}")
    return f"({s})" if level > own else s


# --- the translation --------------------------------------------------------

_ORDER = (YIELDS, EQUALS, TAKES)


def prf(a: str, b: str, rels) -> Fo:
    """a π b for π in rels."""
    atoms = [PrecAtom(r, a, b) for r in _ORDER if r in rels]
    return disj(*atoms)


def _third(a, b):
    (c,) = [v for v in VARS if v not in (a, b)]
    return c


@lru_cache(maxsize=None)
def gamma(a: str, b: str, c: str, rels: frozenset) -> Fo:
    """c lies inside a chain body contained in [a, b] (so it is off the summary path)."""
    left = Exists(b, conj(Leq(a, b), Less(b, c),
                          Exists(a, conj(Less(c, a), Chi(b, a), prf(b, a, rels)))))
    right = Exists(a, conj(Less(c, a), Leq(a, b),
                           Exists(b, conj(Less(b, c), Chi(b, a), prf(b, a, rels)))))
    return FAnd(left, right)


@lru_cache(maxsize=None)
def delta(b: str, c: str, rels: frozenset) -> Fo:
    """Position c has a path successor not beyond b."""
    a = _third(b, c)
    return Exists(a, conj(Less(c, a), Leq(a, b), prf(c, a, rels), FNot(gamma(c, b, a, rels)),
                          FOr(Succ(c, a), Chi(c, a))))


@lru_cache(maxsize=None)
def delta_back(b: str, c: str, rels: frozenset) -> Fo:
    """Position c has a path predecessor not before b (b is the path start)."""
    a = _third(b, c)
    return Exists(a, conj(Leq(b, a), Less(a, c), prf(a, c, rels), FNot(gamma(b, c, a, rels)),
                          FOr(Succ(a, c), Chi(a, c))))


def _at(v, body):
    """∃x(x = v ∧ body(x))."""
    return Exists("x", FAnd(Eq("x", v), body))


def nu(f: P.Formula, printed_since: bool = False) -> Fo:
    """Translate a POTL formula into FO with the single free variable x.

    ``printed_since`` emits the summary-since shape that reuses the until's
    successor condition for z in (y, x]; it is unsatisfiable at z = x, so it
    is only kept to document that difference.
    """
    if not isinstance(f, P.Formula):
        raise UnsupportedOperator(f"not a POTL formula: {f!r}")
    memo: dict = {}
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
        memo[g] = _nu_node(g, memo, printed_since)
    return memo[f]


def _nu_node(f, memo, printed_since):
    k = [memo[c] for c in f.children()]
    if isinstance(f, P.Atom):
        return FAtom(f.name, "x")
    if isinstance(f, P.Top):
        return FTrue()
    if isinstance(f, P.Not):
        return FNot(k[0])
    if isinstance(f, P.And):
        return FAnd(*k)
    if isinstance(f, P.Or):
        return FOr(*k)
    if isinstance(f, P.Filtered):
        rels = f.rels
    elif isinstance(f, (P.Unary, P.Binary)):
        rels = P.rels_of(f.dir)
    else:
        raise UnsupportedOperator(f"no FO translation for {type(f).__name__}")
    if isinstance(f, (P.Next, P.PNext)):
        return Exists("y", conj(Succ("x", "y"), prf("x", "y", rels), _at("y", k[0])))
    if isinstance(f, (P.Back, P.PBack)):
        return Exists("y", conj(Succ("y", "x"), prf("y", "x", rels), _at("y", k[0])))
    if isinstance(f, (P.ChainNext, P.PChainNext)):
        return Exists("y", conj(Chi("x", "y"), prf("x", "y", rels), _at("y", k[0])))
    if isinstance(f, (P.ChainBack, P.PChainBack)):
        return Exists("y", conj(Chi("y", "x"), prf("y", "x", rels), _at("y", k[0])))
    if isinstance(f, P.Until):
        phi, psi = k
        body = FImplies(conj(Leq("x", "z"), Less("z", "y"), FNot(gamma("x", "y", "z", rels))),
                        FAnd(_at("z", phi), delta("y", "z", rels)))
        return Exists("y", conj(Leq("x", "y"), _at("y", psi), Forall("z", body)))
    if isinstance(f, P.Since):
        phi, psi = k
        step = delta("x", "z", rels) if printed_since else delta_back("y", "z", rels)
        body = FImplies(conj(Less("y", "z"), Leq("z", "x"), FNot(gamma("y", "x", "z", rels))),
                        FAnd(_at("z", phi), step))
        return Exists("y", conj(Leq("y", "x"), _at("y", psi), Forall("z", body)))
    if isinstance(f, P.HNext):
        return _nu_hnext(f.dir, k[0], forward=True)
    if isinstance(f, P.HBack):
        return _nu_hnext(f.dir, k[0], forward=False)
    if isinstance(f, P.HUntil):
        return _nu_huntil(f.dir, k[0], k[1], forward=True)
    if isinstance(f, P.HSince):
        return _nu_huntil(f.dir, k[0], k[1], forward=False)
    raise UnsupportedOperator(f"no FO translation for {type(f).__name__}")


def _nu_hnext(direction, phi, forward):
    if direction == "u":
        # the shared left context y of x, and the next (previous) right context z of y
        ctx = conj(Less("y", "x"), Chi("y", "x"), PrecAtom(YIELDS, "y", "x"))
        target = Chi("y", "z"), PrecAtom(YIELDS, "y", "z")
        gap = Forall("z", FImplies(FAnd(Chi("z", "x"), PrecAtom(YIELDS, "z", "x")),
                                   FNot(Chi("z", "y"))))
    else:
        ctx = conj(Less("x", "y"), Chi("x", "y"), PrecAtom(TAKES, "x", "y"))
        target = Chi("z", "y"), PrecAtom(TAKES, "z", "y")
        gap = Forall("z", FImplies(FAnd(Chi("x", "z"), PrecAtom(TAKES, "x", "z")),
                                   FNot(Chi("y", "z"))))
    if forward:
        order, between = Less("x", "z"), FAnd(Less("x", "y"), Less("y", "z"))
    else:
        order, between = Less("z", "x"), FAnd(Less("z", "y"), Less("y", "x"))
    inner = conj(order, *target, _at("z", phi), Forall("y", FImplies(between, gap)))
    return Exists("y", FAnd(ctx, Exists("z", inner)))


def _nu_huntil(direction, phi, psi, forward):
    if direction == "u":
        ctx = conj(Less("z", "x"), PrecAtom(YIELDS, "z", "x"), Chi("z", "x"))
        end = Chi("z", "y"), PrecAtom(YIELDS, "z", "y")
        same = Exists("y", conj(Less("y", "x"), PrecAtom(YIELDS, "y", "x"), Chi("y", "x"),
                                Chi("y", "z")))
    else:
        ctx = conj(Less("x", "z"), PrecAtom(TAKES, "x", "z"), Chi("x", "z"))
        end = Chi("y", "z"), PrecAtom(TAKES, "y", "z")
        same = Exists("y", conj(Less("x", "y"), PrecAtom(TAKES, "x", "y"), Chi("x", "y"),
                                Chi("z", "y")))
    if forward:
        span = (Leq("x", "y"),) if direction == "u" else (Leq("x", "y"), Less("y", "z"))
        rng = FAnd(Leq("x", "z"), Less("z", "y"))
    else:
        span = (Leq("y", "x"),)
        rng = FAnd(Less("y", "z"), Leq("z", "x"))
    inner = conj(*span, *end, _at("y", psi), Forall("z", FImplies(FAnd(rng, same), _at("z", phi))))
    return Exists("z", FAnd(ctx, Exists("y", inner)))
