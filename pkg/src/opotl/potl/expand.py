"""Expansion laws and the label-set expansion of relation-filtered operators."""
from __future__ import annotations

from itertools import product

from ..opalpha import DELIM, DOWN_RELS, TAKES, YIELDS, OpAlphabet
from . import formula as P

T = P.TRUE


def expansion_laws(phi: P.Formula, psi: P.Formula, corrected: bool = False) -> list:
    """``(name, lhs, rhs)`` for the until/since unfolding equivalences.

    With ``corrected=False`` the hierarchical laws take their base case from
    ``CBd T & ~CBu T`` (up) and ``CNu T & ~CNd T`` (down).  That base also
    admits a position whose only chain context is in the ``≐`` relation,
    which belongs to no hierarchical group, and rejects a group member that
    is also the right context of an inner chain.  ``corrected=True`` uses
    ``CB[<] T`` and ``CN[>] T``, which hold exactly at group members.
    """
    laws = []
    for t in P.DIRS:
        u = P.Until(t, phi, psi)
        laws.append((f"U{t}", u, P.Or(psi, P.And(phi, P.Or(P.Next(t, u), P.ChainNext(t, u))))))
        s = P.Since(t, phi, psi)
        laws.append((f"S{t}", s, P.Or(psi, P.And(phi, P.Or(P.Back(t, s), P.ChainBack(t, s))))))
    if corrected:
        up_base = P.PChainBack(frozenset({YIELDS}), T)
        down_base = P.PChainNext(frozenset({TAKES}), T)
    else:
        up_base = P.And(P.ChainBack("d", T), P.Not(P.ChainBack("u", T)))
        down_base = P.And(P.ChainNext("u", T), P.Not(P.ChainNext("d", T)))
    for d, base in (("u", up_base), ("d", down_base)):
        hu = P.HUntil(d, phi, psi)
        laws.append((f"HU{d}", hu, P.Or(P.And(psi, base), P.And(phi, P.HNext(d, hu)))))
        hs = P.HSince(d, phi, psi)
        laws.append((f"HS{d}", hs, P.Or(P.And(psi, base), P.And(phi, P.HBack(d, hs)))))
    return laws


def label_sets(alpha: OpAlphabet) -> list:
    """Every label set a position can carry."""
    normals = sorted(alpha.normal)
    out = [frozenset({DELIM})]
    for s in sorted(alpha.structural):
        for bits in product((0, 1), repeat=len(normals)):
            out.append(frozenset({s} | {n for n, on in zip(normals, bits) if on}))
    return out


def sigma(labelset, alpha: OpAlphabet) -> P.Formula:
    """Holds exactly where the set of true propositions is ``labelset``."""
    out = None
    for p in sorted(alpha.props):
        lit = P.Atom(p) if p in labelset else P.Not(P.Atom(p))
        out = lit if out is None else P.And(out, lit)
    return out


def _disj(fs):
    # balanced, so printing and evaluation stay shallow on large expansions
    fs = list(fs)
    if not fs:
        return P.FALSE
    while len(fs) > 1:
        fs = [P.Or(fs[k], fs[k + 1]) if k + 1 < len(fs) else fs[k] for k in range(0, len(fs), 2)]
    return fs[0]


def tree_size(f: P.Formula) -> int:
    """Node count of ``f`` with shared subformulas counted once per occurrence."""
    memo: dict = {}

    def go(g):
        if g not in memo:
            memo[g] = 1 + sum(go(c) for c in g.children())
        return memo[g]
    return go(f)


def expand_filters(f: P.Formula, alpha: OpAlphabet) -> P.Formula:
    """Rewrite every filtered operator as a disjunction over label-set pairs.

    ``N[π] g`` becomes the disjunction of ``σ_a & N_t(σ_b & g)`` over pairs
    with ``a π b``, where ``t`` is the direction admitting ``π``; the back and
    chain variants are analogous.  The result grows with the square of the
    number of label sets, so this is only meant for small alphabets.
    """
    sets = label_sets(alpha)
    sig = {ls: sigma(ls, alpha) for ls in sets}
    rel = lambda x, y: alpha.rel(alpha.structural_of(x), alpha.structural_of(y))
    memo: dict = {}

    def go(g):
        if g in memo:
            return memo[g]
        kids = [go(c) for c in g.children()]
        if isinstance(g, P.Filtered):
            (arg,) = kids
            forward = isinstance(g, (P.PNext, P.PChainNext))
            base = {P.PNext: P.Next, P.PBack: P.Back,
                    P.PChainNext: P.ChainNext, P.PChainBack: P.ChainBack}[type(g)]
            parts = []
            for a in sets:
                for b in sets:
                    r = rel(a, b) if forward else rel(b, a)
                    if r in g.rels:
                        t = "d" if r in DOWN_RELS else "u"
                        parts.append(P.And(sig[a], base(t, P.And(sig[b], arg))))
            out = _disj(parts)
        elif isinstance(g, (P.Atom, P.Top)):
            out = g
        elif isinstance(g, P.Not):
            out = P.Not(kids[0])
        elif isinstance(g, (P.And, P.Or)):
            out = type(g)(*kids)
        elif isinstance(g, P.Unary):
            out = type(g)(g.dir, kids[0])
        else:
            out = type(g)(g.dir, *kids)
        memo[g] = out
        return out
    return go(f)

