"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from opotl import builtin_mcall, random_compatible_word
from opotl.gen import random_opm
from opotl.opalpha import Prec
from opotl.potl import formula as P
from opotl.potl import ltl as L
from opotl import xuntil as X

MCALL = builtin_mcall()
OPMS = [MCALL] + [random_opm(3, seed=s) for s in (11, 12, 13)]
ATOMS = ["call", "ret", "han", "exc", "pA", "pB", "pErr", "s0", "s1", "p0"]

alphabets = st.sampled_from(OPMS)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def words(draw, alpha=None, max_body=10):
    a = alpha if alpha is not None else draw(alphabets)
    return random_compatible_word(a, max_body, seed=draw(seeds))


def mcall_words(max_body=10):
    return words(alpha=MCALL, max_body=max_body)


_dirs = st.sampled_from(P.DIRS)
_rels = st.frozensets(st.sampled_from(list(Prec)), min_size=1)


def potl(atoms=ATOMS, filtered=True):
    leaf = st.one_of(st.sampled_from(atoms).map(P.Atom), st.just(P.TRUE))

    def extend(sub):
        unary = st.sampled_from([P.Next, P.Back, P.ChainNext, P.ChainBack, P.HNext, P.HBack])
        binary = st.sampled_from([P.Until, P.Since, P.HUntil, P.HSince])
        opts = [
            sub.map(P.Not),
            st.tuples(sub, sub).map(lambda t: P.And(*t)),
            st.tuples(sub, sub).map(lambda t: P.Or(*t)),
            st.tuples(unary, _dirs, sub).map(lambda t: t[0](t[1], t[2])),
            st.tuples(binary, _dirs, sub, sub).map(lambda t: t[0](t[1], t[2], t[3])),
        ]
        if filtered:
            fil = st.sampled_from([P.PNext, P.PBack, P.PChainNext, P.PChainBack])
            opts.append(st.tuples(fil, _rels, sub).map(lambda t: t[0](t[1], t[2])))
        return st.one_of(*opts)
    return st.recursive(leaf, extend, max_leaves=6)


def ltl(atoms=ATOMS):
    leaf = st.one_of(st.sampled_from(atoms).map(L.LAtom), st.just(L.LTrue()))

    def extend(sub):
        return st.one_of(
            sub.map(L.LNot), sub.map(L.LNext), sub.map(L.LBack), sub.map(L.LGlobally),
            st.tuples(sub, sub).map(lambda t: L.LAnd(*t)),
            st.tuples(sub, sub).map(lambda t: L.LOr(*t)),
            st.tuples(sub, sub).map(lambda t: L.LUntil(*t)),
            st.tuples(sub, sub).map(lambda t: L.LSince(*t)),
        )
    return st.recursive(leaf, extend, max_leaves=5)


def xuntil(atoms=ATOMS + ["#"]):
    leaf = st.one_of(st.sampled_from(atoms).map(X.XAtom), st.just(X.XTRUE))

    def extend(sub):
        return st.one_of(
            sub.map(X.XNot),
            st.tuples(sub, sub).map(lambda t: X.XAnd(*t)),
            st.tuples(st.sampled_from(X.AXES), sub, sub).map(lambda t: X.XUntil(*t)),
        )
    return st.recursive(leaf, extend, max_leaves=5)
