from hypothesis import given

from opotl.opparse import parse
from opotl.opwords import load_word
from opotl.potl import formula as P
from opotl.potl import ltl_eval, parse_ltl, translate_ltl
from opotl.potl.ltl import LAtom, LGlobally, LNext, ltl_to_str
from opotl.potl.semantics import Evaluator, Structure

from strategies import ltl, words

A = P.Atom


def test_next_golden():
    assert translate_ltl(LNext(LAtom("a"))) == P.Or(P.Next("d", A("a")), P.Next("u", A("a")))


def test_globally_golden():
    expected = P.Not(P.Until("u", P.TRUE, P.Until("d", P.TRUE, P.Not(A("a")))))
    assert translate_ltl(LGlobally(LAtom("a"))) == expected


def test_direct_evaluator(wex):
    assert ltl_eval(parse_ltl("X pA"), wex) == {0, 10}
    assert ltl_eval(parse_ltl("call U exc"), wex) == {3, 4, 5, 6}
    assert 0 in ltl_eval(parse_ltl("G ~pZ"), wex)


def test_parse_round_trip():
    for text in ["X a U Y b", "G (a -> b S c)", "~(a & b) | T"]:
        f = parse_ltl(text)
        assert parse_ltl(ltl_to_str(f)) == f


def _agree(w, f, printed=False):
    ev = Evaluator(Structure(w, parse(w).chains))
    mask = ev(translate_ltl(f, printed=printed))
    return {i for i in range(len(w.labels)) if (mask >> i) & 1} == ltl_eval(f, w)


def test_printed_until_counterexample(mcall):
    w = load_word(mcall, "exc{pC} call{pA,pErr} han{pB}")
    f = parse_ltl("pA U pB")
    assert 2 in ltl_eval(f, w)
    assert not _agree(w, f, printed=True)
    assert _agree(w, f)


@given(words(max_body=12), ltl())
def test_translation_agrees_with_ltl(w, f):
    assert _agree(w, f)
