"""``opotl`` command line.

Exit status: 0 on success or a true verdict, 1 on a false verdict or a
counterexample, 2 on usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import folog
from . import xuntil as X
from .crosscheck import SUITES, run_suite
from .errors import IncompatibleWord, OpotlError, ParseStuck
from .gen import random_ltl, random_opm, random_potl, random_xuntil
from .opa import builtin_fig5, enumerate_accepted, load_opa, run
from .opalpha import builtin_mcall, load_opm, serialize_opm
from .opparse import parse, validate_chain_properties
from .opwords import format_labelset, load_word, random_compatible_word, serialize_word
from .potl import check_automaton, evaluate, parse_ltl, parse_potl, to_str, translate_ltl
from .potl.expand import expand_filters, tree_size
from .potl.ltl import ltl_to_str
from .uot import load_tree, serialize_tree, tau, tau_inverse

OK, FALSE, USAGE = 0, 1, 2
EXPAND_LIMIT = 100_000


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _alphabet(spec: str):
    if spec == "mcall":
        return builtin_mcall()
    return load_opm(_read(spec))


def _automaton(spec: str, alpha):
    if spec == "fig5":
        return builtin_fig5()
    return load_opa(alpha, _read(spec))


def _word(args, alpha):
    if args.word is not None and args.w is not None:
        raise UsageError("give either -w FILE or --word, not both")
    if args.word is not None:
        text = args.word
    elif args.w is not None:
        text = _read(args.w)
    else:
        raise UsageError("a word is required (-w FILE or --word TEXT)")
    return load_word(alpha, text, check=False)


def _emit(args, text: str, data: dict):
    if args.json:
        print(json.dumps(data, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def _pairs(cs):
    return sorted(cs.pairs)


def _parse_or_none(w):
    try:
        return parse(w)
    except (IncompatibleWord, ParseStuck) as e:
        return e


# --- subcommands --------------------------------------------------------------

def cmd_parse(args):
    alpha = _alphabet(args.m)
    w = _word(args, alpha)
    res = _parse_or_none(w)
    if isinstance(res, Exception):
        _emit(args, f"not compatible: {res}", {"compatible": False, "error": str(res)})
        return FALSE
    lines = list(res.trace) if args.trace else []
    lines.append(" ".join(f"({i},{j})" for i, j in _pairs(res.chains)))
    _emit(args, "\n".join(lines), {"compatible": True, "chains": _pairs(res.chains),
                                   "trace": list(res.trace), "tree": res.tree.shape()})
    return OK


def cmd_chains(args):
    alpha = _alphabet(args.m)
    w = _word(args, alpha)
    res = _parse_or_none(w)
    if isinstance(res, Exception):
        _emit(args, f"not compatible: {res}", {"compatible": False, "error": str(res)})
        return FALSE
    rep = validate_chain_properties(w, res.chains)
    text = "\n".join(f"({i},{j})" for i, j in _pairs(res.chains))
    text += "\nproperties 1-4: " + ("ok" if rep.ok else f"property {rep.prop} fails at {rep.witness}")
    _emit(args, text, {"chains": _pairs(res.chains), "properties_ok": rep.ok,
                       "failed_property": rep.prop, "witness": list(rep.witness)})
    return OK if rep.ok else FALSE


def _compatible_word(args, alpha):
    w = _word(args, alpha)
    res = _parse_or_none(w)
    if isinstance(res, Exception):
        raise UsageError(f"word is not compatible with the matrix: {res}")
    return w, res


def cmd_eval(args):
    alpha = _alphabet(args.m)
    w, res = _compatible_word(args, alpha)
    f = parse_potl(args.f)
    r = evaluate(f, w, res.chains)
    last = len(w.labels) - 1
    if args.at is not None:
        if not 0 <= args.at <= last:
            raise UsageError(f"--at {args.at} outside 0..{last}")
        v = r.at(f, args.at)
        _emit(args, "true" if v else "false", {"formula": to_str(f), "position": args.at, "holds": v})
        return OK if v else FALSE
    held = sorted(r.holds(f))
    delims = [i for i in held if i in (0, last)]
    text = "{" + ", ".join(map(str, held)) + "}"
    if delims:
        text += "\ndelimiter positions: " + ", ".join(map(str, delims))
    _emit(args, text, {"formula": to_str(f), "positions": held, "delimiters": delims,
                       "interior": [i for i in held if 0 < i < last]})
    return OK


def _format_config(alpha, c):
    stack = " ".join(f"[{format_labelset(alpha, ls)},{q}]" for ls, q in c.stack)
    return f"<{c.index}, {c.state}, {stack or '#'}>"


def cmd_accept(args):
    alpha = _alphabet(args.m)
    a = _automaton(args.a, alpha)
    w = _word(args, a.alphabet)
    r = run(a, w)
    lines = ["accepted" if r.accepted else "rejected" + (f" ({r.stuck})" if r.stuck else "")]
    trace = [_format_config(a.alphabet, c) for c in (r.witness or ())]
    if args.witness and r.accepted:
        lines += trace
    _emit(args, "\n".join(lines), {"accepted": r.accepted, "stuck": r.stuck,
                                   "witness": trace if args.witness else None})
    return OK if r.accepted else FALSE


def cmd_enum(args):
    alpha = _alphabet(args.m)
    a = _automaton(args.a, alpha)
    words = enumerate_accepted(a, args.n)
    toks = [serialize_word(w) for w in words]
    text = "\n".join(t if t else "(empty)" for t in toks) + f"\n{len(toks)} word(s)"
    _emit(args, text.lstrip("\n"), {"max_body": args.n, "count": len(toks), "words": toks})
    return OK


def cmd_check(args):
    alpha = _alphabet(args.m)
    a = _automaton(args.a, alpha)
    f = parse_potl(args.f)
    r = check_automaton(a, f, args.n)
    if r.ok:
        text = f"holds on all {r.checked} accepted word(s) with body <= {args.n}"
    else:
        text = f"counterexample: {serialize_word(r.counterexample)}"
    _emit(args, text, {"formula": to_str(f), "max_body": args.n, "ok": r.ok, "checked": r.checked,
                       "counterexample": serialize_word(r.counterexample) if not r.ok else None})
    return OK if r.ok else FALSE


def cmd_tree(args):
    alpha = _alphabet(args.m)
    w, res = _compatible_word(args, alpha)
    t = tau(w, res.chains)
    text = serialize_tree(t).rstrip("\n")
    nodes = [{"address": ".".join(map(str, s)), "position": t.position_of[s],
              "labels": sorted(t.labels[s])} for s in t.preorder()]
    _emit(args, text, {"nodes": nodes})
    return OK


def cmd_untree(args):
    alpha = _alphabet(args.m)
    t = load_tree(_read(args.t), alpha)
    try:
        w = tau_inverse(t, alpha)
    except OpotlError as e:
        _emit(args, f"incompatible tree: {e}", {"compatible": False, "error": str(e)})
        return FALSE
    _emit(args, serialize_word(w), {"compatible": True, "word": serialize_word(w)})
    return OK


def cmd_translate(args):
    if args.logic == "ltl":
        f = parse_ltl(args.f)
        out = to_str(translate_ltl(f, printed=args.printed))
        data = {"input": ltl_to_str(f), "potl": out}
    elif args.logic == "fo":
        f = parse_potl(args.f)
        g = folog.nu(f)
        out = folog.to_text(g) if args.text else folog.to_lisp(g)
        data = {"input": to_str(f), "fo": folog.to_lisp(g), "text": folog.to_text(g),
                "variables": sorted(folog.variables(g))}
    else:
        f = X.parse_xuntil(args.f)
        g = X.iota(f)
        if args.expand:
            g = expand_filters(g, _alphabet(args.m))
            if tree_size(g) > EXPAND_LIMIT:
                raise UsageError(f"expanded formula has {tree_size(g)} nodes (limit {EXPAND_LIMIT}); "
                                 "use an OPM with fewer labels")
        out = to_str(g)
        data = {"input": X.x_to_str(f), "potl": out}
    _emit(args, out, data)
    return OK


def cmd_crosscheck(args):
    alpha = _alphabet(args.m)
    kw = dict(seed=args.seed)
    for key, val in (("n_words", args.n), ("max_len", args.len), ("depth", args.depth),
                     ("n_formulas", args.formulas)):
        if val is not None:
            kw[key] = val
    if args.suite == "expansion":
        kw["corrected"] = args.corrected
    if args.suite == "ltl":
        kw["printed"] = args.printed
    rep = run_suite(args.suite, alpha, **kw)
    _emit(args, rep.summary(), rep.as_dict())
    return OK if rep.ok else FALSE


def cmd_gen(args):
    import random

    rng = random.Random(args.seed)
    if args.kind == "opm":
        alpha = random_opm(args.letters, rng=rng)
        text = serialize_opm(alpha).rstrip("\n")
        _emit(args, text, {"opm": text})
        return OK
    alpha = _alphabet(args.m)
    atoms = sorted(alpha.structural | alpha.normal)
    if args.kind == "word":
        out = [serialize_word(random_compatible_word(alpha, args.len, rng=rng)) for _ in range(args.count)]
    elif args.kind == "potl":
        out = [to_str(random_potl(atoms, args.depth, rng=rng)) for _ in range(args.count)]
    elif args.kind == "ltl":
        out = [ltl_to_str(random_ltl(atoms, args.depth, rng=rng)) for _ in range(args.count)]
    else:
        out = [X.x_to_str(random_xuntil(atoms, args.depth, rng=rng)) for _ in range(args.count)]
    _emit(args, "\n".join(out), {"kind": args.kind, "items": out})
    return OK


# --- argument parsing ----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opotl", description="Operator precedence words and POTL.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_, word=False, opm=True):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if opm:
            sp.add_argument("-m", default="mcall", metavar="OPM",
                            help="'mcall' or an OPM file (default mcall)")
        if word:
            sp.add_argument("-w", metavar="FILE", help="word file")
            sp.add_argument("--word", metavar="TEXT", help="inline word")
        return sp

    sp = add("parse", cmd_parse, "parse a word and print its chains", word=True)
    sp.add_argument("--trace", action="store_true", help="print the reduction rows")
    add("chains", cmd_chains, "print chains and check the chain properties", word=True)
    sp = add("eval", cmd_eval, "evaluate a POTL formula", word=True)
    sp.add_argument("-f", required=True, metavar="FORMULA")
    sp.add_argument("--at", type=int, metavar="POS")
    sp = add("accept", cmd_accept, "run an automaton on a word", word=True)
    sp.add_argument("-a", required=True, metavar="OPA", help="'fig5' or an automaton file")
    sp.add_argument("--witness", action="store_true")
    sp = add("enum", cmd_enum, "list accepted words up to a body length")
    sp.add_argument("-a", required=True, metavar="OPA")
    sp.add_argument("-n", type=int, required=True, metavar="N")
    sp = add("check", cmd_check, "bounded check of a formula against an automaton")
    sp.add_argument("-a", required=True, metavar="OPA")
    sp.add_argument("-f", required=True, metavar="FORMULA")
    sp.add_argument("-n", type=int, required=True, metavar="N")
    add("tree", cmd_tree, "print the tree of a word", word=True)
    sp = add("untree", cmd_untree, "flatten a tree file back into a word")
    sp.add_argument("-t", required=True, metavar="FILE")
    sp = add("translate", cmd_translate, "translate a formula", opm=True)
    sp.add_argument("logic", choices=("ltl", "fo", "xuntil"))
    sp.add_argument("-f", required=True, metavar="FORMULA")
    sp.add_argument("--printed", action="store_true",
                    help="ltl: keep the guard at the first downward position")
    sp.add_argument("--text", action="store_true", help="fo: mathematical notation")
    sp.add_argument("--expand", action="store_true",
                    help="xuntil: expand filtered operators over label sets of -m")
    sp = add("crosscheck", cmd_crosscheck, "randomized equivalence suites")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("-n", type=int, metavar="WORDS")
    sp.add_argument("--len", type=int, metavar="L")
    sp.add_argument("--depth", type=int, metavar="D")
    sp.add_argument("--formulas", type=int, metavar="K")
    sp.add_argument("--corrected", action="store_true", help="expansion: corrected hierarchical base")
    sp.add_argument("--printed", action="store_true", help="ltl: printed until/since shape")
    sp = add("gen", cmd_gen, "random words, matrices and formulas")
    sp.add_argument("kind", choices=("word", "opm", "potl", "ltl", "xuntil"))
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--len", type=int, default=10)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--letters", type=int, default=3)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as e:
        print(f"opotl: error: {e}", file=sys.stderr)
        return USAGE
    except OpotlError as e:
        print(f"opotl: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE
    except SystemExit as e:   # --help
        return e.code if isinstance(e.code, int) else USAGE


if __name__ == "__main__":
    sys.exit(main())
