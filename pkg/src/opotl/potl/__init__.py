"""POTL: syntax, semantics, paths and the LTL embedding."""
from .formula import *  # noqa: F401,F403
from .formula import (DIRS, FALSE, TRUE, atoms_of, call_thr, eventually, globally, implies,
                      ltl_globally, parse_potl, rels_of, scall, to_str)
from .ltl import ltl_eval, parse_ltl, translate_ltl
from .paths import dhp, dsp, eval_by_paths, summary_path, summary_path_back, uhp, usp
from .semantics import CheckResult, EvalResult, Structure, check_automaton, evaluate, holds_at
