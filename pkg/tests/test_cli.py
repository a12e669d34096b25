import json
import subprocess
import sys

import pytest

from opotl.cli import FALSE, OK, USAGE, main

from conftest import WEX


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_trace(capsys):
    code, out, _ = run(capsys, "parse", "--word", WEX, "--trace")
    assert code == OK
    assert out.splitlines()[0].startswith("# < call < han")
    assert "(1,7)" in out.replace(" ", "")


def test_eval_sets_and_verdicts(capsys):
    code, out, _ = run(capsys, "eval", "--word", WEX, "-f", "Nd call", "--json")
    assert code == OK
    assert json.loads(out) == {"delimiters": [0], "formula": "Nd call", "interior": [2, 3, 4],
                               "positions": [0, 2, 3, 4]}
    assert run(capsys, "eval", "--word", WEX, "-f", "HNu ret", "--at", "9")[0] == FALSE
    assert run(capsys, "eval", "--word", WEX, "-f", "HNu pErr", "--at", "7")[0] == OK


def test_word_file(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text(WEX)
    code, out, _ = run(capsys, "chains", "-w", str(p), "--json")
    assert code == OK
    assert [0, 12] in json.loads(out)["chains"]


def test_accept_and_check(capsys):
    assert run(capsys, "accept", "-a", "fig5", "--word", WEX)[0] == OK
    assert run(capsys, "accept", "-a", "fig5", "--word", "call{pA} ret{pA}")[0] == FALSE
    code, out, _ = run(capsys, "check", "-a", "fig5", "-n", "11",
                       "-f", "G ((call & pB & Scall(T, pA)) -> CallThr(T))", "--json")
    assert code == OK and json.loads(out)["ok"]
    assert run(capsys, "check", "-a", "fig5", "-n", "10", "-f", "G ~exc")[0] == FALSE


def test_enum(capsys):
    code, out, _ = run(capsys, "enum", "-a", "fig5", "-n", "10")
    assert code == OK and out.strip().splitlines()[-1] == "1 word(s)"


def test_tree_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "tree", "--word", WEX)
    assert code == OK
    p = tmp_path / "t.txt"
    p.write_text(out)
    code, back, _ = run(capsys, "untree", "-t", str(p))
    assert code == OK and back.strip() == WEX


@pytest.mark.parametrize("target, formula", [("fo", "Nd a"), ("ltl", "a U b"), ("xuntil", "Dn(a, b)")])
def test_translate(capsys, target, formula):
    code, out, _ = run(capsys, "translate", target, "-f", formula)
    assert code == OK and out.strip()


def test_translate_fo_text(capsys):
    _, out, _ = run(capsys, "translate", "fo", "-f", "Nd a")
    assert out.strip().startswith("(exists y")


def test_seeded_commands_reproduce(capsys):
    a = run(capsys, "gen", "potl", "--seed", "9", "--count", "3")
    b = run(capsys, "gen", "potl", "--seed", "9", "--count", "3")
    assert a == b and a[0] == OK
    x = run(capsys, "crosscheck", "xuntil", "--seed", "4", "-n", "10", "--formulas", "5", "--json")
    y = run(capsys, "crosscheck", "xuntil", "--seed", "4", "-n", "10", "--formulas", "5", "--json")
    assert x == y and json.loads(x[1])["ok"]


def test_crosscheck_failure_exit(capsys):
    code, out, _ = run(capsys, "crosscheck", "expansion", "--seed", "1", "-n", "60",
                       "--formulas", "20", "--json")
    assert code == FALSE and not json.loads(out)["ok"]
    code, _, _ = run(capsys, "crosscheck", "expansion", "--seed", "1", "-n", "60",
                     "--formulas", "20", "--corrected")
    assert code == OK


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["gen", "word"],
    ["crosscheck", "fo"],
    ["eval", "-f", "Nd call"],
    ["eval", "--word", WEX, "-f", "Nd ("],
    ["eval", "--word", "call{pZ}", "-f", "T"],
    ["eval", "-m", "/nonexistent/opm", "--word", "a", "-f", "T"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == USAGE and err


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "opotl.cli", "eval", "--word", WEX, "-f", "Nd call"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "{0, 2, 3, 4}" in out.stdout


def test_expand_guard_and_small_alphabet(capsys, tmp_path):
    assert run(capsys, "translate", "xuntil", "-f", "Rt(a, b)", "--expand")[0] == USAGE
    p = tmp_path / "ab.opm"
    p.write_text("props: a, b\na < b\nb > b\na = a\nb > a\n")
    code, out, _ = run(capsys, "translate", "xuntil", "-m", str(p), "-f", "Rt(a, b)", "--expand")
    assert code == OK and out.strip() and "[" not in out
