import json
import subprocess
import sys
from pathlib import Path

import pytest

from wfalearn import catalog
from wfalearn.cli import main
from wfalearn.equiv import cross_equiv
from wfalearn.semiring import INT
from wfalearn.wfa import from_dict, load_wfa, random_wfa

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"
GOLDEN = ROOT / "tests" / "golden" / "mersenne_trace.txt"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_learn_integer_target(capsys, tmp_path):
    dest = tmp_path / "learned.json"
    code, out, _ = run(capsys, "learn", FIX / "a_nat_as_int.json", "--out", dest)
    assert code == 0
    assert "counterexamples 1" in out
    learned = load_wfa(dest)
    assert learned.n == 2 and learned == catalog.second_hypothesis(INT)


def test_learn_natural_target_exhausts_budget(capsys):
    code, out, _ = run(capsys, "learn", FIX / "a_nat.json", "--budget", 12)
    assert code == 2
    assert "budget exhausted" in out


def test_learn_missing_file(capsys):
    code, _, err = run(capsys, "learn", "missing.json")
    assert code == 3 and "missing.json" in err


def test_learn_rejects_bad_budget(capsys):
    assert run(capsys, "learn", FIX / "a_nat.json", "--budget", 0)[0] == 3


def test_learn_semiring_override(capsys):
    code, out, _ = run(capsys, "learn", FIX / "a_nat.json", "--semiring", "rat", "--json")
    assert code == 0
    assert json.loads(out)["wfa"]["semiring"] == "rat"
    assert run(capsys, "learn", FIX / "hyp_a2.json", "--semiring", "nat")[0] == 3


def test_learn_json_report_round_trips(capsys):
    code, out, _ = run(capsys, "learn", FIX / "a_nat_as_rat.json", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["result"] == "learned"
    assert report["states"] == ["ε", "a"]
    assert report["stats"]["counterexamples"] == 1 and report["stats"]["columns"] == 4
    learned = from_dict(report["wfa"])
    assert cross_equiv(learned, catalog.mersenne()) is None


def test_learn_json_report_when_exhausted(capsys):
    code, out, _ = run(capsys, "learn", FIX / "a_nat.json", "--budget", 5, "--json")
    report = json.loads(out)
    assert code == 2 and report["result"] == "budget-exhausted"
    assert report["S"] == ["ε", "a", "aa", "aaa"]
    assert report["pending"] == {"kind": "defect", "word": ["a"] * 4}


def test_trace_is_byte_stable(capsys):
    golden = GOLDEN.read_text(encoding="utf-8")
    for name in ("a_nat_as_rat.json", "a_nat_as_int.json"):
        code, out, _ = run(capsys, "learn", FIX / name, "--trace", "--json")
        assert code == 0
        assert out.startswith(golden)


def test_eval(capsys):
    assert run(capsys, "eval", FIX / "example_rat.json", "aaa")[:2] == (0, "23\n")
    assert run(capsys, "eval", FIX / "example_rat.json")[:2] == (0, "2\n")
    assert run(capsys, "eval", FIX / "example_rat.json", "ε")[:2] == (0, "2\n")
    assert run(capsys, "eval", FIX / "example_rat.json", "ab")[0] == 3


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", FIX / "hyp_a1.json", FIX / "a_nat_as_rat.json")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "witness aaa"
    assert lines[1].endswith(": 9") and lines[2].endswith(": 7")
    assert run(capsys, "equiv", FIX / "hyp_a2.json", FIX / "a_nat_as_rat.json")[:2] == (0, "equivalent\n")
    assert run(capsys, "equiv", FIX / "hyp_a2.json", FIX / "a_nat.json")[0] == 3


def test_malformed_automaton_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"semiring": "nat", "alphabet": ["a"], "states": 1, "initial": [-2], '
                   '"output": [0], "transitions": {"a": [[0]]}}')
    code, _, err = run(capsys, "eval", bad, "a")
    assert code == 3 and "negative value under nat" in err


def test_snf(capsys, tmp_path):
    code, out, _ = run(capsys, "snf", FIX / "matrix_2x2.json")
    assert code == 0
    assert json.loads(out)["D"] == [[2, 0], [0, 4]]
    m = tmp_path / "m.json"
    m.write_text("[[2, 0], [0, 3]]")
    assert json.loads(run(capsys, "snf", m)[1])["D"] == [[1, 0], [0, 6]]
    m.write_text("[[1, 2], [3]]")
    assert run(capsys, "snf", m)[0] == 3
    m.write_text('[["x"]]')
    assert run(capsys, "snf", m)[0] == 3


def test_demo_nat(capsys):
    code, out, _ = run(capsys, "demo-nat", "--steps", 5)
    assert code == 0
    defects = [line.split()[-1] for line in out.splitlines() if line.startswith("step") and "defect" in line]
    assert defects == ["a", "aa", "aaa", "aaaa"]
    assert "step 2: counterexample aaa" in out
    assert out.count("confirmed: no natural solution") == 4
    assert out.rstrip().splitlines()[-1].startswith("budget exhausted, table not closed")


def test_demo_nat_single_step(capsys):
    code, out, _ = run(capsys, "demo_nat", "--steps", 1)
    assert code == 0
    assert "step 1: defect a" in out and "counterexample" not in out


def test_gen(capsys, tmp_path):
    dest = tmp_path / "g.json"
    assert run(capsys, "gen", "--semiring", "nat", "--states", 3, "--alphabet", 2, "--density", 0.5,
               "--seed", 7, "--out", dest)[0] == 0
    assert load_wfa(dest) == random_wfa("nat", 3, 2, density=0.5, seed=7)
    _, first, _ = run(capsys, "gen")
    _, second, _ = run(capsys, "gen")
    assert first == second
    assert run(capsys, "gen", "--density", 2)[0] == 3


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 3
    assert run(capsys)[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wfalearn", "eval", str(FIX / "example_rat.json"), "aaa"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0 and proc.stdout == "23\n"


@pytest.mark.parametrize("argv,code", [
    (["learn", "fixtures/a_nat_as_int.json"], 0),
    (["learn", "fixtures/a_nat.json", "--budget", "12"], 2),
    (["equiv", "fixtures/hyp_a1.json", "fixtures/a_nat_as_rat.json"], 1),
])
def test_exit_codes_from_a_subprocess(argv, code):
    proc = subprocess.run([sys.executable, "-m", "wfalearn", *argv], cwd=ROOT, capture_output=True)
    assert proc.returncode == code
