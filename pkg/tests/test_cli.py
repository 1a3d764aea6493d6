from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from garside.cli import main


@pytest.fixture
def run(capsys, data_dir, monkeypatch):
    monkeypatch.chdir(data_dir)
    monkeypatch.delenv("GARSIDE_STEPS", raising=False)

    def call(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return call


def test_check(run):
    code, out, _ = run("check", "example2.pres")
    assert code == 0 and "cube check: 64 triples tested, 0 skipped, 0 failed" in out
    code, out, _ = run("check", "fig2.pres")
    assert code == 1 and "missing pair (x0,x1)" in out
    code, _, err = run("check", "malformed.pres")
    assert code == 2 and "line 2" in err


def test_check_json(run):
    code, out, _ = run("check", "fig2.pres", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["table"]["missing"] == ["(x0,x1)"] and doc["passed"] is False


def test_missing_file(run):
    code, _, err = run("check", "nope.pres")
    assert code == 2 and "cannot read" in err


def test_lcm(run, tmp_path):
    dot = tmp_path / "lcm.dot"
    code, out, _ = run("lcm", "example2.pres", "x1 x2", "x2 x1", "--dot", str(dot))
    assert code == 0
    assert out == "m = x1 x2 x3 x3\nu = x3 x3\nv = x4 x4\n"
    assert dot.read_text().startswith("digraph reversing {")
    code, out, _ = run("lcm", "example2.pres", "x1", "x1")
    assert code == 0 and out.startswith("m = x1\n")
    code, out, _ = run("lcm", "example2.pres", "x3 x3", "x4 x4", "--right", "--format", "json")
    assert json.loads(out) == {"m": "x1 x2 x3 x3", "u": "x1 x2", "v": "x2 x1", "steps": 4}


def test_lcm_stuck(run, tmp_path):
    dot = tmp_path / "stuck.dot"
    code, out, _ = run("lcm", "fig2.pres", "x0", "x1", "--dot", str(dot))
    assert code == 1 and out == "stuck at (x0,x1)\n"
    assert "color=red" in dot.read_text()


def test_lcm_input_errors(run):
    assert run("lcm", "example2.pres", "x1^-1", "x2")[0] == 2
    assert run("lcm", "example2.pres", "x9", "x2")[0] == 2
    assert run("lcm", "example2.pres")[0] == 2


def test_budget_exit_code(run, monkeypatch):
    assert run("lcm", "example2.pres", "x1 x2", "x2 x1", "--steps", "2")[0] == 3
    monkeypatch.setenv("GARSIDE_STEPS", "2")
    assert run("lcm", "example2.pres", "x1 x2", "x2 x1")[0] == 3
    assert run("lcm", "example2.pres", "x1 x2", "x2 x1", "--steps", "100")[0] == 0
    monkeypatch.setenv("GARSIDE_STEPS", "many")
    assert run("lcm", "example2.pres", "x1", "x2")[0] == 2


def test_reverse(run):
    code, out, _ = run("reverse", "example2.pres", "x1^-1 x2")
    assert code == 0 and out.splitlines()[0] == "result = x3 x4^-1"
    code, out, _ = run("reverse", "example2.pres", "x3 x3 x4^-1 x4^-1", "--left")
    assert code == 0 and out.splitlines()[0] == "result = x2^-1 x1^-1 x2 x1"
    code, out, _ = run("reverse", "fig2.pres", "x0^-1 x1")
    assert code == 1 and out == "stuck at (x0,x1)\n"


def test_solution(run, tmp_path):
    code, out, _ = run("solution", "example1.json", "--check")
    assert code == 0
    assert out.splitlines()[:3] == ["braided ✓ (64 triples)", "involutive ✓ (16 pairs)", "nondegenerate ✓ (8 permutation tests)"]
    code, out, _ = run("solution", "example1.json", "--mp-level")
    assert code == 0 and out == "irretractable\n"
    target = tmp_path / "t2.pres"
    code, _, _ = run("solution", "trivial2.json", "--emit-presentation", str(target))
    assert code == 0 and "rel: a b = b a" in target.read_text()
    code, out, _ = run("solution", "example1.json", "--retract", "--format", "json")
    assert code == 0 and json.loads(out)["retract"]["n"] == 4


def test_solution_failures(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "sigma": [[2, 2], [1, 2]], "gamma": [[1, 2], [1, 2]]}))
    code, out, _ = run("solution", str(bad))
    assert code == 1 and "nondegenerate ✗" in out
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run("solution", str(broken))[0] == 2


def test_brace_left(run):
    code, out, _ = run("brace", "example2.pres", "--left", "--max-len", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5 and all(": PASS" in l for l in lines)


def test_brace_json(run):
    code, out, _ = run("brace", "example2.pres", "--right", "--max-len", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and {r["property"] for r in doc["reports"]} >= {"right distributivity"}


def test_brace_witness(run):
    code, out, _ = run("brace", "example2.pres", "--right-dist-witness", "--max-len", "2")
    assert code == 0 and out.splitlines()[0] == "right distributivity witness: a = 1, b = x1, c = x2"
    code, out, _ = run("brace", "example2.pres", "--right-dist-witness", "--max-len", "1")
    assert out.splitlines()[0] == "right distributivity witness: a = 1, b = x1, c = x2"


def test_brace_no_witness(run, tmp_path):
    single = tmp_path / "single.pres"
    single.write_text("atoms: a\n")
    code, out, _ = run("brace", str(single), "--right-dist-witness", "--max-len", "2")
    assert code == 0 and out.splitlines()[-1] == "none within bound"


def test_brace_oplus(run):
    code, out, _ = run("brace", "example2.pres", "--oplus", "x3", "x4^-1")
    assert code == 1 and out == "undefined: no witness z with x4 ∨ z = x4 x3\n"
    code, out, _ = run("brace", "example2.pres", "--oplus", "x3^-1", "x4^-1")
    assert code == 0 and out == "defined: 1 / x1 x3\n"
    code, out, _ = run("brace", "example2.pres", "--oplus", "x1^-1 x2", "x3", "--format", "json")
    assert code == 0 and json.loads(out)["outcome"] == "defined"


def test_brace_partial(run):
    code, out, _ = run("brace", "example2.pres", "--partial", "--max-len", "1")
    assert code == 1
    assert "partial commutativity: PASS" in out and "partial left distributivity: FAIL" in out


def test_output_file(run, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run("lcm", "example2.pres", "x1", "x2", "-o", str(target))
    assert code == 0 and out == "" and target.read_text() == "m = x1 x3\nu = x3\nv = x4\n"


def test_deterministic_output(run):
    first = run("brace", "example2.pres", "--partial", "--max-len", "1", "--format", "json")
    second = run("brace", "example2.pres", "--partial", "--max-len", "1", "--format", "json")
    assert first == second


@pytest.mark.skipif(shutil.which("garside") is None, reason="console script not installed")
def test_console_script(data_dir):
    proc = subprocess.run(["garside", "check", "example2.pres"], cwd=data_dir, capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "garside.cli", "check", "fig2.pres"], cwd=data_dir, capture_output=True, text=True)
    assert proc.returncode == 1
