from __future__ import annotations

import subprocess
import sys

import pytest

EXAMPLE = "n = 3\nbasis = -1 2 -1; 3 -1 -1\nreps = 1 2 0\n"


def run(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "scarfres.cli", *map(str, args)], capture_output=True, text=True, cwd=cwd
    )


@pytest.fixture
def problem(tmp_path):
    p = tmp_path / "example.txt"
    p.write_text(EXAMPLE)
    return p


def test_markov(problem, tmp_path):
    r = run("markov", problem)
    assert r.returncode == 0
    assert "markov basis (3 elements)" in r.stdout
    assert "generic=true" in r.stdout
    line = tmp_path / "line.txt"
    line.write_text("basis = 1 -1\nreps = 0 0\n")
    r = run("markov", line)
    assert r.returncode == 0 and "(1 element)" in r.stdout


def test_markov_not_antichain(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("basis = 1 1 -1; 0 1 -1\nreps = 0 0 0\n")
    r = run("markov", bad)
    assert r.returncode == 2
    assert "comparable" in r.stderr


def test_usage_and_parse_errors(tmp_path):
    assert run("bogus").returncode == 1
    assert run().returncode == 1
    broken = tmp_path / "broken.txt"
    broken.write_text("n = 3\nbasis = -1 2 q\nreps = 1 2 0\n")
    r = run("markov", broken)
    assert r.returncode == 1 and ":2:14:" in r.stderr


@pytest.mark.parametrize(
    "mode, ranks",
    [("sum", "(4, 5, 2)"), ("lattice", "(1, 3, 2)"), ("scarf-only", "(1, 3, 2)")],
)
def test_resolve(problem, tmp_path, mode, ranks):
    out = tmp_path / f"{mode}.cx"
    r = run("resolve", problem, "--mode", mode, "--out", out)
    assert r.returncode == 0, r.stderr
    assert f"ranks: {ranks}" in r.stdout
    assert "reference comparison: MATCH" in r.stdout
    assert "dd-zero: ok" in r.stdout
    assert out.read_text().startswith("complex 1\n")
    if mode == "scarf-only":
        assert "scarf orbit counts: (1, 3, 2)" in r.stdout


def test_resolve_is_deterministic(problem):
    a = run("resolve", problem, "--mode", "sum", "--classes", "20")
    b = run("resolve", problem, "--mode", "sum", "--classes", "20")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_resolve_precondition(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("n = 3\nbasis = -1 2 -1; 3 -1 -1\nreps = 0 1 0\n")
    assert run("resolve", p, "--mode", "sum").returncode == 2


def test_verify(problem, tmp_path):
    out = tmp_path / "sum.cx"
    assert run("resolve", problem, "--out", out, "--classes", "20").returncode == 0
    r = run("verify", out, "--classes", "20")
    assert r.returncode == 0 and "verdict: ok" in r.stdout
    text = out.read_text().replace("diff 2 e1 f1 x^2", "diff 2 e1 f1 -x^2")
    bad = tmp_path / "bad.cx"
    bad.write_text(text)
    r = run("verify", bad)
    assert r.returncode == 3
    assert "dd-zero: FAIL" in r.stdout and "d1*d2 [" in r.stdout
    empty = tmp_path / "empty.cx"
    empty.write_text("complex 1\nn 3\nmode class\nend\n")
    r = run("verify", empty)
    assert r.returncode == 0 and "verdict: ok" in r.stdout


def test_hull_check(problem, tmp_path):
    r = run("hull-check", problem)
    assert r.returncode == 0 and "MATCH" in r.stdout and "t=25,26" in r.stdout
    ng = tmp_path / "ng.txt"
    ng.write_text("n = 3\nbasis = 1 -1 0\nreps = 0 0 1\n")
    r = run("hull-check", ng)
    assert r.returncode == 2 and "REFUSED" in r.stdout


def test_demo():
    r = run("demo", "--classes", "30")
    assert r.returncode == 0, r.stderr
    assert "demo: ALL MATCH" in r.stdout
    assert "(4,3,-1)" in r.stdout
