from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_fibration.catalog import run_entry
from affine_fibration.cli import main
from affine_fibration.report import FibrationReport

PSI = "x1*x2^2+(x3-x2*x4)^2"
VARS = "x1,x2,x3,x4"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_potential_json(capsys):
    code, out, _ = run(capsys, "analyze", "--potential", PSI, "--vars", VARS, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["k"] == 3 and data["a1_ok"] and data["a2_ok"]
    assert data["reduced_pluecker"] == {"0": "x2*x4 - x3", "1": "0", "2": "-x2^2", "3": "-x2"}


def test_analyze_full_rank_fails(capsys):
    code, out, _ = run(capsys, "analyze", "--potential", "x^2+y^2", "--vars", "x,y", "--json")
    assert code == 1
    assert json.loads(out)["a1_ok"] is False


def test_analyze_catalog_matches_run_entry(capsys):
    code, out, _ = run(capsys, "analyze", "--catalog", "ex1", "--json")
    assert code == 0
    assert FibrationReport.from_json(out) == run_entry("ex1")
    assert out.strip() == run_entry("ex1").to_json()


def test_analyze_json_is_byte_identical(capsys):
    _, first, _ = run(capsys, "analyze", "--catalog", "seven-var", "--json", "--seed", "9")
    _, second, _ = run(capsys, "analyze", "--catalog", "seven-var", "--json", "--seed", "9")
    assert first == second


def test_analyze_all(capsys):
    code, out, _ = run(capsys, "analyze", "--catalog", "all", "--json", "--samples", "40")
    assert code == 0
    assert len(json.loads(out)) == 11


def test_analyze_map(capsys):
    code, out, _ = run(capsys, "analyze", "--map", "x+y; x+y; z", "--vars", "x,y,z")
    assert code == 0
    assert "k = 2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--potential", "x1*", "--vars", VARS],
        ["analyze", "--potential", "x9", "--vars", VARS],
        ["analyze", "--potential", "x^65", "--vars", "x,y"],
        ["analyze", "--potential", PSI],
        ["analyze", "--potential", PSI, "--vars", "x1,x1"],
        ["analyze", "--potential", "x", "--vars", "x"],
        ["analyze", "--map", "x;y;z", "--vars", "x,y"],
        ["analyze", "--catalog", "nope"],
        ["analyze", "--catalog", "ex1", "--potential", PSI],
        ["analyze"],
        ["frobnicate"],
        [],
        ["analyze", "--seed", "x", "--catalog", "ex1"],
        ["limit", "--catalog", "ex1"],
        ["limit", "--catalog", "ex1", "--curve", "(1,0,0)+t*(0,1,0)"],
        ["limit", "--catalog", "ex1", "--curve", "(1,0,0,0)"],
        ["limit", "--catalog", "ex1", "--curve", "garbage"],
        ["conjecture", "--catalog", "ex1"],
        ["conjecture", "--catalog", "ex1", "--pieces", "x2^2+x3^2=0"],
        ["conjecture", "--catalog", "ex1", "--pieces", "x2=0,x2=1"],
        ["conjecture", "--catalog", "ex1", "--pieces", "x2=="],
        ["analyze", "--potential", "x + ξ", "--vars", "x,y"],
    ],
)
def test_malformed_input_exits_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


@pytest.mark.parametrize("curve, expected", [("(1,0,0,0)+t*(0,1,1,0)", "1,0,0,1"), ("(1,0,0,0)+t*(0,1,0,0)", "0,0,0,1")])
def test_limit(capsys, curve, expected):
    code, out, _ = run(capsys, "limit", "--catalog", "ex1", "--curve", curve, "--pieces", "x2=0,x3=0", "--json")
    assert code == 0
    data = json.loads(out)
    assert ",".join(data["basis"][0]) == expected
    assert data["tangency"]["status"] == "pass"


def test_limit_constant_kernel(capsys):
    code, out, _ = run(capsys, "limit", "--catalog", "c3-trivial", "--curve", "(1,2,3)+t*(1,1,1)+t^2*(0,5,0)")
    assert code == 0
    assert "span (0,0,1)" in out


def test_limit_inside_indeterminacy(capsys):
    code, out, _ = run(capsys, "limit", "--catalog", "ex1", "--curve", "(1,0,0,0)+t*(1,0,0,1)")
    assert code == 1
    assert "indeterminacy" in out


def test_limit_off_piece_is_skipped(capsys):
    code, out, _ = run(capsys, "limit", "--catalog", "ex1", "--curve", "(1,1,1,1)+t*(0,1,1,0)", "--pieces", "x2=0,x3=0")
    assert code == 0
    assert "[skip]" in out


def test_conjecture_verdicts(capsys):
    code, out, _ = run(capsys, "conjecture", "--catalog", "ex1", "--pieces", "x2=0,x3=0")
    assert code == 0 and out.startswith("Consistent")
    code, out, _ = run(capsys, "conjecture", "--catalog", "seven-var", "--pieces", "y=0,z=v*t;v=0,z=y*w", "--json")
    assert code == 0 and json.loads(out)["status"] == "heuristic-pass"
    code, out, _ = run(capsys, "conjecture", "--catalog", "ex1", "--pieces", "x1=0,x2=0,x3=0")
    assert code == 1 and out.startswith("UncoveredZeroFound")
    code, out, _ = run(capsys, "conjecture", "--catalog", "ex1", "--pieces", "x3=0,x4=0")
    assert code == 1 and out.startswith("PieceNotContained")


def test_conjecture_with_potential(capsys):
    code, _, _ = run(capsys, "conjecture", "--potential", PSI, "--vars", VARS, "--pieces", "x2=0,x3=0", "--samples", "50", "--seed", "4")
    assert code == 0


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "seven-var" in out
    code, out, _ = run(capsys, "catalog", "--json")
    assert code == 0 and len(json.loads(out)) == 11


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "affine_fibration", "analyze", "--catalog", "c3-trivial", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["k"] == 2


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="xy0123/^*+-() ;,=tξ", max_size=12))
def test_arbitrary_potentials_never_crash(text):
    code = main(["analyze", "--potential", text, "--vars", "x,y", "--samples", "5"])
    assert code in (0, 1, 2)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="xy0123/^*+-() ;,=t", max_size=16))
def test_arbitrary_pieces_and_curves_never_crash(text):
    assert main(["conjecture", "--potential", "x*y^2", "--vars", "x,y", "--pieces", text, "--samples", "5"]) in (0, 1, 2)
    assert main(["limit", "--potential", "x*y^2", "--vars", "x,y", "--curve", text]) in (0, 1, 2)
