import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elliptic_summer import Divisor
from elliptic_summer.cli import main
from elliptic_summer.problem import parse_divisor
from elliptic_summer.selftest import curve_37a

ROOT = Path(__file__).resolve().parents[1]
PROBLEMS = ROOT / "problems"

CURVE37 = "field rational\ncurve = [0, 0, 1, -1, 0]\ns = [0, 0]\n"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, body, name="p.txt"):
    p = tmp_path / name
    p.write_text(body)
    return p


def test_decide_summable_with_certificate(capsys):
    code, out, _ = run(["decide", PROBLEMS / "weierstrass.txt"], capsys)
    assert code == 0
    assert out.startswith("elliptic-summer v0.1.0\ncommand = decide\n")
    assert "Summable" in out and "certificate" in out


def test_sdim_worked_instance(capsys):
    code, out, _ = run(["sdim", PROBLEMS / "sdim.txt"], capsys)
    assert code == 0
    assert "dim S(D) = 1\nbruteforce = 1\n" in out


def test_builtin_zeta(capsys):
    code, out, _ = run(["residues", PROBLEMS / "zero.txt", "--builtin", "zeta", "2", "0", "--json"],
                       capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["sections"]["pano"]["pano1"] == "2"
    assert doc["sections"]["pano"]["residue_identity"] == "0"


def test_json_and_text_agree(capsys):
    _, text, _ = run(["residues", PROBLEMS / "two_orbits.txt"], capsys)
    _, js, _ = run(["residues", PROBLEMS / "two_orbits.txt", "--json"], capsys)
    doc = json.loads(js)
    for name, rows in doc["sections"].items():
        assert f"[{name}]" in text
        for k, v in rows.items():
            assert f"{k} = {v}" in text


def test_output_file_and_timing(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, err = run(["reduce", PROBLEMS / "two_orbits.txt", "-o", target, "--timing"], capsys)
    assert code == 0
    assert target.read_text() == out
    assert err.startswith("elapsed ")
    assert "elapsed" not in out


def test_char5_integrability_report(capsys):
    code, out, _ = run(["integrable-additive", PROBLEMS / "char5.txt"], capsys)
    assert code == 0
    assert "weighted_p_residue = false" in out


def test_gauge_and_multiplicative(capsys):
    code, out, _ = run(["gauge-constant", PROBLEMS / "gauge.txt"], capsys)
    assert code == 0 and "abel_jacobi = false" in out
    code, out, _ = run(["integrable-multiplicative", PROBLEMS / "gauge.txt"], capsys)
    assert code == 0


@pytest.mark.parametrize("body,code", [
    (CURVE37 + "f = x +\n", 1),                                  # malformed expression
    ("field rational\ncurve = [0, 0]\ns = [0, 0]\nf = x\n", 1),  # singular curve
    (CURVE37.replace("s = [0, 0]", "s = [1, 1]") + "f = x\n", 1),  # s not on the curve
    ("field rational\ncurve = [0, 0, 0, 0, 1]\ns = [2, 3]\nf = x\n", 2),  # torsion s
    (CURVE37 + "f = 1/(x - 3)\n", 2),                            # irrational pole
])
def test_error_exit_codes(tmp_path, capsys, body, code):
    got, out, err = run(["decide", write(tmp_path, body)], capsys)
    assert got == code, (out, err)
    assert err


def test_parse_error_reports_position(tmp_path, capsys):
    got, _, err = run(["decide", write(tmp_path, CURVE37 + "f = x + z\n")], capsys)
    assert got == 1
    assert "line 4" in err


def test_usage_errors(capsys, tmp_path):
    assert run(["nonsense"], capsys)[0] == 1
    assert run(["decide"], capsys)[0] == 1
    assert run(["--version"], capsys) == (0, "elliptic-summer v0.1.0\n", "")
    assert run(["decide", tmp_path / "missing.txt"], capsys)[0] == 1


def test_bound_caveat_exit(tmp_path, capsys):
    # poles at +-6s, searched only up to 3s
    p = write(tmp_path, CURVE37 + "f = 1/(x - 6)\n")
    got, out, _ = run(["decide", p, "--bound", "3"], capsys)
    assert got == 3
    assert "bound_caveat = true" in out
    got, out, _ = run(["decide", p], capsys)
    assert got == 0 and "bound_caveat = false" in out


def test_determinism_subprocess():
    argv = [sys.executable, "-m", "elliptic_summer", "decide", str(PROBLEMS / "two_orbits.txt"),
            "--json"]
    a = subprocess.run(argv, capture_output=True, cwd=ROOT)
    b = subprocess.run(argv, capture_output=True, cwd=ROOT)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_selftest_command(capsys):
    code, out, _ = run(["selftest"], capsys)
    assert code == 0
    assert "16/16 passed" in out


@given(st.dictionaries(st.integers(-4, 4), st.integers(-3, 3).filter(bool), min_size=1, max_size=4))
def test_divisor_text_round_trip(mults):
    E, s = curve_37a()
    D = Divisor({E.mul(n, s): k for n, k in mults.items()})
    assert parse_divisor(str(D), E) == D
