"""Golden-file tests for the command line.

Regenerate the goldens after an intentional output change with
    python3 tests/test_cli.py --regen
"""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lhopf.cli import run

GOLDEN = Path(__file__).parent / "golden"

INVOCATIONS = {
    "build_steenrod": ["build", "steenrod", "--p", "2", "--cap", "2"],
    "build_gamma": ["build", "gamma", "--p", "2", "--n", "2"],
    "build_dual_group": ["build", "dual-group", "--p", "2", "--n", "2", "--galois"],
    "build_unicursal": ["build", "unicursal", "--p", "3", "--n", "2"],
    "check_steenrod_p2": ["check-hopf", "examples/steenrod_p2_cap2.hopf"],
    "check_steenrod_p3": ["check-hopf", "examples/steenrod_p3_cap1.hopf"],
    "check_gamma": ["check-hopf", "examples/gamma_p2_n2.hopf"],
    "check_dual_group": ["check-hopf", "examples/dual_group_gal_gf4.hopf"],
    "check_unicursal": ["check-hopf", "examples/unicursal_gf9.hopf"],
    "primitives_xy": ["primitives", "examples/steenrod_xy.comod"],
    "landweber_xy": ["landweber", "examples/steenrod_xy.comod"],
    "landweber_xy_json": ["--format", "json", "landweber", "examples/steenrod_xy.comod"],
    "unipotence_steenrod": ["unipotence", "examples/steenrod_p2_cap2.hopf"],
    "unipotence_z3": ["unipotence", "examples/z3_rep_gf2.comod"],
    "galois_demo": ["galois-demo"],
    "tor_quot": ["tor", "--module", "quot(p^2,u^2)"],
    "tor_p3": ["tor", "--p", "3", "--module", "mk(2)", "--against", "quot(p,u^2)"],
    "lcomplete_quot": ["lcomplete", "--module", "quot(p^2,u^2)", "-T", "8"],
    "lcomplete_mk2": ["lcomplete", "--p", "3", "--module", "mk(2)"],
    "lim1_witness": ["lim1-witness", "--p", "2", "-T", "16"],
    "lim1_witness_json": ["lim1-witness", "--p", "2", "-T", "16", "--format", "json"],
    "corpus": ["corpus", "--seed", "0"],
}

EXPECTED_EXIT = {"unipotence_z3": 1}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return f"exit {code}\n" + out.getvalue()


@pytest.mark.parametrize("name", sorted(INVOCATIONS))
def test_golden(name):
    first = invoke(INVOCATIONS[name])
    second = invoke(INVOCATIONS[name])
    assert first == second
    assert first == (GOLDEN / f"{name}.txt").read_text()
    assert first.startswith(f"exit {EXPECTED_EXIT.get(name, 0)}\n")


def test_landweber_reports_length_two():
    out = invoke(["--format", "json", "landweber", "examples/steenrod_xy.comod"])
    rec = json.loads(out.split("\n", 1)[1])
    assert rec["length"] == 2 and rec["certified"]
    assert rec["chosen"] == ["x", "y"]


def test_lim1_witness_counts():
    out = invoke(["lim1-witness", "--p", "2", "-T", "16", "--format", "json"])
    rec = json.loads(out.split("\n", 1)[1])
    assert rec["nonzero_c0"] == 17 and rec["ok"]


def test_malformed_file_exit_2(tmp_path):
    bad = tmp_path / "bad.hopf"
    bad.write_text("ring gf(2,1)\n[hopf]\nbasis 1:0\nmult 0 0 9 1\n")
    err = io.StringIO()
    assert run(["check-hopf", str(bad)], io.StringIO(), err) == 2
    assert f"{bad}:4:10:" in err.getvalue()


def test_violated_axiom_exit_1(tmp_path):
    text = (GOLDEN / "build_steenrod.txt").read_text().split("\n", 1)[1]
    bad = tmp_path / "mutated.hopf"
    bad.write_text(text.replace("antipode 1 1 1", "antipode 1 1 0"))
    out = io.StringIO()
    assert run(["check-hopf", str(bad)], out, io.StringIO()) == 1
    assert "FAIL antipode" in out.getvalue()


def test_bad_flags_exit_2():
    assert run(["lim1-witness", "--p", "6"], io.StringIO(), io.StringIO()) == 2
    assert run(["tor", "--module", "nonsense"], io.StringIO(), io.StringIO()) == 2
    assert run(["frobnicate"], io.StringIO(), io.StringIO()) == 2
    assert run(["check-hopf", "missing.hopf"], io.StringIO(), io.StringIO()) == 2
    assert run(["build", "gamma", "--p", "2", "--n", "2", "--m", "2"], io.StringIO(), io.StringIO()) == 2


def test_build_writes_file(tmp_path):
    target = tmp_path / "s.hopf"
    assert run(["build", "steenrod", "--p", "3", "-o", str(target)], io.StringIO(), io.StringIO()) == 0
    assert run(["check-hopf", str(target)], io.StringIO(), io.StringIO()) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lhopf.cli", "check-hopf", "examples/steenrod_p2_cap2.hopf"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "pass (11 axiom groups)" in proc.stdout


if __name__ == "__main__" and "--regen" in sys.argv:
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in INVOCATIONS.items():
        (GOLDEN / f"{name}.txt").write_text(invoke(argv))
