import io
import json
import subprocess
import sys

import pytest

from folval.cli import main

OMEGA3 = ["-e", "P = y*(2*x^4 + 2*(L+1)*x^2*y - y^2)", "-e", "Q = x*(y^2 - (L+1)*x^2*y - x^4)", "--param", "L=1"]
CUSP = ["-e", "P = -3*x^2", "-e", "Q = 2*y"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_verify_omega3_table():
    code, text = run("verify", *OMEGA3)
    assert code == 0
    rows = text.splitlines()
    assert rows[1].startswith("D1") and "2 = 4 - 2" in rows[1]
    assert rows[2].startswith("D2") and "3 = 6 + 1 - 4" in rows[2]


def test_verify_omega3_json_fields():
    code, text = run("verify", "--format", "json", *OMEGA3)
    doc = json.loads(text)
    assert code == 0 and text.endswith("}\n")
    assert list(doc) == ["components", "root"]
    assert list(doc["components"][0]) == [
        "id", "dicritical", "rho", "val", "epsilon", "nu_F", "nu_F_direct", "nu_Psi", "xi",
        "theorem_ok", "corollary_ok",
    ]
    assert list(doc["root"]) == ["nu_p", "nu_B", "xi_p", "second_type", "prop34_ok"]
    assert [(c["id"], c["nu_F"], c["xi"], c["nu_Psi"]) for c in doc["components"]] == [(1, 4, 2, 2), (2, 6, 4, 3)]


def test_verify_reduced_root():
    code, text = run("verify", "--format", "json", "-e", "P = y", "-e", "Q = x")
    doc = json.loads(text)
    assert code == 0 and doc["components"] == [] and doc["root"]["prop34_ok"] is True


def test_json_is_byte_stable():
    outputs = {run("verify", "--format", "json", *OMEGA3)[1] for _ in range(3)}
    outputs |= {run("verify", "--format", "json", "--order", "lowest", *OMEGA3)[1]}
    assert len(outputs) == 1


def test_resolve_and_balanced(tmp_path):
    src = tmp_path / "cusp.txt"
    src.write_text("# the cusp\nP = -3*x^2\nQ = 2*y\n", encoding="utf-8")
    code, text = run("resolve", "--format", "json", str(src))
    doc = json.loads(text)
    assert code == 0 and [c["id"] for c in doc["components"]] == [1, 2, 3]
    code, text = run("balanced", *CUSP)
    assert code == 0 and "isolated-strong" in text and "nu_p(B) = 2" in text


def test_irrational_point_exits_3(capsys):
    germ = ["-e", "P = y^2 - 6*x^2", "-e", "Q = 2*x*y"]  # d(x*(y^2 - 2*x^2))
    code, _ = run("resolve", *germ)
    assert code == 3
    assert "y^2 - 2" in capsys.readouterr().err
    code, _ = run("verify", "--conjugate-points", *germ)
    assert code == 0


def test_depth_limit_exits_3():
    code, _ = run("resolve", "--max-depth", "1", *CUSP)
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "-e", "P = x^-1", "-e", "Q = y"],
        ["verify", "-e", "P = x"],
        ["verify", "--param", "L", *CUSP],
        ["verify"],
        ["verify", "/nonexistent/input.txt"],
        ["audit", *CUSP],
        ["verify", "-e", "A = x", "-e", "B = y", "-e", "C = z"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert run(*argv)[0] == 1
    assert capsys.readouterr().err


def test_parse_error_position_reported(capsys):
    run("verify", "-e", "P = x", "-e", "Q = 2y")
    assert "2:6" in capsys.readouterr().err


def test_common_factor_note(capsys):
    code, _ = run("verify", "-e", "P = -y*(x + 1)", "-e", "Q = x*(x + 1)")
    assert code == 0
    assert "common factor x + 1" in capsys.readouterr().err


def test_audit_exit_codes(tmp_path, capsys):
    good = ["-e", "A = -y*z", "-e", "B = z*(x + y)", "-e", "C = -y^2"]
    code, text = run("audit", "--format", "json", *good)
    doc = json.loads(text)
    assert code == 0 and doc["complete"] is True and doc["lhs"] == 0
    nodes = ["-e", "A = y*z", "-e", "B = x*z", "-e", "C = -2*x*y"]
    code, _ = run("audit", *nodes)
    assert code == 2
    assert "exceeds" in capsys.readouterr().err
    pts = tmp_path / "pts.txt"
    pts.write_text("[0:0:1]\n1:0:0\n", encoding="utf-8")
    code, text = run("audit", "--points", str(pts), *good)
    assert code == 0 and "[1:0:0]" in text
    pts.write_text("1:1:1\n", encoding="utf-8")
    assert run("audit", "--points", str(pts), *good)[0] == 3
    code, _ = run("audit", "-e", "A = y", "-e", "B = x", "-e", "C = 0")
    assert code == 1


def test_console_script_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "folval.cli", "verify", "-"],
        input="P = -y\nQ = x\n",
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "2 = 2 - 0" in proc.stdout
