"""Command-line interface: subcommand behavior, exit codes, determinism,
and byte-exact agreement with the golden corpus."""

import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout

import pytest

from qgl.cli import run

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def capture(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


def test_nf_example():
    code, out, _ = capture(["nf", "--shape", "1,1", "E[1,2]*F[1,2]"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    coeffs = [t["coeff"] for t in doc["element"]["terms"]]
    assert "-1" in coeffs  # the -F E monomial
    assert any(t["k"] != [0, 0] for t in doc["element"]["terms"])  # the K part


def test_typical_example():
    code, out, _ = capture(["typical", "--shape", "1,1", "--lambda", "0,0"])
    assert code == 0
    assert json.loads(out) == {"schema": 1, "typical": False, "P": 0}


def test_exit_code_syntax_error():
    code, out, err = capture(["nf", "--shape", "1,1", "E[1,2]*"])
    assert code == 2 and out == "" and "syntax error" in err


def test_exit_code_domain_error():
    code, out, err = capture(["typical", "--shape", "1,1", "--lambda", "0"])
    assert code == 3 and "domain error" in err
    code, _, _ = capture(["nf", "--shape", "1,1", "E[1,3]"])
    assert code == 3


def test_exit_code_usage_error():
    code, _, _ = capture(["no-such-command"])
    assert code == 2
    code, _, _ = capture(["nf", "E[1,2]"])  # missing --shape
    assert code == 2


def test_selftest_passes():
    code, out, _ = capture(["selftest", "--shape", "2,1", "--seed", "7", "--trials", "10"])
    assert code == 0
    doc = json.loads(out)
    assert doc["failed"] == 0 and doc["passed"] > 0


def test_determinism():
    argv = ["kac", "--shape", "2,1", "--lambda", "2,0,0"]
    _, out1, _ = capture(argv)
    _, out2, _ = capture(argv)
    assert out1 == out2


def test_emit_text():
    code, out, _ = capture(["mul", "--shape", "1,1", "--emit", "text", "E[1,2]", "E[1,2]"])
    assert code == 0 and out.strip() == "0"
    code, out, _ = capture(["counit", "--shape", "1,1", "--emit", "text", "K[1]"])
    assert code == 0 and out.strip() == "1"


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text("shape = 1,1\nseed = 3\n")
    code, out, _ = capture(["typical", "--config", str(cfg), "--lambda", "1,0"])
    assert code == 0
    assert json.loads(out)["typical"] is True
    cfg.write_text("bogus = 1\n")
    code, _, _ = capture(["typical", "--config", str(cfg), "--lambda", "1,0"])
    assert code == 2


def test_braid_and_omega_roundtrip():
    code, out, _ = capture(
        ["braid", "--shape", "2,1", "-i", "1", "--emit", "text", "E[2,3]"]
    )
    assert code == 0 and out.strip() == "-E[1,3]"
    code, out, _ = capture(["omega", "--shape", "1,1", "--emit", "text", "E[1,2]"])
    assert code == 0 and out.strip() == "F[1,2]"


def test_decompose_z():
    code, out, _ = capture(
        ["decompose-z", "--shape", "2,1", "--z", "7,5,2", "--l", "3"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["z_restricted"] == [1, 5, 2] and doc["z_frobenius"] == [2, 0, 0]


GOLDEN = {
    "corpus/normalforms/ef_gl11.json": ["nf", "--shape", "1,1", "E[1,2]*F[1,2]"],
    "corpus/normalforms/straighten_gl21.json": ["nf", "--shape", "2,1", "E[2,3]*E[1,2]"],
    "corpus/normalforms/kpast_gl11.json": ["nf", "--shape", "1,1", "K[1]*E[1,2]"],
    "corpus/normalforms/divided_gl21.json": ["nf", "--shape", "2,1", "E[1,2]^(2)*E[1,2]"],
    "corpus/characters/kac_gl21_200.json": ["kac", "--shape", "2,1", "--lambda", "2,0,0"],
    "corpus/characters/simple_gl21_000.json": ["simple", "--shape", "2,1", "--lambda", "0,0,0"],
    "corpus/characters/simple_root3_gl21_200.json": [
        "simple", "--shape", "2,1", "--lambda", "2,0,0", "--at-root", "3",
    ],
    "corpus/characters/tensor_gl11.json": [
        "tensor", "--shape", "1,1", "--lambda1", "1,0", "--lambda2", "0,0",
    ],
    "corpus/relations/classical_gl11.json": ["classical-check", "--shape", "1,1"],
    "corpus/relations/classical_gl21.json": ["classical-check", "--shape", "2,1"],
    "corpus/relations/smallgroup_gl11_l3.json": [
        "smallgroup", "--shape", "1,1", "--counts", "-l", "3",
    ],
    "corpus/relations/decompose_gl21.json": [
        "decompose-z", "--shape", "2,1", "--z", "7,5,2", "--l", "3",
    ],
}


@pytest.mark.parametrize("relpath", sorted(GOLDEN))
def test_golden_corpus(relpath):
    code, out, _ = capture(GOLDEN[relpath])
    assert code == 0
    with open(os.path.join(ROOT, relpath), "r", encoding="utf-8") as fh:
        assert out == fh.read(), relpath
