import json
import os
import subprocess
import sys

import pytest

from qmf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def doc(out):
    return json.loads(out)


def test_nvh(capsys):
    code, out, _ = run(capsys, "nvh", "--q", "3", "--k", "8", "--l", "2", "--m", "2")
    assert code == 0 and doc(out)["kind"] == "NvhReport"


def test_nvh_missing_arg(capsys):
    code, _, err = run(capsys, "nvh", "--k", "8")
    assert code == 2 and "--l" in err


def test_e_expand_from_e_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "e-expand", "--expr", "E^2*g + h*E", "--k", "6", "--m", "2")
    assert code == 0 and doc(out)["kind"] == "EExpansion"
    p = tmp_path / "e.json"
    p.write_text(out)
    code, out2, _ = run(capsys, "from-e", "--input", str(p))
    assert code == 0 and doc(out2)["kind"] == "AssocPoly"


def test_dslash_and_check(capsys):
    code, out, _ = run(capsys, "dslash", "--expr", "E", "--k", "2", "--m", "1", "--matrix", "1,1,T,T+1")
    assert code == 0 and doc(out)["kind"] == "AssocPoly"
    code, out, _ = run(capsys, "check-wqmp", "--expr", "E*g", "--k", "4", "--m", "1")
    assert code == 0 and doc(out)["kind"] == "Check" and doc(out)["holds"]
    code, _, err = run(capsys, "check-wqmp", "--expr", "E", "--k", "2", "--m", "0")
    assert code == 1 and json.loads(err)["error"] == "WeightTypeMismatch"


def test_check_rejects_truncated_polynomial(capsys, tmp_path):
    # E alone as a depth-one associated polynomial drops its linear term
    from qmf.fields import get_field
    from qmf.qmod import AssocPoly
    from qmf.serialize import dumps, parse_expr
    F = get_field(3)
    p = tmp_path / "p.json"
    p.write_text(dumps(AssocPoly(F, 2, 1, [parse_expr(F, "E"), parse_expr(F, "0")])))
    code, out, _ = run(capsys, "check-wqmp", "--input", str(p))
    assert code == 1 and doc(out)["kind"] == "Check" and not doc(out)["holds"]


def test_hyperderive_backends(capsys):
    code, a, _ = run(capsys, "hyperderive", "--expr", "E", "--n", "1")
    assert code == 0
    code, b, _ = run(capsys, "hyperderive", "--expr", "E", "--n", "1", "--backend", "series")
    assert code == 0 and doc(b)["kind"] == "USeries"
    code, _, err = run(capsys, "hyperderive", "--expr", "E", "--n", "1", "--backend", "nope")
    assert code == 1 and json.loads(err)["error"] == "UnsupportedBackend"


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--resolve", "--expr", "D(1,g)*E + g*E^2 + g^3", "--k", "6", "--m", "2")
    assert code == 0
    d = doc(out)
    assert d["kind"] == "DerDecomposition" and [p["text"] for p in d["parts"]] == ["g^3", "(2)*h"]


def test_decompose_nvh_failure(capsys):
    # k = 2l with nonzero top coefficient hits a vanishing binomial at q = 2
    code, out, _ = run(capsys, "decompose", "--q", "2", "--expr", "E^2", "--k", "4", "--m", "0")
    assert code == 1 and doc(out)["kind"] == "Error" and doc(out)["error"] == "NvhViolation"


@pytest.mark.parametrize("op", ["up", "tp", "delta", "reps"])
def test_hecke_ops(capsys, op):
    code, out, _ = run(capsys, "hecke", "--op", op, "--p", "T^2+1", "--expr", "form(\"f\", 4, 1)*E", "--k", "6", "--m", "2")
    assert code == 0 and doc(out)["kind"]


def test_hecke_counterexample(capsys):
    code, out, _ = run(capsys, "hecke", "counterexample")
    assert code == 0 and doc(out)["kind"] == "Counterexample" and doc(out)["nonzero"]


def test_series_and_render(capsys):
    code, out, _ = run(capsys, "series", "g", "--prec", "10")
    assert code == 0 and doc(out)["kind"] == "USeries"
    code, out2, _ = run(capsys, "render", "--expr", "g", "--prec", "10")
    assert code == 0 and doc(out2)["coeffs"] == doc(out)["coeffs"]


def test_bad_expression_is_usage_error(capsys):
    code, _, err = run(capsys, "render", "--expr", "g +")
    assert code == 2 and err.startswith("qmf:")


def test_verify_deterministic(capsys):
    code, a, _ = run(capsys, "verify", "--suite", "phipsi,keyeq", "--quiet")
    assert code == 0
    code, b, _ = run(capsys, "verify", "--suite", "1,4", "--quiet")
    assert a == b
    r = doc(a)
    assert r["kind"] == "Report" and r["passed"] and "seconds" not in a


def test_verify_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "bogus")
    assert code == 2


def test_verify_mutation_subprocess():
    env = dict(os.environ, QMF_MUTATE="binomial")
    p = subprocess.run([sys.executable, "-m", "qmf.cli", "verify", "--suite", "phipsi", "--quiet"],
                       env=env, capture_output=True, text=True)
    assert p.returncode == 1
    r = json.loads(p.stdout)
    assert not r["passed"] and r["first_counterexample"]["suite"] == "phipsi"
