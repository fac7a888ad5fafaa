import io
import json
import subprocess
import sys

import pytest

from charpoly_moments import cli
from charpoly_moments.numerics import PrecisionError
from charpoly_moments.results import from_csv, from_jsonl


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def records(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return [json.loads(line) for line in out.splitlines()]


def test_gamma_k_json():
    recs = records("gamma-k", "--k", "3", "--format", "json")
    assert recs[0]["quantity"] == "gamma_K"
    assert recs[0]["value"] == "1/8640"
    assert recs[0]["provenance"] == "exact"


def test_global_format_flag():
    code, out, _ = call("--format", "csv", "gamma-k", "--k", "2")
    assert code == 0
    assert out.startswith("quantity,parameters,value,provenance,details\n")


def test_airy_example():
    recs = records("airy", "--max-order", "2", "--digits", "12")
    numeric = [r for r in recs if r["quantity"] == "airy_hankel_numeric"]
    assert numeric[2]["value"].startswith("0.010074161")
    exact = [r for r in recs if r["quantity"] == "airy_hankel_det"]
    assert exact[1]["value"] == "C2^2"


def test_airy_gamma_table():
    recs = records("airy", "--max-order", "0", "--gamma-table", "6", "--digits", "15")
    table = [r for r in recs if r["quantity"] == "edge_gamma"]
    assert [r["parameters"]["K"] for r in table] == [1, 2, 3, 4, 5, 6]
    assert all("log_abs" in r["details"] for r in table)


def test_mc_example():
    recs = records("mc", "--m", "2", "--n", "3", "--k", "2", "--lambda", "0", "--samples", "100000", "--seed", "7")
    r = recs[0]
    assert r["provenance"] == "mc"
    mean, se = float(r["value"]), r["details"]["stderr"]
    assert abs(mean - 1 / 3) < 3 * se


def test_finite_n_and_closed_form():
    recs = records("finite-n", "--m", "4", "--k", "2", "--n", "5")
    vals = {r["quantity"]: r["value"] for r in recs}
    assert vals["charpoly_moment"] == "9/125"
    assert vals["center_moment_closed"] == "9/125"


def test_finite_n_derivative():
    recs = records("finite-n", "--m", "2", "--k", "2", "--d", "2", "--n", "3")
    vals = {r["quantity"]: r["value"] for r in recs}
    assert vals["derivative_moment"] == "4/1"
    assert vals["derivative_row_determinant"] == vals["derivative_row_closed"] == "12/1"


def test_sine_bessel_barnes_source_critical_asymptotic():
    assert records("sine-det", "--k", "3")[0]["value"] == "1/135"
    bes = records("bessel", "--k", "1", "--alpha", "1/2", "--digits", "20")
    assert bes[0]["value"].startswith("0.1061032953")
    zero = records("bessel", "--k", "1", "--alpha", "0")
    assert zero[1]["value"] == "unavailable"
    bar = records("barnes-check", "--k", "2", "--digits", "25")
    assert len(bar) == 4
    src = records("source", "--m", "2", "--k", "2", "--eigs", "3/2,-3/2", "--mult", "1,1", "--lambda", "0", "--n", "3")
    assert src[0]["value"] == "403/48"
    assert abs(float(src[1]["value"]) - 403 / 48) < 1e-12
    crit = records("critical", "--k", "2", "--n-list", "50,100")
    assert crit[0]["value"].startswith("1.1107207345")
    asy = records("asymptotic", "--k", "1", "--n-list", "51,101")
    assert len(asy) == 2
    edge = records("asymptotic", "--k", "1", "--n-list", "50", "--edge")
    assert "reference" in edge[0]["details"]


@pytest.mark.parametrize("argv", [
    ["gamma-k"],
    ["gamma-k", "--k", "x"],
    ["nonsense"],
    ["gamma-k", "--k", "0"],
    ["bessel", "--k", "1", "--alpha", "-1"],
    ["airy", "--max-order", "1", "--digits", "0"],
    ["source", "--m", "2", "--k", "1", "--eigs", "1", "--mult", "1"],
    ["mc", "--m", "2", "--n", "3", "--k", "2", "--lambda", "0,0,0", "--samples", "10", "--seed", "1"],
    [],
])
def test_argument_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert "argument error" in err


def test_precision_error_exit(monkeypatch):
    def boom(*args, **kwargs):
        raise PrecisionError("forced", achieved_bound=1e-3)

    monkeypatch.setattr(cli.external_source, "critical_quartic_hankel", boom)
    code, _, err = call("critical", "--k", "2")
    assert code == 3
    assert "precision error" in err


def test_csv_json_round_trip():
    argv = ["source", "--m", "3", "--k", "2", "--eigs", "1,-1", "--mult", "2,1", "--lambda", "1/2,1/3"]
    _, js, _ = call(*argv, "--format", "json")
    _, cs, _ = call(*argv, "--format", "csv")
    assert from_jsonl(js) == from_csv(cs)
    assert from_jsonl(js)[0].value.count("/") == 1


def test_byte_stable():
    for argv in (["mc", "--m", "2", "--n", "3", "--k", "2", "--lambda", "0", "--samples", "5000", "--seed", "3"],
                 ["mc", "--m", "2", "--n", "3", "--k", "2", "--lambda", "0", "--samples", "5000", "--seed", "3",
                  "--workers", "2"],
                 ["airy", "--max-order", "3"]):
        assert call(*argv) == call(*argv)
    a = call("mc", "--m", "2", "--n", "3", "--k", "2", "--lambda", "0", "--samples", "5000", "--seed", "3")[1]
    b = call("mc", "--m", "2", "--n", "3", "--k", "2", "--lambda", "0", "--samples", "5000", "--seed", "3",
             "--workers", "2")[1]
    assert json.loads(a)["value"] == json.loads(b)["value"]


def test_verify_all_exit_code_matches_failures():
    code, out, err = call("verify-all")
    recs = [json.loads(line) for line in out.splitlines()]
    failures = json.loads(recs[-1]["value"])
    assert recs[-1]["quantity"] == "verify_all_failures"
    assert code == (4 if failures else 0)
    statuses = {r["quantity"]: r["value"] for r in recs[:-1]}
    assert statuses["normalizations_measured"] == "measured"
    assert sorted(k for k, v in statuses.items() if v == "fail") == sorted(failures)
    if failures:
        assert json.loads(err.split(":", 1)[1]) == failures


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "charpoly_moments", "gamma-k", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[0])["value"] == "1/12"
