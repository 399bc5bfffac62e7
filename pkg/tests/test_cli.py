import csv
import io
import json
import subprocess
import sys

import pytest

from pickforge import cli


def run(argv, env=None, monkeypatch=None):
    buf = io.StringIO()
    code = cli.main(argv, out=buf)
    return code, buf.getvalue()


def test_eval_json():
    code, text = run(["eval", "digamma", "--at", "0.5"])
    assert code == 0
    doc = json.loads(text)
    assert doc["rows"][0]["value"] == -1.9635100260214235


def test_eval_complex_value():
    code, text = run(["eval", "voiculescu", "--param", "model=C", "--at", "2"])
    assert code == 0
    val = json.loads(text)["rows"][0]["value"]
    assert val["re"] == 0.0
    assert val["im"] == pytest.approx(-0.38629436111988946, abs=1e-15)


def test_csv_round_trips_doubles():
    code, text = run(["eval", "digamma", "--at", "0.3", "--at", "7", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    from pickforge import specfun
    assert [float(r["value"]) for r in rows] == [specfun.digamma(0.3), specfun.digamma(7.0)]


def test_env_format(monkeypatch):
    monkeypatch.setenv("PICKFORGE_FORMAT", "csv")
    code, text = run(["eval", "digamma", "--at", "1"])
    assert code == 0 and text.startswith("function,point,value")
    code, text = run(["eval", "digamma", "--at", "1", "--format", "json"])
    assert json.loads(text)["rows"]


def test_bad_env(monkeypatch):
    monkeypatch.setenv("PICKFORGE_SEED", "abc")
    assert run(["eval", "digamma", "--at", "1"])[0] == 2


@pytest.mark.parametrize("argv", [
    ["eval", "no_such_function", "--at", "1"],
    ["eval", "digamma"],
    ["eval", "digamma", "--at", "1", "--param", "oops"],
    ["moments", "--phi", "nope", "--p", "1", "--t", "1"],
    ["frobnicate"],
])
def test_config_errors(argv):
    assert run(argv)[0] == 2


def test_moments():
    code, text = run(["moments", "--phi", "stable", "--param", "alpha=0.5",
                      "--p", "1", "--t", "1", "--t", "4"])
    assert code == 0
    rows = json.loads(text)["rows"]
    assert [r["value"] for r in rows] == pytest.approx([2.0, 0.125], rel=1e-12)


def test_moments_divergent_is_precondition():
    code, _ = run(["moments", "--phi", "lambert", "--p", "1", "--t", "1"])
    assert code == 3


@pytest.mark.parametrize("argv,code", [
    (["classify", "--phi", "stable", "--param", "alpha=0.5", "--p", "1"], 0),
    (["classify", "--phi", "stable", "--param", "alpha=0.6666666666666666", "--p",
      "1.3333333333333333"], 0),
    (["classify", "--phi", "lambert", "--p", "1"], 1),
    (["classify", "--phi", "stable", "--param", "alpha=0.5", "--p", "0.5"], 3),
])
def test_classify_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_invert():
    code, text = run(["invert", "--phi", "stable", "--param", "alpha=0.5", "--at", "3"])
    assert code == 0
    assert json.loads(text)["rows"][0]["psi"] == pytest.approx(9.0, rel=1e-14)
    assert run(["invert", "--phi", "ratio_log", "--at", "0.5"])[0] == 3


def test_input_file(tmp_path):
    doc = {"phi": {"name": "stable", "params": {"alpha": 0.5}}, "p": [1.0], "t": [2.0]}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(doc))
    code, text = run(["moments", "--input", str(path)])
    assert code == 0
    assert json.loads(text)["rows"][0]["value"] == pytest.approx(0.5, rel=1e-12)
    path.write_text("[1, 2]")
    assert run(["moments", "--input", str(path)])[0] == 2


def test_verify_is_deterministic():
    a = run(["verify", "specfun", "--seed", "3", "--format", "csv"])
    b = run(["verify", "specfun", "--seed", "3", "--format", "csv", "--workers", "4"])
    assert a == b
    assert a[0] == 0


def test_verify_theta_reports_free_analog_failure():
    code, text = run(["verify", "theta"])
    doc = json.loads(text)
    failed = {r["identity_tag"] for r in doc["rows"] if not r["pass"]}
    assert code == 1
    assert failed == {"free_analog_C", "free_analog_S"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pickforge", "eval", "beta", "--at", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rows"][0]["value"] == pytest.approx(0.6931471805599453)
