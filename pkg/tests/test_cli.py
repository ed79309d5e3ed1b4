import csv
import io
import json
import subprocess
import sys

import pytest

from qlommel.cli import main, parse_laurent
from qlommel.errors import QLommelError
from qlommel.lommel import h_eval
from qlommel.qseries import QContext


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_eval_matches_library(capsys):
    status, out, _ = run(capsys, "eval", "--family", "h", "--nu", "1.5", "--q", "0.5", "--n", "7", "--x", "2")
    assert status == 0
    doc = json.loads(out)
    assert doc["data"]["values"][0]["value"] == h_eval(QContext(0.5), 1.5, 7, 2.0)
    assert {"command", "q", "nu", "tol", "version"} <= set(doc["meta"])


def test_eval_complex_argument(capsys):
    status, out, _ = run(capsys, "eval", "--family", "h", "--n", "3", "--x", "1+1j")
    value = json.loads(out)["data"]["values"][0]["value"]
    ref = h_eval(QContext(0.5), 1.5, 3, 1 + 1j)
    assert value == pytest.approx([ref.real, ref.imag])


@pytest.mark.parametrize("family", ["J", "j", "p", "P", "asc", "hermite", "chebU"])
def test_every_family_evaluates(capsys, family):
    status, out, _ = run(capsys, "eval", "--family", family, "--n", "3", "--x", "0.7", "1.2")
    assert status == 0
    assert len(json.loads(out)["data"]["values"]) == 2


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "gram", "--family", "laurent", "--nmax", "6")
    doc = json.loads(out)
    again = json.dumps(doc, indent=2) + "\n"
    assert json.loads(again) == doc
    assert again == out


def test_gram_laurent_diagonal(capsys):
    _, out, _ = run(capsys, "gram", "--family", "laurent", "--nmax", "6")
    g = json.loads(out)["data"]["h_h"]
    diag = [g["matrix"][m][m] for m in range(7)]
    assert diag == pytest.approx([1 / (1 - 0.5 ** (1.5 + m)) for m in range(7)], abs=1e-9)
    assert g["max_off_diagonal"] < 1e-8


def test_csv_seventeen_digits(capsys):
    _, out, _ = run(capsys, "moments", "--kind", "c", "--K", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "c"]
    _, js, _ = run(capsys, "moments", "--kind", "c", "--K", "4")
    values = json.loads(js)["data"]["values"]
    for row, v in zip(rows[1:], values):
        assert row[1] == f"{v:.17g}"
        assert float(row[1]) == v


def test_zeros_tables(capsys):
    status, out, _ = run(capsys, "zeros", "--function", "j", "--nu", "0.5", "--count", "4")
    assert status == 0
    assert len(json.loads(out)["data"]["zeros"]) == 4
    status, out, _ = run(capsys, "zeros", "--function", "laurent", "--n", "5")
    data = json.loads(out)["data"]
    assert len(data["spectrum"]) == 5 and len(data["x_zeros"]) == 10


def test_functional_paths(capsys):
    _, out, _ = run(capsys, "functional", "--poly", "0:1,-2:1", "--path", "moments")
    assert json.loads(out)["data"]["value"] == pytest.approx(1 / (1 - 0.5**1.5) - 1)
    _, out, _ = run(capsys, "functional", "--poly", "2:1", "--path", "residue", "--nu", "3")
    data = json.loads(out)["data"]
    assert data["discrepancy"] < 1e-8


def test_poly_with_leading_negative_exponent(capsys):
    status, out, _ = run(capsys, "functional", "--poly=-2:1,0:1")
    assert status == 0
    assert json.loads(out)["data"]["value"] == pytest.approx(1 / (1 - 0.5**1.5) - 1)


def test_table(capsys, tmp_path):
    path = tmp_path / "t.csv"
    status, _, _ = run(capsys, "table", "--family", "P", "--n", "4", "--points", "5",
                       "--format", "csv", "-o", str(path))
    assert status == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["x", "value"] and len(rows) == 6


def test_verify_single_id(capsys):
    status, out, _ = run(capsys, "verify", "--id", "WRONSK", "--grid", "q=0.5;nu=1.2")
    assert status == 0
    assert json.loads(out)["data"]["passed"] is True


def test_verify_failure_status(capsys):
    # the fixed 10/20/40 ladder is too short for this limit at q = 0.7
    status, out, _ = run(capsys, "verify", "--id", "LIM-P", "--grid", "q=0.7;nu=1.5")
    assert status == 1
    assert json.loads(out)["data"]["passed"] is False


@pytest.mark.parametrize("argv", [
    ["eval", "--family", "h"],
    ["eval", "--family", "nope", "--x", "1"],
    ["functional", "--poly", "1:2,x"],
    ["verify", "--grid", "r=1"],
    ["eval", "--family", "J", "--x", "1", "--q", "1.5"],
    ["eval", "--family", "J", "--x", "-1"],
    ["table", "--family", "P", "--points", "1"],
])
def test_usage_errors(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert err


def test_tolerance_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QLOMMEL_TOL", "1e-6")
    _, out, _ = run(capsys, "moments", "--kind", "d", "--K", "2")
    assert json.loads(out)["meta"]["tol"] == 1e-6
    monkeypatch.setenv("QLOMMEL_TOL", "abc")
    status, _, _ = run(capsys, "moments", "--kind", "d", "--K", "2")
    assert status == 2


def test_parse_laurent():
    p = parse_laurent("-3:2.5, 4:1,4:1")
    assert p.coeffs == {-3: 2.5, 4: 2.0}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qlommel", "eval", "--family", "chebU", "--n", "2",
                          "--x", "0.5", "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1] == "0.5,0"
