import csv
import json
import math

import pytest

from ncvalid import __version__
from ncvalid.cli import EXIT_DATA, EXIT_DEGENERATE, EXIT_OK, EXIT_USAGE, main
from ncvalid.report import SCHEMA, ReportDocument

TX = ("InvoiceNo,StockCode,Description,Quantity,InvoiceDate,UnitPrice,CustomerID,Country\n"
      "1,a,x,2,1/5/2011 10:00,5.0,7,UK\n"
      "2,a,x,4,1/9/2011 10:00,5.0,7,UK\n"
      "3,a,x,1,1/9/2011 11:00,1.0,,UK\n")


def _csv(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_version_and_help(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out
    assert main(["--help"]) == EXIT_OK


def test_generate(tmp_path):
    out = tmp_path / "s1.csv"
    assert main(["generate", "scenario1", "--seed", "3", "--out", str(out)]) == EXIT_OK
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["x", "y", "label"] and len(rows) == 1001
    out2 = tmp_path / "s2.csv"
    assert main(["generate", "scenario2", "--out", str(out2)]) == EXIT_OK
    assert len(out2.read_text().splitlines()) == 451


def test_generate_unknown_scenario_is_usage_error(tmp_path):
    assert main(["generate", "scenario9", "--out", str(tmp_path / "x.csv")]) == EXIT_USAGE


def test_toy_sweep_writes_report(tmp_path, capsys):
    data = _csv(tmp_path, "x\n0\n1\n10\n11\n")
    out = tmp_path / "rep"
    code = main(["sweep", data, "--kmin", "2", "--kmax", "2", "--restarts", "3", "--seed", "5", "--out", str(out)])
    assert code == EXIT_OK
    printed = capsys.readouterr().out
    assert "seed=5" in printed and "config_hash=" in printed
    doc = ReportDocument.from_json((out / "report.json").read_text())
    assert doc.schema == SCHEMA and doc.seed == 5
    assert doc.value("NC", 2) == pytest.approx(12 / math.sqrt(110 * 4 / 3), rel=1e-9)
    assert doc.value("CH", 2) == pytest.approx(20.0)
    assert (out / "series.csv").exists() and (out / "series" / "dbstar.csv").exists()
    assert (out / "labels" / "k3.csv").exists()
    assert not (out / "pca.csv").exists()


def test_sweep_options(tmp_path):
    data = _csv(tmp_path, "a;b;lab\n0;0;p\n0;1;p\n5;5;q\n5;6;q\n9;0;r\n9;1;r\n")
    out = tmp_path / "rep"
    code = main(["sweep", data, "--delimiter", ";", "--label-column", "lab", "--kmax", "3", "--restarts", "4",
                 "--corr", "kendall", "--standardize", "--index", "NCI2", "--nc-threshold", "0.5",
                 "--jobs", "2", "--out", str(out)])
    assert code == EXIT_OK
    doc = json.loads((out / "report.json").read_text())
    assert doc["config"]["method"] == "kendall"
    assert doc["recommendation"]["index"] == "NCI2"
    assert doc["dataset"]["columns"] == ["a", "b"]
    assert (out / "pca.csv").exists()


@pytest.mark.parametrize("args", [
    ["sweep", "iris", "--kmin", "5", "--kmax", "3", "--out", "x"],
    ["sweep", "iris", "--kmin", "1", "--out", "x"],
    ["sweep", "iris", "--nc-threshold", "2", "--out", "x"],
    ["sweep", "iris", "--corr", "cosine", "--out", "x"],
    ["sweep", "iris"],
    ["frobnicate"],
    ["cost", "--n", "10", "--p", "2", "--k", "11"],
])
def test_usage_errors(args, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(args) == EXIT_USAGE


def test_kmax_beyond_data_is_usage_error(tmp_path):
    data = _csv(tmp_path, "x\n0\n1\n2\n")
    assert main(["sweep", data, "--kmax", "3", "--out", str(tmp_path / "o")]) == EXIT_USAGE


@pytest.mark.parametrize("text", ["x,y\n1,2\n3,oops\n", "x,y\n1,2\n3\n", "x,y\n"])
def test_data_errors(tmp_path, text):
    data = _csv(tmp_path, text)
    assert main(["sweep", data, "--kmax", "2", "--out", str(tmp_path / "o")]) == EXIT_DATA


def test_missing_file_is_data_error(tmp_path):
    assert main(["sweep", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o")]) == EXIT_DATA


def test_constant_column_standardize_is_data_error(tmp_path):
    data = _csv(tmp_path, "x,y\n1,0\n1,1\n1,2\n1,3\n")
    assert main(["sweep", data, "--kmax", "2", "--standardize", "--out", str(tmp_path / "o")]) == EXIT_DATA


def test_all_coincident_points_are_degenerate(tmp_path):
    data = _csv(tmp_path, "x,y\n" + "1,1\n" * 6)
    assert main(["sweep", data, "--kmax", "3", "--restarts", "2", "--out", str(tmp_path / "o")]) == EXIT_DEGENERATE


def test_rfm(tmp_path):
    out = tmp_path / "rfm.csv"
    assert main(["rfm", _csv(tmp_path, TX), "--out", str(out), "--reference-date", "2011-01-10"]) == EXIT_OK
    rows = list(csv.reader(out.open()))
    assert rows == [["customer_id", "recency", "frequency", "monetary"], ["7", "1", "2", "30.0"]]
    assert main(["rfm", _csv(tmp_path, TX), "--out", str(out), "--reference-date", "10/1/2011"]) == EXIT_USAGE
    assert main(["rfm", _csv(tmp_path, "a,b\n1,2\n", "bad.csv"), "--out", str(out)]) == EXIT_DATA


def test_cost(tmp_path, capsys):
    assert main(["cost", "--n", "100", "--p", "2", "--k", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "index,multiplications,square_roots,exponentials,growth"
    assert "NC,14856,4950,0,quadratic" in lines
    assert "SF,213,103,1,linear" in lines
    out = tmp_path / "cost.csv"
    assert main(["cost", "--n", "40", "--p", "2", "--k", "3", "--timing", "--out", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[0].endswith(",seconds")
