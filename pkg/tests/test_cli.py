from __future__ import annotations

import json

import pytest

from npi_order.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, main

from conftest import EX1, EX2, RSS_TABLE


@pytest.fixture
def ex1_csv(tmp_path):
    path = tmp_path / "ex1.csv"
    # deliberately not in event order
    rows = [f"{g},{v}" for g in ("Z", "Y", "X") for v in EX1[g]]
    path.write_text("group,value\n" + "\n".join(rows) + "\n")
    return path


@pytest.fixture
def ex2_csv(tmp_path):
    path = tmp_path / "ex2.csv"
    rows = [f"{g},{v}" for g, vals in EX2.items() for v in vals]
    path.write_text("group,value\n" + "\n".join(rows) + "\n")
    return path


@pytest.fixture
def rss_csv(tmp_path):
    path = tmp_path / "rss.csv"
    rows = [f"{r},{c},{v}" for r, row in enumerate(RSS_TABLE, 1) for c, v in enumerate(row, 1)]
    path.write_text("rank,cycle,value\n" + "\n".join(rows) + "\n")
    return path


def run(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_order_three_group_data(capsys, ex1_csv):
    code, out = run(capsys, ["order", str(ex1_csv), "--order", "X,Y,Z", "--methods", "exact,bounds,empirical"])
    assert code == EXIT_OK
    assert out["ordering"] == ["X", "Y", "Z"] and out["n"] == [12, 2, 11]
    assert out["denominator"] == "468"
    m = out["methods"]
    assert (m["exact"]["lower"]["count"], m["exact"]["upper"]["count"]) == ("44", "225")
    assert [m["bounds"][k]["count"] for k in ("ll", "lu", "ul", "uu")] == ["24", "98", "130", "248"]
    assert m["empirical"] == {"count": "98", "decimal": "0.3712", "denominator": "264"}
    assert set(m) == {"exact", "bounds", "empirical"}


def test_kj_profile(capsys, ex1_csv):
    code, out = run(capsys, ["order", str(ex1_csv), "--order", "X,Y,Z", "--methods", "kj-profile"])
    prof = out["methods"]["kj-profile"]
    assert code == EXIT_OK
    assert prof["minima"] == ["0", "44", "0"] and prof["maxima"] == ["70", "90", "65"]
    assert len(prof["lower"][1]) == 11


def test_missing_label(capsys, ex1_csv):
    code, out = run(capsys, ["order", str(ex1_csv), "--order", "X,Y,W"])
    assert code == EXIT_INVALID
    assert out["error"]["code"] == EXIT_INVALID


def test_duplicate_label(capsys, ex1_csv):
    code, _ = run(capsys, ["order", str(ex1_csv), "--order", "X,X,Z"])
    assert code == EXIT_INVALID


def test_missing_file(capsys, tmp_path):
    code, out = run(capsys, ["order", str(tmp_path / "nope.csv")])
    assert code == EXIT_INVALID and out["error"]["type"] == "FileNotFoundError"


def test_tie_rejected(capsys, tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("group,value\nA,1\nB,1\nC,2\n")
    code, out = run(capsys, ["order", str(path)])
    assert code == EXIT_INVALID and out["error"]["type"] == "TieError"
    code, out = run(capsys, ["order", str(path), "--ties", "epsilon:0.001", "--methods", "bounds"])
    assert code == EXIT_OK


def test_unknown_method(capsys, ex1_csv):
    code, _ = run(capsys, ["order", str(ex1_csv), "--methods", "magic"])
    assert code == EXIT_INVALID


def test_budget_exceeded(capsys, ex2_csv):
    code, out = run(capsys, ["order", str(ex2_csv), "--methods", "exact", "--budget", "10"])
    assert code == EXIT_BUDGET
    assert out["error"]["type"] == "BudgetExceeded"


def test_rss(capsys, rss_csv):
    code, out = run(capsys, ["rss", str(rss_csv)])
    assert code == EXIT_OK and out["denominator"] == "7776"
    m = out["methods"]
    got = [m["bounds"][k]["count"] for k in ("ll", "lu", "ul", "uu")]
    got += [m["algA"]["lower"]["count"], m["algA"]["upper"]["count"]]
    assert got == ["165", "594", "1024", "2674", "345", "1384"]


def test_rss_ragged(capsys, tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("rank,cycle,value\n1,1,1\n2,1,2\n3,1,3\n3,2,4\n")
    code, out = run(capsys, ["rss", str(path)])
    assert code == EXIT_INVALID and out["error"]["type"] == "ShapeError"


def test_scan(capsys, ex2_csv):
    code, out = run(capsys, ["scan", str(ex2_csv)])
    p = out["methods"]["permutations"]
    assert code == EXIT_OK
    assert p["min_h"]["ordering"] == ["X2", "X3", "X4", "X1"] and p["min_h"]["count"] == "2"
    assert p["max_h"]["ordering"] == ["X1", "X4", "X2", "X3"] and p["max_h"]["count"] == "58"


def test_vus(capsys, ex1_csv):
    code, out = run(capsys, ["vus", str(ex1_csv), "--order", "X,Y,Z"])
    assert code == EXIT_OK and out["methods"]["exact"]["upper"]["count"] == "225"


def test_output_file_is_deterministic(tmp_path, ex2_csv):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["order", str(ex2_csv), "--methods", ",".join(["bounds", "exact", "algA", "algB", "empirical", "perfect"])]
    assert main([*argv, "-o", str(a)]) == EXIT_OK
    assert main([*argv, "-o", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    out = json.loads(a.read_text())
    assert out["methods"]["algB"]["upper"] == {"count": "257", "decimal": "0.2040"}
