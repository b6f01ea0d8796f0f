import json

import pytest

from fptcc.cli import main
from fptcc.io import validate_report


@pytest.fixture
def instance(tmp_path):
    path = tmp_path / "g.txt"
    assert main(["gen", "--n", "8", "--bad-k", "1", "--clusters", "2", "--flip-prob", "0.1",
                 "--missing-frac", "0.5", "--seed", "3", "--out", str(path),
                 "--truth-out", str(tmp_path / "truth.txt")]) == 0
    return path


def test_solve_writes_valid_json(instance, tmp_path, capsys):
    out = tmp_path / "r.json"
    clus = tmp_path / "c.txt"
    assert main(["solve", "--input", str(instance), "--json-out", str(out),
                 "--clustering-out", str(clus), "--exact-max-n", "10"]) == 0
    data = json.loads(out.read_text())
    validate_report(data)
    assert json.loads(capsys.readouterr().out) == data
    assert data["mistakes"]["total"] >= data["exact_opt"]
    assert main(["check", "--input", str(instance), "--clustering", str(clus)]) == 0
    assert json.loads(capsys.readouterr().out) == data["mistakes"]


def test_exact_and_check_truth(instance, tmp_path, capsys):
    assert main(["exact", "--input", str(instance)]) == 0
    exact = json.loads(capsys.readouterr().out)
    assert main(["check", "--input", str(instance), "--clustering",
                 str(tmp_path / "truth.txt")]) == 0
    truth = json.loads(capsys.readouterr().out)
    assert exact["mistakes"]["total"] <= truth["total"]


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p cc 3\n0 0 +\n")
    assert main(["solve", "--input", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["solve", "--input", str(tmp_path / "absent.txt")]) == 2


def test_exit_code_budget(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("p cc 6\n0 1 +\n2 3 +\n4 5 +\n")
    assert main(["solve", "--input", str(g), "--max-k", "1"]) == 3
    assert main(["exact", "--input", str(g), "--max-n", "4"]) == 3


def test_exit_code_config(instance):
    assert main(["solve", "--input", str(instance), "--delta", "1/5"]) == 2


def test_check_rejects_incomplete_clustering(instance, tmp_path):
    c = tmp_path / "c.txt"
    c.write_text("0 1 2\n")
    assert main(["check", "--input", str(instance), "--clustering", str(c)]) == 2


def test_bench(tmp_path, capsys):
    suite = tmp_path / "suite"
    suite.mkdir()
    for s in range(3):
        assert main(["gen", "--n", "6", "--bad-k", "1", "--flip-prob", "0.2",
                     "--missing-frac", "0.5", "--seed", str(s),
                     "--out", str(suite / f"i{s}.txt")]) == 0
    out = tmp_path / "bench.json"
    assert main(["bench", "--suite", str(suite), "--json-out", str(out),
                 "--csv-out", str(tmp_path / "bench.csv")]) == 0
    data = json.loads(out.read_text())
    assert data["aggregate"]["count"] == 3
    assert data["aggregate"]["below_exact"] == 0
    assert (tmp_path / "bench.csv").read_text().startswith("instance,")
    assert main(["bench", "--suite", str(tmp_path / "empty_dir_missing")]) == 2
