import io
import json
from fractions import Fraction

import pytest

from alphaspectra.cli import main, parse_alpha, read_graph, read_table1_csv, table1
from alphaspectra.families import bstar3
from alphaspectra.graph import Graph, to_graph6


def test_parse_alpha_is_exact():
    assert parse_alpha("0.1") == Fraction(1, 10)
    assert parse_alpha("1/3") == Fraction(1, 3)


def test_read_graph_sources(monkeypatch):
    assert read_graph("bstar3:n=16,d=9") == bstar3(16, 9)
    assert read_graph("thetasmall").m == 5
    assert read_graph("C~").m == 6
    monkeypatch.setattr("sys.stdin", io.StringIO("C~\n"))
    assert read_graph("-").m == 6


def test_family(capsys, tmp_path):
    out = tmp_path / "family.json"
    assert main(["family", "bstar3:n=16,d=9", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "n = 16, m = 17, diameter = 9" in printed
    data = json.loads(out.read_text())
    assert data["spec"] == "bstar3:n=16,d=9"
    assert data["roles"]["w1"] == 0


def test_radius(capsys):
    assert main(["radius", "C~", "--alpha", "0.5", "--perron"]) == 0
    printed = capsys.readouterr().out
    assert "rho_1/2 = 3.000000000000" in printed
    assert "perron = " in printed


def test_charpoly(capsys, tmp_path):
    out = tmp_path / "phi.json"
    assert main(["charpoly", "path:n=2", "--alpha", "0", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["coefficients"] == ["-1/1", "0/1", "1/1"]
    assert "largest root" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["radius", "C~", "--alpha", "2"],
        ["radius", "C~", "--alpha", "half"],
        ["radius", "A!", "--alpha", "0.5"],
        ["radius", to_graph6(Graph.from_edges(4, [(0, 1), (2, 3)])), "--alpha", "0.5"],
        ["family", "theta3:s=1"],
        ["family", "bstar3:n=16,d=x"],
        ["verify-appendix", "--zmax", "0"],
        ["enumerate", "--n", "3", "--d", "2", "--cyclomatic", "1"],
        ["enumerate", "--n", "20", "--d", "3", "--cyclomatic", "1"],
        ["table1", "--alphas", "0,1.5"],
        [],
    ],
)
def test_invalid_input_exits_2(argv):
    assert main(argv) == 2


def test_empty_space_exits_1():
    assert main(["enumerate", "--n", "4", "--d", "1", "--cyclomatic", "2", "--alpha", "0.5"]) == 1


def test_enumerate_with_snapshot(capsys, tmp_path):
    snapshot, out = tmp_path / "u6.g6", tmp_path / "u6.json"
    argv = ["enumerate", "--n", "6", "--d", "3", "--cyclomatic", "1", "--alpha", "0.5"]
    assert main([*argv, "--snapshot", str(snapshot), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert len(snapshot.read_text().split()) == report["census"]
    assert report["alpha"] == "1/2"
    assert "maximiser" in capsys.readouterr().out


def test_compare(capsys, tmp_path):
    out = tmp_path / "compare.json"
    argv = ["compare", "bstar3:n=16,d=9", "bstar5:n=16,d=9", "--alpha", "0"]
    assert main([*argv, "--out", str(out)]) == 0
    assert "rho(first) < rho(second)" in capsys.readouterr().out
    assert json.loads(out.read_text())["ordering"] == -1
    assert main(["compare", "C~", "C~", "--alpha", "0.5"]) == 0
    assert "indistinguishable" in capsys.readouterr().out


def test_table1_csv(tmp_path):
    out = tmp_path / "table1.csv"
    assert main(["table1", "--alphas", "0,0.5", "--out", str(out)]) == 0
    with open(out, encoding="utf-8", newline="") as f:
        rows = read_table1_csv(f)
    assert rows == table1(["0", "0.5"])
    assert [r.dr for r in rows] == pytest.approx([-0.00353, 0.00302], abs=2e-5)


def test_table1_to_stdout(capsys):
    assert main(["table1", "--alphas", "0.4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "alpha,rho_b3,rho_b5,dr"
    assert lines[1].startswith("0.4,")


def test_verify_appendix(capsys):
    assert main(["verify-appendix", "--zmax", "1"]) == 0
    printed = capsys.readouterr().out
    assert "16/16 identities hold" in printed
    assert "reading f11=f21: validates" in printed


def test_verify_lemmas_negative_control(tmp_path):
    out = tmp_path / "lemmas.json"
    argv = ["verify-lemmas", "--seed", "5", "--instances", "40", "--negative-control"]
    assert main([*argv, "--out", str(out)]) == 1
    suites = {s["name"]: s for s in json.loads(out.read_text())["suites"]}
    assert suites["graft"]["violations"]
