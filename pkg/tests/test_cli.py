import json
from fractions import Fraction

import pytest

from doubledimer import cli

from corpus import GRAPH_DIR


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,value", [("single_edge.graph", "3/2"), ("square.graph", "2"),
                                        ("grid4x4.graph", "36")])
def test_zd(capsys, name, value):
    code, out, _ = run(capsys, "zd", str(GRAPH_DIR / name))
    assert code == 0 and out.strip() == value


def test_zd_json_large(capsys):
    code, out, _ = run(capsys, "zd", "--json", str(GRAPH_DIR / "grid8x8_example.graph"))
    payload = json.loads(out)
    assert code == 0 and payload["det"] == "12988816" and "enumeration" not in payload


def test_zd_mismatch_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "zd_enumerate", lambda g, cap: Fraction(-1))
    code, out, _ = run(capsys, "zd", str(GRAPH_DIR / "square.graph"))
    assert code == 1 and out.startswith("MISMATCH")


def test_pr_split_and_pairing_agree(capsys):
    path = str(GRAPH_DIR / "square.graph")
    code, out, _ = run(capsys, "pr", "--json", path)
    a = json.loads(out)
    assert code == 0 and a["split"] == [2, 1, 1]
    code, out, _ = run(capsys, "pr", "--json", path, "--pairing", a["pairing"])
    b = json.loads(out)
    assert code == 0 and b["pr"] == a["pr"]


def test_pr_single_edge(capsys):
    code, out, _ = run(capsys, "pr", str(GRAPH_DIR / "single_edge.graph"))
    assert code == 0 and out.splitlines()[0] == "2/3"


def test_qmatrix(capsys):
    code, out, _ = run(capsys, "qmatrix", "--json", "--coloring", "BWBW")
    payload = json.loads(out)
    assert code == 0 and payload["routes_agree"]
    assert len(payload["rows"]) == 2
    code, out, _ = run(capsys, "qmatrix", "--coloring", "BWBWBWBW", "--pairing", "(1 8)(3 4)(5 2)(7 6)")
    assert code == 0 and out.count("Y[1,") == 6


@pytest.mark.parametrize("argv", [
    ["zd", "/nonexistent.graph"],
    ["pr", str(GRAPH_DIR / "square.graph"), "--split", "1,1"],
    ["pr", str(GRAPH_DIR / "square.graph"), "--split", "4,0,0"],
    ["qmatrix", "--coloring", "BBW"],
    ["qmatrix", "--coloring", "BWBW", "--pairing", "(1 3)(2"],
    ["verify", "--suite", "kuo", "--seed", "-1"],
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error")


def test_bad_graph_file(capsys, tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("v 1 B 0 0\nv 2 B 1 0\ne 1 2\nnodes 1 2\n")
    code, _, err = run(capsys, "zd", str(p))
    assert code == 2


@pytest.mark.parametrize("suite", ["kuo", "kasteleyn", "tripartite", "condense"])
def test_verify_suites_pass_and_are_deterministic(capsys, suite):
    code, first, _ = run(capsys, "verify", "--suite", suite, "--seed", "7", "--count", "3", "--json")
    assert code == 0
    code, second, _ = run(capsys, "verify", "--suite", suite, "--seed", "7", "--count", "3", "--json")
    assert first == second
    summary = json.loads(first.splitlines()[-1])
    assert summary["failures"] == 0 and summary["checks"] > 0


def test_verify_text_output(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "kuo", "--count", "2")
    assert code == 0
    assert out.splitlines()[-1] == "kuo: 2/2 passed (seed 0)"
