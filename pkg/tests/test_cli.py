from __future__ import annotations

import json
import subprocess
import sys

import pytest

from biasrep.cli import run
from biasrep.io import dumps

UNBALANCED_K3 = {
    "graph": {
        "nodes": ["1", "2", "3"],
        "edges": [{"id": "a", "ends": ["1", "2"]}, {"id": "b", "ends": ["2", "3"]}, {"id": "c", "ends": ["1", "3"]}],
    },
    "balanced": [],
}

GAIN_K3 = {
    "graph": UNBALANCED_K3["graph"],
    "group": {"kind": "field*", "field": "GF(5)"},
    "gains": {"a": "2", "b": "3", "c": "2"},
}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, data in {"k3": UNBALANCED_K3, "gain": GAIN_K3, "base": UNBALANCED_K3["graph"]}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(dumps(data))
        out[name] = str(p)
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    out["bad"] = str(bad)
    return out


def test_validate_example(capsys):
    assert run(["validate", "example-i58"]) == 0
    assert capsys.readouterr().out.strip() == "linear class: valid, 3 balanced circles"


def test_validate_failure(tmp_path, capsys):
    bad = {
        "graph": {"nodes": ["1", "2"], "edges": [{"id": x, "ends": ["1", "2"]} for x in "abc"]},
        "balanced": [["a", "b"], ["b", "c"]],
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    assert run(["validate", str(p)]) == 1
    assert "invalid" in capsys.readouterr().out


def test_search_gains_example(capsys):
    assert run(["search-gains", "example-i58", "--group", "Z2"]) == 1
    assert capsys.readouterr().out.strip() == "no gain realization in Z2"


def test_search_gains_success(files, capsys):
    assert run(["search-gains", files["k3"], "--group", "Z3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["group"] == "Z3" and set(out["gains"]) == {"a", "b", "c"}


def test_rank_frame(files, capsys):
    assert run(["rank", "frame", files["k3"], "--edges", "a,b,c"]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert run(["rank", "lift", files["k3"], "--edges", "a,b", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["rank"] == 2


def test_circuits_closure_bcl(files, capsys):
    assert run(["circuits", "frame", files["k3"], "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["circuits"] == []
    assert run(["circuits", "lift", "example-i58"]) == 0
    assert "{e12, e34, f12, f34}" in capsys.readouterr().out
    assert run(["closure", "lift0", files["k3"], "--edges", "a,b,c", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["closure"] == ["a", "b", "c", "e0"]
    assert run(["bcl", "example-i58", "--edges", "e12,e23,e34"]) == 0
    assert capsys.readouterr().out.strip() == "{e12, e23, e34, e41}"


def test_represent_and_reconstruct(files, tmp_path, capsys):
    assert run(["represent", "menelaean", files["gain"], "--json"]) == 0
    rep = capsys.readouterr().out
    p = tmp_path / "rep.json"
    p.write_text(rep)
    assert run(["reconstruct", str(p), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["balanced"] == []
    assert run(["represent", "cevian", files["gain"]]) == 0
    assert capsys.readouterr().out.startswith("cevian over GF(5)")


def test_additive_represent_and_reconstruct(files, tmp_path, capsys):
    add = dict(GAIN_K3, group={"kind": "field+", "field": "Q"}, gains={"a": "1", "b": "2", "c": "3"})
    g = tmp_path / "add.json"
    g.write_text(json.dumps(add))
    for kind in ("ortho", "affino"):
        assert run(["represent", kind, str(g), "--json"]) == 0
        p = tmp_path / f"{kind}.json"
        p.write_text(capsys.readouterr().out)
        assert run(["reconstruct", str(p), "--base", files["base"], "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["balanced"] == [["a", "b", "c"]]
    assert run(["represent", "affino", str(g), "--projective"]) == 0
    assert "e0: (1, 0, 0, 0)" in capsys.readouterr().out


def test_verify_corpus_and_report(tmp_path, capsys):
    report = tmp_path / "r.jsonl"
    assert run(["verify", "menelaean", "--count", "4", "--seed", "3", "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("2/2 passed")
    assert len(report.read_text().splitlines()) == 2


def test_verify_single_input(files, capsys):
    assert run(["verify", "all", "--input", files["gain"], "--json"]) == 0
    rows = [json.loads(x) for x in capsys.readouterr().out.splitlines() if x]
    assert [r["tag"] for r in rows] == ["menelaean", "cevian", "canonical"]


def test_dowling_and_example(capsys):
    assert run(["dowling", "3", "--field", "GF(3)"]) == 0
    assert "9 points, rank 3" in capsys.readouterr().out
    assert run(["example-i58", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["balanced"]) == 3


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["frobnicate"], "invalid choice"),
        (["validate", "BAD"], "cannot read"),
        (["dowling", "3", "--field", "GF(4)"], "GF(4)"),
        (["verify", "pythagorean"], "unknown theorem tag"),
        (["search-gains", "example-i58"], "--group"),
    ],
)
def test_input_errors_exit_2(argv, needle, capsys):
    assert run(argv) == 2
    assert needle in capsys.readouterr().err


def test_malformed_json_exit_2(files, capsys):
    assert run(["validate", files["bad"]]) == 2
    assert "malformed JSON" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "biasrep", "validate", "example-i58"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "3 balanced circles" in proc.stdout
