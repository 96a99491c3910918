import json

import pytest

from artifact.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def tri_file(tmp_path, double):
    p = tmp_path / "double.json"
    p.write_text(double.to_json())
    return p


@pytest.fixture
def d2_file(tmp_path, tri_file):
    out = tmp_path / "d2.json"
    assert main(["build-d2", str(tri_file), "--genus", "0", "--weight-cap", "2", "--output", str(out)]) == EXIT_OK
    return out


def test_validate(tri_file, capsys):
    assert main(["validate", str(tri_file)]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "none.json")]) == EXIT_INPUT


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[[")
    assert main(["validate", str(p)]) == EXIT_INPUT


def test_usage_error():
    assert main(["enumerate"]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE


def test_enumerate_stdout_is_json(tri_file, capsys):
    assert main(["enumerate", str(tri_file), "--index", "1", "--genus", "0", "--weight-cap", "2"]) == EXIT_OK
    out = capsys.readouterr()
    doc = json.loads(out.out)
    assert all(s["exceptional"] for s in doc)
    assert "index-1 surfaces" in out.err


def test_classify_loop(capsys):
    assert main(["classify-loop", "3,1,2,2,1,3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["class"] == "Dodecagon"
    assert main(["classify-loop", "1,2,3"]) == EXIT_USAGE
    assert main(["classify-loop", "1,1,1,1,1,1"]) == EXIT_INPUT


def test_build_and_export_roundtrip(tmp_path, d2_file):
    again = tmp_path / "again.json"
    assert main(["export", str(d2_file), "--output", str(again)]) == EXIT_OK
    assert again.read_bytes() == d2_file.read_bytes()
    dot = tmp_path / "d2.dot"
    assert main(["export", str(d2_file), "--format", "dot", "--output", str(dot)]) == EXIT_OK
    assert dot.read_text().startswith("digraph")


def test_build_budget_exit_code(tmp_path, tri_file):
    out = tmp_path / "partial.json"
    code = main(["build-d2", str(tri_file), "--genus", "0", "--weight-cap", "2", "--budget", "1",
                 "--output", str(out)])
    assert code == EXIT_BUDGET
    assert json.loads(out.read_text())["provenance"]["complete"] is False


def test_query_incompressible(d2_file, capsys):
    doc = json.loads(d2_file.read_text())
    v = next(x["id"] for x in doc["vertices"] if x["index"] == 0)
    assert main(["query", "incompressible", str(d2_file), "--vertex", v]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["status"] == "Incompressible"


def test_query_wrong_vertex(d2_file):
    assert main(["query", "incompressible", str(d2_file), "--vertex", "nope"]) == EXIT_INPUT
    assert main(["query", "incompressible", str(d2_file)]) == EXIT_USAGE


def test_query_stabilized_path(d2_file, capsys):
    from artifact.derived import enumerate_splitting_paths, load_json
    D = load_json(d2_file.read_text())
    path = enumerate_splitting_paths(D, 0)[0]
    assert main(["query", "stabilized", str(d2_file), "--path", ",".join(path)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["status"] in ("Irreducible", "Stabilized")


def test_stable_genus_needs_gmax(d2_file):
    assert main(["query", "stable-genus", str(d2_file), "--path", "e0", "--path", "e1"]) == EXIT_USAGE


def test_not_a_complex(tri_file):
    assert main(["export", str(tri_file)]) == EXIT_INPUT
