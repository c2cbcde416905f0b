"""The command line: verbs, exit codes, and the JSON it emits."""

import json
from pathlib import Path

import pytest

from arboreal.cli import main
from arboreal.io import load_json, parse_labelled, parse_map, serialize_map, to_json
from arboreal.selftest import CriterionResult

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fix(name):
    return str(FIXTURES / name)


def test_check_accepts_the_fixture_map(capsys):
    code, out, err = run(capsys, "check", "--input", fix("seven_taxa_map.json"))
    assert code == 0
    assert json.loads(out)["verdict"] == "arboreal"
    assert err == ""


def test_check_reports_violations_with_witness(capsys, tmp_path):
    bad = tmp_path / "pi.json"
    values = {("w", "x"): "A", ("x", "y"): "A", ("y", "z"): "A",
              ("w", "y"): "B", ("w", "z"): "B", ("x", "z"): "B"}
    from arboreal import SymbolicMap, TaxonSet

    bad.write_text(to_json(serialize_map(SymbolicMap.build(TaxonSet.of("wxyz"), values))))
    code, out, _ = run(capsys, "check", "--input", str(bad))
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "pi"
    assert sorted(doc["witness"]) == ["w", "x", "y", "z"]


def test_check_reads_triangular_too(capsys):
    code, out, _ = run(capsys, "check", "--input", fix("seven_taxa_map.tri"))
    assert code == 0 and json.loads(out)["verdict"] == "arboreal"


def test_explain_then_evaluate_round_trips(capsys, tmp_path):
    explained = tmp_path / "ln.json"
    code, _, _ = run(
        capsys, "explain", "--input", fix("seven_taxa_map.json"), "--output", str(explained)
    )
    assert code == 0
    ln = parse_labelled(load_json(explained.read_text()))
    code, out, _ = run(capsys, "evaluate", "--input", str(explained))
    assert code == 0
    d = parse_map(load_json(out))
    assert d == parse_map(load_json(Path(fix("seven_taxa_map.json")).read_text()))
    assert {v for v, _ in ln.labels}


def test_explain_refuses_bad_maps(capsys, tmp_path):
    bad = tmp_path / "c4.json"
    values = {("w", "x"): "A", ("x", "y"): "A", ("y", "z"): "A", ("w", "z"): "A"}
    from arboreal import SymbolicMap, TaxonSet

    bad.write_text(to_json(serialize_map(SymbolicMap.build(TaxonSet.of("wxyz"), values))))
    code, out, _ = run(capsys, "explain", "--input", str(bad))
    assert code == 1
    assert json.loads(out)["verdict"] == "not-ptolemaic"


def test_normalize_is_idempotent(capsys):
    code, once, _ = run(capsys, "normalize", "--input", fix("seven_taxa_network.json"))
    assert code == 0
    twice_in = Path(fix("seven_taxa_network.json"))
    assert parse_labelled(load_json(once)) == parse_labelled(load_json(twice_in.read_text()))


def test_represent_builds_a_network(capsys):
    code, out, _ = run(capsys, "represent", "--input", fix("two_quads.json"))
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"network", "shared_ancestry_graph"}
    assert doc["shared_ancestry_graph"]["taxa"] == list("123456")


def test_represent_arboreal_flags_non_ptolemaic_graphs(capsys):
    code, out, _ = run(capsys, "represent", "--arboreal", "--input", fix("c4.json"))
    assert code == 1
    doc = json.loads(out)
    assert doc["ptolemaic"] is False
    assert doc["witness"]["kind"] == "hole"
    assert sorted(doc["witness"]["vertices"]) == ["w", "x", "y", "z"]


def test_represent_arboreal_succeeds_on_the_quads(capsys):
    code, out, _ = run(capsys, "represent", "--arboreal", "--input", fix("two_quads.json"))
    assert code == 0
    assert "network" in json.loads(out)


def test_sag_inverts_represent(capsys, tmp_path):
    rep = tmp_path / "rep.json"
    run(capsys, "represent", "--input", fix("two_quads.json"), "--output", str(rep))
    netdoc = json.loads(rep.read_text())["network"]
    netfile = tmp_path / "net.json"
    netfile.write_text(to_json(netdoc))
    code, out, _ = run(capsys, "sag", "--input", str(netfile))
    assert code == 0
    assert json.loads(out) == json.loads(Path(fix("two_quads.json")).read_text())


def test_ptolemaic_verdicts(capsys):
    code, out, _ = run(capsys, "ptolemaic", "--input", fix("two_quads.json"))
    assert code == 0 and json.loads(out)["ptolemaic"] is True
    code, out, _ = run(capsys, "ptolemaic", "--input", fix("c4.json"))
    assert code == 1
    doc = json.loads(out)
    assert doc["ptolemaic"] is False
    assert doc["witness"]["kind"] == "hole"


def test_ecc_reports_size_and_cover(capsys):
    code, out, _ = run(capsys, "ecc", "--input", fix("two_quads.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 2
    assert sorted(doc["cover"]) == [["1", "2", "3", "4"], ["3", "4", "5", "6"]]


def test_dot_output_is_graphviz(capsys):
    code, out, _ = run(capsys, "explain", "--input", fix("seven_taxa_map.json"), "--dot")
    assert code == 0
    assert out.startswith("digraph ")


def test_gen_is_deterministic(capsys):
    code, one, _ = run(capsys, "gen", "--seed", "5", "--count", "2", "--max-n", "6")
    assert code == 0
    code, two, _ = run(capsys, "gen", "--seed", "5", "--count", "2", "--max-n", "6")
    assert one == two
    doc = json.loads(one)
    assert doc["seed"] == 5 and len(doc["instances"]) == 2
    inst = doc["instances"][0]
    assert {"labelled_network", "map"} <= set(inst)


def test_selftest_formats_one_line_per_criterion(capsys, monkeypatch):
    fakes = [
        CriterionResult("always-green", True, "ok", 0.01),
        CriterionResult("always-red", False, "boom", 0.02),
    ]
    monkeypatch.setattr("arboreal.cli.run_all", lambda budget=None: fakes)
    code, out, _ = run(capsys, "selftest")
    assert code == 1
    lines = out.strip().splitlines()
    assert lines[0].startswith("PASS always-green")
    assert lines[1].startswith("FAIL always-red")
    assert "1/2" in lines[-1]


def test_selftest_rejects_a_bad_budget(capsys, monkeypatch):
    monkeypatch.setenv("ARBOREAL_SELFTEST_BUDGET", "soon")
    code, _, err = run(capsys, "selftest")
    assert code == 2
    assert err.startswith("error:")


def test_missing_input_is_an_input_error(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--input", str(tmp_path / "nope.json"))
    assert code == 2
    assert err.startswith("error:")


def test_malformed_json_is_an_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    code, _, err = run(capsys, "check", "--input", str(bad))
    assert code == 2
    assert "line 1" in err
