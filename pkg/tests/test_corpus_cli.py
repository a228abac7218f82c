import copy
import json
from importlib import resources

import jsonschema
import pytest

from surfalg.cli import main
from surfalg.corpus import SpecError, corpus, corpus_names, corpus_spec, load_doc

REPORT_SCHEMA = json.loads(resources.files("surfalg").joinpath("schemas", "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def write(tmp_path, doc, name="spec.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_corpus_entries_validate_and_name_themselves():
    names = corpus_names()
    assert len(names) >= 50
    for s in corpus():
        assert s.name == s.path.split("/")[-1][:-5]
    assert {s.name for s in corpus("bimodule")} == {"disc_2_2", "surface_2v_2_2_b1", "surface_2v_1_5_b1"}


def test_build_report(capsys):
    code, rep, _ = run(capsys, "build", "Q2A_2_1")
    assert code == 0
    jsonschema.validate(rep, REPORT_SCHEMA)
    r = rep["results"]
    assert r["dimension"] == 20 and r["symmetric"]
    assert sum(map(sum, r["cartan"])) == 20 and r["radical_layers"][0] == 2
    assert "timing" not in rep
    assert rep["inputs"][0]["sha256"] == corpus_spec("Q2A_2_1").sha256


def test_reports_are_deterministic(capsys, tmp_path):
    a = tmp_path / "a.json"
    assert main(["iso", "A_2_1_0", "A_2_1_1", "--out", str(a)]) == 1
    first = a.read_bytes()
    assert main(["iso", "A_2_1_0", "A_2_1_1", "--out", str(a)]) == 1
    assert a.read_bytes() == first
    rep = json.loads(a.read_text())
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["results"]["result"] == "NOT-ISO"
    assert rep["results"]["certificate"]["reason"] == "exhausted"


def test_timing_flag(capsys):
    code, rep, _ = run(capsys, "build", "A_2_1_0", "--timing")
    assert code == 0 and rep["timing"]["seconds"] >= 0


def test_iso_witness_output(capsys):
    code, rep, _ = run(capsys, "iso", "Q2B3_4_1_1", "Q2B3_4_1_0")
    assert code == 0
    w = rep["results"]["witness"]
    assert w["sigma"] == ["1", "2"] and w["bijective"] is not False
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_syzygy_command(capsys):
    code, rep, _ = run(capsys, "syzygy", "Q2A_2_1", "--module", "S_2")
    assert code == 0
    r = rep["results"]
    assert r["verdict"] == "PERIOD 4"
    assert [s["dim"] for s in r["steps"]][:4] == [7, 5, 7, 1]


@pytest.mark.parametrize("argv", [["syzygy", "Q2A_2_1", "--module", "X_1"],
                                  ["syzygy", "Q2A_2_1", "--module", "S_9"],
                                  ["build", "no_such_entry"],
                                  ["iso", "A_2_1_0", "A_2_1_0_gf3"],
                                  ["build"],
                                  ["syzygy", "Q2A_2_1", "--steps", "0"]])
def test_input_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_bad_spec_files(capsys, tmp_path):
    assert main(["build", write(tmp_path, "{not json")]) == 2
    base = copy.deepcopy(corpus_spec("surface_2v_1_4_b0").doc)
    bad = copy.deepcopy(base)
    bad["weights"]["m"]["alpha"] = 0
    assert main(["build", write(tmp_path, bad)]) == 2
    bad = copy.deepcopy(base)
    bad["f"] = [["alpha", "beta"], ["eta", "gamma"]]
    assert main(["build", write(tmp_path, bad)]) == 2
    bad = copy.deepcopy(base)
    bad["family"] = "A"
    assert main(["build", write(tmp_path, bad)]) == 2
    assert main(["build", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SpecError):
        load_doc({"schema": "surfalg-spec/1", "field": "GF(2)", "family": "A",
                  "params": {"m": 2, "c": 1}}).presentation()


def test_degree_cap_exit_3(capsys, tmp_path):
    doc = copy.deepcopy(corpus_spec("A_2_1_0").doc)
    doc["options"] = {"degree_cap": 3}
    code, rep, err = run(capsys, "build", write(tmp_path, doc))
    assert code == 3 and "degree cap" in err
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_budget_exit_4(capsys, monkeypatch):
    assert main(["iso", "Q2B3_4_1_1", "Q2B3_4_1_0", "--budget", "2"]) == 4
    capsys.readouterr()
    monkeypatch.setenv("SURFALG_BUDGET", "2")
    code, rep, _ = run(capsys, "iso", "Q2B3_4_1_1", "Q2B3_4_1_0")
    assert code == 4 and rep["results"]["certificate"]["budget"] == 2


def test_verify_paper_suite(capsys):
    code, rep, _ = run(capsys, "verify-paper", "--suite", "dims")
    assert code == 0 and not rep["results"]["failed"]
    jsonschema.validate(rep, REPORT_SCHEMA)
