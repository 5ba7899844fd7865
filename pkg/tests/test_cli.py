import io
import json

import pytest

from perfectmat.cli import InputError, load_document, main, validate
from perfectmat.families import FIG1, corpus_entry


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


@pytest.fixture
def doc_file(tmp_path):
    def write(doc):
        p = tmp_path / "m.json"
        p.write_text(json.dumps(doc), encoding="utf-8")
        return str(p)

    return write


def fig1_doc(**extra):
    return {"type": "matrix", "rows": [[str(x) for x in r] for r in FIG1], **extra}


def test_hvector_goldens(capsys):
    for name, h in [("fig1-natural", [1, 3, 5, 5]), ("r5n8", [1, 3, 6, 9, 12, 11]),
                    ("interesting10", [1, 3, 6, 10, 13, 15, 14, 6]), ("r2n8", [1, 2, 3, 4, 5, 6, 3])]:
        assert run_json(capsys, "hvector", "--corpus", name) == {"h": h}


def test_bases_from_file(capsys, doc_file):
    data = run_json(capsys, "bases", doc_file(fig1_doc()))
    assert (data["n"], data["rank"], len(data["bases"])) == (6, 3, 14)
    assert data["bases"][0] == [1, 2, 3]


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"type": "uniform", "r": 2, "n": 4})))
    assert run_json(capsys, "circuits", "-") == {
        "circuits": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
    }


def test_cocircuits(capsys):
    data = run_json(capsys, "cocircuits", "--corpus", "u-2-4")
    assert len(data["cocircuits"]) == 4 and all(len(c) == 3 for c in data["cocircuits"])


def test_classify(capsys):
    data = run_json(capsys, "classify", "--corpus", "fig1-natural")
    assert data["perfect"] is False and data["counterexample"] == [2, 5, 6]
    assert {b["label"]: b["class"] for b in data["bases"] if b["class"] != "perfect"} == {
        "56^2": "deficient", "56^3": "abundant"
    }
    full = run_json(capsys, "classify", "--corpus", "fig1-reordered", "--strategy", "all")
    assert full["perfect"] is True and len(full["bases"]) == 14


def test_classify_r5n8_labels_zero_based(capsys):
    data = run_json(capsys, "classify", "--corpus", "r5n8", "--strategy", "all")
    classes = {b["label"]: b["class"] for b in data["bases"]}
    assert classes["57^{24}_0"] == "deficient"
    assert classes["57^{34}_0"] == "abundant"
    one = run_json(capsys, "classify", "--corpus", "r5n8", "--strategy", "all", "--label-base", "1")
    assert "68^{35}_1" in {b["label"] for b in one["bases"]}


def test_internal_order_formats(capsys):
    code, dot, _ = run(capsys, "internal-order", "--corpus", "fig1-natural")
    assert code == 0 and dot.startswith("digraph")
    data = run_json(capsys, "internal-order", "--corpus", "fig1-natural", "--format", "json")
    assert len(data["nodes"]) == 14


def test_perfect_search(capsys):
    data = run_json(capsys, "perfect-search", "--corpus", "fig1-natural", "--quiet")
    assert data["found"] is True and data["ordering"] == [2, 3, 1, 4, 5, 6]
    assert data["tested"] == 145


def test_perfect_search_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "perfect-search", "--corpus", "k4")
    assert code == 0 and json.loads(out)["found"] is False
    assert err.strip().splitlines()[-1] == "tested 720"


def test_budget_exit_code(capsys):
    code, out, err = run(capsys, "perfect-search", "--corpus", "k4", "--budget", "10", "--quiet")
    assert code == 4 and out == "" and "10" in err


def test_stanley(capsys):
    data = run_json(capsys, "stanley", "--corpus", "interesting10")
    assert data["verdict"] == "pass" and data["o"] == data["h"]


def test_minor_check_all(capsys):
    data = run_json(capsys, "minor-check", "--corpus", "fig1-reordered")
    assert data["contraction"]["status"] == "pass"
    assert [d["status"] for d in data["deletions"]] == ["pass"] * 3


def test_minor_check_sets(capsys):
    data = run_json(capsys, "minor-check", "--corpus", "fig1-reordered", "--contract", "6", "--delete", "4")
    assert data["status"] == "pass"
    data = run_json(capsys, "minor-check", "--corpus", "fig1-reordered", "--delete", "1")
    assert data["status"] == "unmet"
    data = run_json(capsys, "minor-check", "--corpus", "fig1-natural")
    assert data["contraction"]["status"] == "unmet"


def test_family_round_trip(capsys, doc_file):
    doc = run_json(capsys, "family", "mr", "3")
    validate(doc)
    assert load_document(doc).matroid == corpus_entry("mr3").matroid
    assert run_json(capsys, "hvector", doc_file(doc)) == {"h": [1, 3, 5, 4]}
    nnd = run_json(capsys, "family", "nnd", "3")
    assert load_document(nnd).matroid == corpus_entry("interesting10").matroid
    assert run_json(capsys, "family", "uniform", "2", "5") == {"type": "uniform", "r": 2, "n": 5}


def test_family_bad_parameters(capsys):
    assert run(capsys, "family", "nnd", "4", "1")[0] == 2
    assert run(capsys, "family", "uniform", "3", "2")[0] == 2


def test_order_and_modifiers(capsys, doc_file):
    reordered = run_json(capsys, "classify", doc_file(fig1_doc(order=[2, 3, 1, 4, 5, 6])))
    assert reordered["perfect"] is True
    deleted = run_json(capsys, "bases", doc_file(fig1_doc(modifiers=[{"op": "delete", "set": [4]}])))
    assert deleted["n"] == 5
    dualled = run_json(capsys, "hvector", doc_file(fig1_doc(modifiers=[{"op": "dual"}])))
    assert sum(dualled["h"]) == 14


@pytest.mark.parametrize("doc", [
    {"type": "matrix", "rows": [["0.5"]]},
    {"type": "matrix"},
    {"type": "bases", "n": 3},
    {"type": "wat"},
    {"type": "bases", "n": 2, "bases": [[1], [3]]},
    {"type": "matrix", "rows": [["1", "0"]], "order": [1, 1]},
    {"type": "uniform", "r": 3, "n": 2},
    {"type": "matrix", "rows": [["1", "0"]], "modifiers": [{"op": "delete", "set": [9]}]},
    {"type": "graph", "vertices": 2, "edges": [[1, 3]]},
])
def test_schema_and_input_errors(capsys, doc_file, doc):
    code, out, err = run(capsys, "bases", doc_file(doc))
    assert code == 2 and out == "" and err.startswith("error:")


def test_unreadable_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert run(capsys, "bases", str(bad))[0] == 2
    assert run(capsys, "bases", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bases")[0] == 2
    assert run(capsys, "bases", "--corpus", "nope")[0] == 2


def test_axiom_error_exit_code(capsys, doc_file):
    code, _, err = run(capsys, "bases", doc_file({"type": "bases", "n": 4, "bases": [[1, 2], [3, 4]]}))
    assert code == 3 and "not a matroid" in err


def test_validate_raises_input_error():
    with pytest.raises(InputError):
        validate({"type": "matrix", "rows": [[1]]})


def test_conjecture_probes(capsys):
    data = run_json(capsys, "conjecture-probe", "nnd", "--max-n", "4")
    assert data["holds"] is True and [c["n"] for c in data["cases"]] == [3, 4]
    data = run_json(capsys, "conjecture-probe", "del-reorder", "--max-rank", "3")
    assert data["probe"] == "del-reorder" and data["cases"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "classify", "--corpus", "delminor7", "--strategy", "all")
    second = run(capsys, "classify", "--corpus", "delminor7", "--strategy", "all")
    assert first == second and first[1].endswith("\n")
