import json
from pathlib import Path

import pytest

from gluing.cli import UnknownCommand, emit_report, main, run
from gluing.workspace import DanglingReference, ParseError, ValidationError, load_workspace, parse_workspace

SMALL = Path(__file__).resolve().parent.parent / "workspaces" / "small.json"


@pytest.fixture(scope="module")
def ws():
    return load_workspace(SMALL)


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_workspace_loads(ws):
    assert set(ws.algebras) >= {"T", "R", "K"}
    assert ws.algebra("T").dim == 3
    assert ws.algebra("example/ring").dim == 8
    assert ws.modules["S1r"].algebra.same_as(ws.algebra("T").opposite)


def test_parse_error_names_the_row():
    doc = json.loads(SMALL.read_text())
    doc["algebras"]["K"]["structure_constants"] = [[1, 0]]
    with pytest.raises(ParseError, match=r"structure_constants row 0"):
        parse_workspace(doc)


def test_dangling_reference():
    doc = json.loads(SMALL.read_text())
    doc["modules"]["S1"]["algebra"] = "missing"
    with pytest.raises(DanglingReference):
        parse_workspace(doc)


def test_scenario_with_undeclared_class():
    doc = json.loads(SMALL.read_text())
    doc["scenarios"]["glue_e1"]["u_prime"] = "nowhere"
    with pytest.raises(DanglingReference, match="nowhere"):
        parse_workspace(doc)


def test_unknown_section_rejected():
    with pytest.raises(ParseError):
        parse_workspace({"algebras": {}, "surprise": {}})


def test_unknown_command(ws):
    with pytest.raises(UnknownCommand):
        run(ws, "frobnicate")


def test_usage_errors_exit_three(capsys):
    code, out, err = call(capsys, "frobnicate", "--workspace", str(SMALL))
    assert code == 3 and "unknown command" in err and out == ""
    code, _, err = call(capsys, "ext", "--workspace", str(SMALL), "--source", "S1")
    assert code == 3 and "--target" in err
    code, _, _ = call(capsys, "glue")
    assert code == 3


def test_wrong_category_is_a_validation_error(ws):
    with pytest.raises(ValidationError):
        run(ws, "tor", {"source": "S1", "target": "S2"})


def test_ext_and_tor(ws):
    rep, code = run(ws, "ext", {"source": "S1", "target": "S2"})
    assert code == 0 and rep["dim_projective"] == rep["dim_injective"] == 1
    rep, code = run(ws, "tor", {"source": "S1r", "target": "S1", "degree": 0})
    assert code == 0 and rep["balanced"]


def test_check_algebra_and_enumerate(ws):
    rep, code = run(ws, "check-algebra")
    assert code == 0 and all(v["valid"] for v in rep["algebras"].values())
    rep, code = run(ws, "enumerate", {"algebra": "T", "bound": 3})
    assert code == 0 and len(rep["members"]) == 3


def test_condition_p_commands(ws):
    rep, code = run(ws, "condition-p", {"morita": "example"})
    assert code == 0
    rep, _ = run(ws, "condition-p", {"algebra": "R", "idempotent": "0"})
    assert rep["holds"] is False


def test_output_is_deterministic(capsys):
    argv = ("glue", "--workspace", str(SMALL), "--scenario", "glue_e1", "--format", "structured")
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv)
    assert first == second
    report = json.loads(first)
    assert report["schema_version"] == 1 and report["exit_code"] == 0


def test_text_format_has_hypothesis_panel(ws):
    rep, _ = run(ws, "glue", {"scenario": "glue_e1"})
    text = emit_report(rep, "text")
    assert text.startswith("command: glue\nschema_version: 1\nexit_code: 0")
    assert "== hypothesis panel ==" in text
    assert json.loads(emit_report(rep, "structured")) == rep


def test_glue_without_condition_p_does_not_assert(ws):
    rep, code = run(ws, "glue", {"scenario": "no_condition_p"})
    assert code == 0
    assert rep["hypotheses"]["condition (P)"]["holds"] is False
    assert rep["conclusions"]["M^⊥ = N"]["status"] == "not-asserted"


def test_tiny_budget_is_inconclusive(capsys):
    code, out, _ = call(capsys, "glue", "--workspace", str(SMALL), "--scenario", "glue_e2", "--budget-dim", "1")
    assert code == 2 and "inconclusive" in out


def test_corollary_assumption_failure(ws):
    rep, code = run(ws, "corollary", {"scenario": "split_phi"})
    assert code == 1
    assert "kernel_dim" in json.dumps(rep)


def test_recollement_command(ws):
    rep, code = run(ws, "recollement", {"scenario": "glue_e1"})
    assert code == 0


def test_budgets_section():
    doc = json.loads(SMALL.read_text())
    doc["budgets"] = {"dim_cap": 7, "seed": 3}
    ws = parse_workspace(doc)
    assert (ws.budgets.dim_cap, ws.budgets.mult_cap, ws.budgets.seed) == (7, 8, 3)
    doc["budgets"] = {"dim": 7}
    with pytest.raises(ParseError, match="unknown budget"):
        parse_workspace(doc)
