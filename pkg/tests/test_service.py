"""HTTP API: parity with the library, error envelopes, preset echo."""

import pytest
from fastapi.testclient import TestClient

from encs_lab.core_cost import (ActionTimings, AgentEconomics,
                                UsageDistribution, encs, per_action_savings)
from encs_lab.presets import load_presets
from encs_lab.report import report_payload
from encs_lab.scenario import evaluate_scenario, scenario_from_dict
from encs_lab.service import create_app

ENCS_BODY = {
    "economics": {"hourly_rate": 10.0, "baseline_response_time": 30.0},
    "timings": {"t_use": 5.0, "t_edit": 10.0, "t_ignore": 35.0},
    "usage": {"p_use": 0.69, "p_edit": 0.14, "p_ignore": 0.17},
    "cost_per_message": 0.0109,
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_encs_matches_library_exactly(client):
    resp = client.post("/api/v1/encs", json=ENCS_BODY)
    assert resp.status_code == 200
    body = resp.json()
    savings = per_action_savings(AgentEconomics(10.0, 30.0),
                                 ActionTimings(5.0, 10.0, 35.0))
    expected = encs(UsageDistribution(0.69, 0.14, 0.17), savings, 0.0109)
    assert body["per_message"] == expected.per_message
    assert body["per_message_cents"] == expected.per_message * 100.0
    assert body["gross_savings"] == expected.gross_savings
    assert body["generation_cost"] == 0.0109
    assert body["breakdown"] == {"use": expected.use_contribution,
                                 "edit": expected.edit_contribution,
                                 "ignore": expected.ignore_contribution}
    assert body["savings"]["s_use"] == savings.s_use
    assert body["assisted_time_seconds"] == pytest.approx(10.8)


def test_encs_simplex_violation_envelope(client):
    bad = dict(ENCS_BODY, usage={"p_use": 0.9, "p_edit": 0.3, "p_ignore": 0.2})
    resp = client.post("/api/v1/encs", json=bad)
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["code"] == "simplex_violation"
    assert "sum" in err["message"] or "1" in err["message"]


def test_encs_invalid_input_envelope(client):
    bad = dict(ENCS_BODY, cost_per_message=-0.5)
    resp = client.post("/api/v1/encs", json=bad)
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "invalid_input"


def test_encs_schema_error_envelope(client):
    body = {k: v for k, v in ENCS_BODY.items() if k != "cost_per_message"}
    resp = client.post("/api/v1/encs", json=body)
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["code"] == "invalid_schema"
    assert err["field_path"] == "cost_per_message"


def test_predict_ru_preset(client):
    resp = client.post("/api/v1/predict-ru",
                       json={"ppl": 7.08,
                             "coefficient_set": "ru_ppl_reconstructed_v1"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["percent"]["use"] == pytest.approx(59.5, abs=1e-9)
    assert body["percent"]["edit"] == pytest.approx(17.8, abs=1e-9)
    assert body["percent"]["ignore"] == pytest.approx(22.7, abs=1e-9)
    assert body["p_use"] + body["p_edit"] + body["p_ignore"] == pytest.approx(
        1.0, abs=1e-12)
    assert body["raw_sum"] == pytest.approx(100.0, abs=1e-9)
    assert body["coefficient_set"] == "ru_ppl_reconstructed_v1"
    assert body["preset_version"] == load_presets().version


def test_predict_ru_inline_coefficients(client):
    resp = client.post("/api/v1/predict-ru", json={
        "ppl": 3.0,
        "coefficients": {"use": {"slope": 0.0, "intercept": 50.0},
                         "edit": {"slope": 0.0, "intercept": 25.0},
                         "ignore": {"slope": 0.0, "intercept": 25.0}},
    })
    assert resp.status_code == 200
    body = resp.json()
    assert body["p_use"] == 0.5
    assert body["p_edit"] == 0.25
    assert body["coefficient_set"] is None


def test_predict_ru_requires_exactly_one_source(client):
    neither = client.post("/api/v1/predict-ru", json={"ppl": 3.0})
    assert neither.status_code == 400
    assert neither.json()["error"]["code"] == "invalid_input"
    both = client.post("/api/v1/predict-ru", json={
        "ppl": 3.0,
        "coefficient_set": "ru_ppl_reconstructed_v1",
        "coefficients": {"use": {"slope": 0.0, "intercept": 50.0},
                         "edit": {"slope": 0.0, "intercept": 25.0},
                         "ignore": {"slope": 0.0, "intercept": 25.0}},
    })
    assert both.status_code == 400
    assert both.json()["error"]["code"] == "invalid_input"


def test_predict_ru_unknown_set_and_bad_ppl(client):
    unknown = client.post("/api/v1/predict-ru",
                          json={"ppl": 3.0, "coefficient_set": "mystery"})
    assert unknown.status_code == 400
    assert "mystery" in unknown.json()["error"]["message"]
    low = client.post("/api/v1/predict-ru",
                      json={"ppl": 0.4,
                            "coefficient_set": "ru_ppl_reconstructed_v1"})
    assert low.status_code == 400
    assert low.json()["error"]["code"] == "invalid_input"


def test_breakeven_success(client):
    resp = client.post("/api/v1/breakeven", json={
        "c_rnd": 50100.0,
        "encs_per_message": 0.056824444444444445,
        "c_m": 0.0014844444444444444,
        "monthly_volume": 3_750_000.0,
    })
    assert resp.status_code == 200
    body = resp.json()
    assert body["messages"] == pytest.approx(905312.613, abs=0.001)
    assert body["messages_ceiling"] == 905313
    assert body["months"] == pytest.approx(0.241417, abs=1e-6)
    curve = body["curve"]
    assert len(curve["messages"]) == 50  # default resolution
    assert len(curve["model_spend"]) == 50
    assert curve["months"] is not None
    assert curve["model_spend_upfront_only"][0] == 50100.0
    assert curve["labor_offset"][0] == 0.0


def test_breakeven_without_volume(client):
    resp = client.post("/api/v1/breakeven",
                       json={"c_rnd": 100.0, "encs_per_message": 0.05,
                             "curve_points": 5})
    assert resp.status_code == 200
    body = resp.json()
    assert body["months"] is None
    assert body["curve"]["months"] is None
    assert len(body["curve"]["messages"]) == 5


def test_breakeven_never_is_422_with_curve(client):
    resp = client.post("/api/v1/breakeven", json={
        "c_rnd": 1000.0, "encs_per_message": -0.01,
        "monthly_volume": 500.0, "curve_points": 13,
    })
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"]["code"] == "never_breaks_even"
    # the chart series still comes back so a UI can show the non-crossing lines
    assert len(body["curve"]["messages"]) == 13
    assert body["curve"]["messages"][-1] == pytest.approx(6000.0)


def test_breakeven_curve_points_bounds(client):
    resp = client.post("/api/v1/breakeven",
                       json={"c_rnd": 100.0, "encs_per_message": 0.05,
                             "curve_points": 1})
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["code"] == "invalid_schema"
    assert err["field_path"] == "curve_points"


def test_scenario_evaluate_parity(client):
    scenario_dict = load_presets().scenario_dict("ar_table4")
    resp = client.post("/api/v1/scenario/evaluate", json=scenario_dict)
    assert resp.status_code == 200
    expected = report_payload(evaluate_scenario(scenario_from_dict(scenario_dict)))
    assert resp.json() == expected


def test_scenario_evaluate_break_even_parity(client):
    scenario_dict = load_presets().scenario_dict("appendix_k")
    resp = client.post("/api/v1/scenario/evaluate", json=scenario_dict)
    assert resp.status_code == 200
    body = resp.json()
    expected = report_payload(evaluate_scenario(scenario_from_dict(scenario_dict)))
    assert body == expected
    assert body["rows"][0]["break_even_messages"] == pytest.approx(905312.613,
                                                                   abs=0.001)


def test_scenario_evaluate_bad_scenario(client):
    resp = client.post("/api/v1/scenario/evaluate", json={"name": "broken"})
    assert resp.status_code == 400
    err = resp.json()["error"]
    assert err["code"] == "invalid_input"
    assert "economics" in err["message"]


def test_scenario_evaluate_non_object_body(client):
    resp = client.post("/api/v1/scenario/evaluate", json=[1, 2, 3])
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "invalid_schema"


def test_presets_endpoint(client):
    resp = client.get("/api/v1/presets")
    assert resp.status_code == 200
    body = resp.json()
    assert body["version"] == load_presets().version
    assert "ar_table4" in body["scenarios"]
    assert "appendix_k" in body["scenarios"]
    assert "ru_ppl_reconstructed_v1" in body["coefficient_sets"]


def test_cors_allows_other_origins(client):
    resp = client.get("/api/v1/presets",
                      headers={"Origin": "http://localhost:5173"})
    assert resp.headers.get("access-control-allow-origin") == "*"
