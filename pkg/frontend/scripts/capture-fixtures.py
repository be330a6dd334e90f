#!/usr/bin/env python3
"""Capture test fixtures from a running encs-lab service.

Usage: python3 capture-fixtures.py [base_url]

Every fixture under tests/fixtures/ is a verbatim service response, so the
UI test suite exercises real contract payloads without a live server. Rerun
this script (with the service up) after any service change.
"""

import json
import sys
import urllib.error
import urllib.request
from pathlib import Path

BASE = (sys.argv[1] if len(sys.argv) > 1 else "http://127.0.0.1:8157") + "/api/v1"
OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# ppl values of the eight perplexity-extrapolated models in the shipped preset
PPL_VALUES = [4.27, 4.50, 4.05, 4.15, 7.08, 5.31, 1.93, 4.14]

NEVER_SCENARIO = {
    "name": "never-demo",
    "economics": {"hourly_rate": 10.0, "baseline_response_time": 30.0},
    "timings": {"t_use": 5.0, "t_edit": 10.0, "t_ignore": 35.0},
    "volumes": {"messages_per_month": 100000.0},
    "rnd": {"build_cost": 1000.0, "amortization_months": 12,
            "annual_maintenance": 0.0},
    "models": [
        {"model_id": "pricey",
         "usage": {"source": "annotated", "p_use": 0.625, "p_edit": 0.168,
                   "p_ignore": 0.207},
         "cost": {"source": "explicit", "usd_per_message": 0.0654}},
        {"model_id": "cheap",
         "usage": {"source": "annotated", "p_use": 0.7, "p_edit": 0.15,
                   "p_ignore": 0.15},
         "cost": {"source": "explicit", "usd_per_message": 0.0001}},
    ],
}


def call(method: str, path: str, body=None):
    data = None if body is None else json.dumps(body).encode("utf-8")
    req = urllib.request.Request(BASE + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            return json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return json.loads(err.read())


def save(name: str, doc) -> None:
    path = OUT / name
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", "utf-8")
    print(f"wrote {path}")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)

    presets = call("GET", "/presets")
    save("presets.json", presets)

    for preset_name in ("ar_table4", "appendix_k"):
        doc = presets["scenarios"][preset_name]
        save(f"report_{preset_name}.json", call("POST", "/scenario/evaluate", doc))

    save("report_never.json", call("POST", "/scenario/evaluate", NEVER_SCENARIO))

    predictions = {}
    for ppl in PPL_VALUES:
        predictions[str(ppl)] = call("POST", "/predict-ru", {
            "ppl": ppl, "coefficient_set": "ru_ppl_reconstructed_v1"})
    save("predict_ru.json", predictions)

    be_inputs = call("POST", "/scenario/evaluate",
                     presets["scenarios"]["appendix_k"])["breakeven_inputs"]
    in_house = next(r for r in call("POST", "/scenario/evaluate",
                                    presets["scenarios"]["appendix_k"])["rows"]
                    if r["model_id"] == "in-house")
    save("breakeven_success.json", call("POST", "/breakeven", {
        "c_rnd": be_inputs["c_rnd"],
        "encs_per_message": in_house["encs_per_message"],
        "c_m": be_inputs["c_m"],
        "monthly_volume": be_inputs["monthly_volume"],
        "curve_points": 50,
    }))

    save("breakeven_never.json", call("POST", "/breakeven", {
        "c_rnd": 1000.0, "encs_per_message": -0.01,
        "monthly_volume": 500.0, "curve_points": 13,
    }))

    save("encs_pu1_c0.json", call("POST", "/encs", {
        "economics": {"hourly_rate": 10.0, "baseline_response_time": 30.0},
        "timings": {"t_use": 5.0, "t_edit": 10.0, "t_ignore": 35.0},
        "usage": {"p_use": 1.0, "p_edit": 0.0, "p_ignore": 0.0},
        "cost_per_message": 0.0,
    }))

    save("encs_reference.json", call("POST", "/encs", {
        "economics": {"hourly_rate": 10.0, "baseline_response_time": 30.0},
        "timings": {"t_use": 5.0, "t_edit": 10.0, "t_ignore": 35.0},
        "usage": {"p_use": 0.69, "p_edit": 0.14, "p_ignore": 0.17},
        "cost_per_message": 0.0109,
    }))

    save("error_simplex.json", call("POST", "/encs", {
        "economics": {"hourly_rate": 10.0, "baseline_response_time": 30.0},
        "timings": {"t_use": 5.0, "t_edit": 10.0, "t_ignore": 35.0},
        "usage": {"p_use": 0.9, "p_edit": 0.3, "p_ignore": 0.2},
        "cost_per_message": 0.0,
    }))


if __name__ == "__main__":
    main()
