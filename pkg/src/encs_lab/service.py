"""Stateless HTTP JSON API over the library operations.

Endpoints (all under /api/v1):

* POST /encs               — ENCS per message with its breakdown
* POST /predict-ru         — usability distribution from a perplexity
* POST /breakeven          — break-even volume, time, and chart series
* POST /scenario/evaluate  — full scenario report, full precision
* GET  /presets            — the preset catalog (with its version string)

The service adds no arithmetic: every numeric response value is a library
result, so a client that renders responses verbatim matches the CLI and the
Python API exactly. Errors use one envelope, {"error": {"code", "message",
"field_path"?}} — 400 for invalid input, 422 for the typed never-breaks-even
outcome. Responses touched by presets echo the catalog version.

CORS is open (the companion UI is served from another origin, often file://
or a localhost dev server), which is safe for a stateless calculator.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .breakeven import break_even_curve, break_even_result
from .core_cost import (ActionTimings, AgentEconomics, UsageDistribution,
                        average_assisted_time, encs, per_action_savings)
from .errors import EncsLabError, InvalidInputError, NeverBreaksEvenError
from .presets import load_presets
from .report import report_payload
from .scenario import evaluate_scenario, scenario_from_dict
from .usability import LinearModel, RuCoefficients, predict_ru_set

API_PREFIX = "/api/v1"


# -- request bodies ----------------------------------------------------------


class EconomicsIn(BaseModel):
    hourly_rate: float
    baseline_response_time: float


class TimingsIn(BaseModel):
    t_use: float
    t_edit: float
    t_ignore: float


class UsageIn(BaseModel):
    p_use: float
    p_edit: float
    p_ignore: float


class EncsIn(BaseModel):
    economics: EconomicsIn
    timings: TimingsIn
    usage: UsageIn
    cost_per_message: float


class LineIn(BaseModel):
    slope: float
    intercept: float


class CoefficientsIn(BaseModel):
    use: LineIn
    edit: LineIn
    ignore: LineIn


class PredictRuIn(BaseModel):
    ppl: float
    coefficient_set: str | None = None
    coefficients: CoefficientsIn | None = None


class BreakevenIn(BaseModel):
    c_rnd: float
    encs_per_message: float
    c_m: float = 0.0
    monthly_volume: float | None = None
    curve_points: int = Field(default=50, ge=2, le=2000)
    horizon_messages: float | None = None


def _error_body(code: str, message: str, field_path: str | None = None) -> dict:
    err: dict[str, Any] = {"code": code, "message": message}
    if field_path:
        err["field_path"] = field_path
    return {"error": err}


def _curve_payload(curve) -> dict[str, Any]:
    return {
        "messages": list(curve.messages),
        "months": list(curve.months) if curve.months is not None else None,
        "model_spend": list(curve.model_spend),
        "model_spend_upfront_only": list(curve.model_spend_upfront_only),
        "labor_offset": list(curve.labor_offset),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="encs-lab", version=load_presets().version,
                  description="Expected net cost savings of LLM response "
                              "suggestions: costs, usability, break-even.")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def on_schema_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        path = ".".join(str(part) for part in first.get("loc", ()) if part != "body")
        return JSONResponse(status_code=400, content=_error_body(
            "invalid_schema", first.get("msg", "request body is invalid"), path))

    @app.exception_handler(EncsLabError)
    async def on_domain_error(request: Request, exc: EncsLabError):
        status = 422 if isinstance(exc, NeverBreaksEvenError) else 400
        return JSONResponse(status_code=status,
                            content=_error_body(exc.code, str(exc)))

    @app.post(API_PREFIX + "/encs")
    def post_encs(body: EncsIn) -> dict:
        econ = AgentEconomics(**body.economics.model_dump())
        timings = ActionTimings(**body.timings.model_dump())
        usage = UsageDistribution(**body.usage.model_dump())
        savings = per_action_savings(econ, timings)
        result = encs(usage, savings, body.cost_per_message)
        return {
            "per_message": result.per_message,
            "per_message_cents": result.per_message * 100.0,
            "gross_savings": result.gross_savings,
            "generation_cost": result.generation_cost,
            "breakdown": {"use": result.use_contribution,
                          "edit": result.edit_contribution,
                          "ignore": result.ignore_contribution},
            "savings": {"s_use": savings.s_use, "s_edit": savings.s_edit,
                        "s_ignore": savings.s_ignore},
            "assisted_time_seconds": average_assisted_time(usage, timings),
        }

    @app.post(API_PREFIX + "/predict-ru")
    def post_predict_ru(body: PredictRuIn) -> dict:
        if (body.coefficient_set is None) == (body.coefficients is None):
            raise InvalidInputError(
                "exactly one of coefficient_set / coefficients is required")
        if body.coefficient_set is not None:
            preset = load_presets().coefficient_set(body.coefficient_set)
            coeffs, set_id = preset.coefficients, preset.set_id
        else:
            coeffs = RuCoefficients(
                use=LinearModel(**body.coefficients.use.model_dump()),
                edit=LinearModel(**body.coefficients.edit.model_dump()),
                ignore=LinearModel(**body.coefficients.ignore.model_dump()),
            )
            set_id = None
        pred = predict_ru_set(body.ppl, coeffs)
        return {
            "p_use": pred.p_use,
            "p_edit": pred.p_edit,
            "p_ignore": pred.p_ignore,
            "percent": {"use": pred.p_use * 100.0, "edit": pred.p_edit * 100.0,
                        "ignore": pred.p_ignore * 100.0},
            "raw_sum": pred.raw_sum,
            "coefficient_set": set_id,
            "preset_version": load_presets().version,
        }

    @app.post(API_PREFIX + "/breakeven")
    def post_breakeven(body: BreakevenIn) -> Any:
        curve = break_even_curve(body.c_rnd, body.encs_per_message, body.c_m,
                                 monthly_volume=body.monthly_volume,
                                 points=body.curve_points,
                                 horizon_messages=body.horizon_messages)
        try:
            result = break_even_result(body.c_rnd, body.encs_per_message, body.c_m,
                                       monthly_volume=body.monthly_volume)
        except NeverBreaksEvenError as exc:
            content = _error_body(exc.code, str(exc))
            content["curve"] = _curve_payload(curve)
            return JSONResponse(status_code=422, content=content)
        return {
            "messages": result.messages,
            "messages_ceiling": result.messages_ceiling,
            "months": result.months,
            "curve": _curve_payload(curve),
        }

    @app.post(API_PREFIX + "/scenario/evaluate")
    def post_scenario_evaluate(body: dict) -> dict:
        scenario = scenario_from_dict(body)
        return report_payload(evaluate_scenario(scenario))

    @app.get(API_PREFIX + "/presets")
    def get_presets() -> dict:
        return load_presets().raw

    return app


# uvicorn entry point: `uvicorn encs_lab.service:app`
app = create_app()
