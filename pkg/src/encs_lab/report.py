"""Evaluation reports and their byte-stable emission.

Two renderings share one Report value:

* `report_payload` — full-precision dict for the HTTP service; clients do
  their own display rounding.
* `emit_report` — presentation bytes for files and stdout. Money is rounded
  only here: cents to 2 decimals, whole dollars to 0 decimals, probabilities
  to 4. Equal reports emit identical bytes (sorted keys, fixed separators,
  trailing newline).

The CSV schema is fixed per input: always model_id, encs cents and annual
dollars; the two break-even columns appear exactly when the scenario
declares an R&D block, with `never` marking models that never break even.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from typing import Any

from .errors import InvalidInputError


@dataclass(frozen=True)
class ModelRow:
    """One model's evaluated economics."""

    model_id: str
    ppl: float | None
    p_use: float
    p_edit: float
    p_ignore: float
    usage_source: str  # "annotated" | "perplexity"
    coefficient_set: str | None
    cost_per_message: float
    encs_per_message: float
    encs_per_year: float
    break_even_messages: float | None
    break_even_months: float | None
    never_breaks_even: bool = False


@dataclass(frozen=True)
class Report:
    scenario_name: str
    preset_version: str
    rows: tuple[ModelRow, ...]
    scenario: dict[str, Any]
    notes: tuple[str, ...] = ()
    # inputs a client passes straight to a break-even query (no client math)
    breakeven_inputs: dict[str, float] | None = None

    @property
    def has_break_even(self) -> bool:
        return self.scenario.get("rnd") is not None


def report_payload(report: Report) -> dict[str, Any]:
    """Full-precision JSON-ready dict (service responses, programmatic use)."""
    return {
        "scenario_name": report.scenario_name,
        "preset_version": report.preset_version,
        "rows": [
            {
                "model_id": r.model_id,
                "ppl": r.ppl,
                "p_use": r.p_use,
                "p_edit": r.p_edit,
                "p_ignore": r.p_ignore,
                "usage_source": r.usage_source,
                "coefficient_set": r.coefficient_set,
                "cost_per_message": r.cost_per_message,
                "cost_cents_per_message": r.cost_per_message * 100.0,
                "encs_per_message": r.encs_per_message,
                "encs_cents_per_message": r.encs_per_message * 100.0,
                "encs_per_year": r.encs_per_year,
                "break_even_messages": r.break_even_messages,
                "break_even_months": r.break_even_months,
                "never_breaks_even": r.never_breaks_even,
            }
            for r in report.rows
        ],
        "scenario": report.scenario,
        "notes": list(report.notes),
        "breakeven_inputs": report.breakeven_inputs,
    }


def _cents(usd: float) -> float:
    return round(usd * 100.0, 2)


def _break_even_cells(r: ModelRow) -> tuple[Any, Any]:
    """(messages, months) presentation values; `never` when applicable."""
    if r.never_breaks_even:
        return "never", "never"
    messages = round(r.break_even_messages) if r.break_even_messages is not None else None
    months = round(r.break_even_months, 2) if r.break_even_months is not None else None
    return messages, months


def emit_report(report: Report, format: str = "csv") -> bytes:
    """Presentation-rounded bytes; deterministic for equal reports."""
    if format == "csv":
        return _emit_csv(report)
    if format == "json":
        return _emit_json(report)
    raise InvalidInputError(f"unknown report format {format!r}; expected csv or json")


def _emit_csv(report: Report) -> bytes:
    buf = io.StringIO()
    header = "model_id,encs_cents_per_message,encs_usd_per_year"
    if report.has_break_even:
        header += ",break_even_messages,break_even_months"
    buf.write(header + "\n")
    for r in report.rows:
        cells = [r.model_id, f"{_cents(r.encs_per_message):.2f}",
                 str(round(r.encs_per_year))]
        if report.has_break_even:
            messages, months = _break_even_cells(r)
            cells.append(messages if isinstance(messages, str) else str(messages))
            cells.append(months if isinstance(months, str) else f"{months:.2f}")
        buf.write(",".join(cells) + "\n")
    return buf.getvalue().encode("utf-8")


def _emit_json(report: Report) -> bytes:
    rows = []
    for r in report.rows:
        row: dict[str, Any] = {
            "model_id": r.model_id,
            "ppl": r.ppl,
            "p_use": round(r.p_use, 4),
            "p_edit": round(r.p_edit, 4),
            "p_ignore": round(r.p_ignore, 4),
            "usage_source": r.usage_source,
            "coefficient_set": r.coefficient_set,
            "cost_usd_per_message": round(r.cost_per_message, 8),
            "encs_cents_per_message": _cents(r.encs_per_message),
            "encs_usd_per_year": round(r.encs_per_year),
        }
        if report.has_break_even:
            messages, months = _break_even_cells(r)
            row["break_even_messages"] = messages
            row["break_even_months"] = months
        rows.append(row)
    doc = {
        "scenario_name": report.scenario_name,
        "preset_version": report.preset_version,
        "rows": rows,
        "scenario": report.scenario,
        "notes": list(report.notes),
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=2) + "\n"
            ).encode("utf-8")
