"""Command line interface.

Subcommands: evaluate, fit, stats, breakeven, simulate, serve. Exit codes:
0 success, 1 invalid input, 2 a model never breaks even under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .annotation_stats import (AgreementTable, correlation_table, fleiss_kappa,
                               label_distribution, length_by_agreement)
from .breakeven import break_even_curve, break_even_result
from .core_cost import encs, per_action_savings, simulate_encs
from .datafiles import build_ru_points, load_annotations, load_logprobs, load_metrics
from .errors import EncsLabError, NeverBreaksEvenError
from .presets import load_presets
from .report import emit_report
from .scenario import (evaluate_scenario, load_preset_scenario, load_scenario,
                       _resolve_cost, _resolve_usage)
from .usability import fit_ru_models

DEFAULT_PORT = 8157

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NEVER_BREAKS_EVEN = 2


def _write_out(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _emit_json_doc(doc, out: str | None) -> None:
    _write_out((json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8"), out)


def _scenario_from_args(args):
    if args.scenario:
        return load_scenario(args.scenario)
    if args.preset:
        return load_preset_scenario(args.preset)
    raise EncsLabError("one of --scenario or --preset is required")


def _json_safe(value):
    """NaN has no JSON encoding; emit null."""
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


# -- subcommands --------------------------------------------------------------


def cmd_evaluate(args) -> int:
    scenario = _scenario_from_args(args)
    report = evaluate_scenario(scenario)
    _write_out(emit_report(report, format=args.format), args.out)
    if args.strict and any(r.never_breaks_even for r in report.rows):
        return EXIT_NEVER_BREAKS_EVEN
    return EXIT_OK


def cmd_fit(args) -> int:
    annotations = load_annotations(args.annotations)
    samples = load_logprobs(args.logprobs)
    points = build_ru_points(annotations, samples)
    result = fit_ru_models(points, k=args.iqr_k, fences=args.fences)
    doc = {
        "n_points": result.n_points,
        "n_removed": result.n_removed,
        "fences": result.fences,
        "units": "percent",
        "models": {
            action: {
                "slope": line.slope,
                "intercept": line.intercept,
                "n": line.n,
                "r_squared": line.r_squared,
                "f_statistic": (None if line.f_statistic is not None
                                and math.isinf(line.f_statistic)
                                else line.f_statistic),
                "p_value": line.p_value,
            }
            for action, line in (("use", result.coefficients.use),
                                 ("edit", result.coefficients.edit),
                                 ("ignore", result.coefficients.ignore))
        },
    }
    _emit_json_doc(doc, args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    records = load_annotations(args.annotations)
    model_ids = sorted({r.model_id for r in records})
    doc = {"models": {}}
    for mid in model_ids:
        dist = label_distribution(records, mid)
        entry = {"p_use": dist.p_use, "p_edit": dist.p_edit, "p_ignore": dist.p_ignore}
        try:
            entry["fleiss_kappa"] = fleiss_kappa(AgreementTable.from_records(records, mid))
        except EncsLabError as exc:
            entry["fleiss_kappa"] = None
            entry["fleiss_kappa_note"] = str(exc)
        doc["models"][mid] = entry
    try:
        doc["fleiss_kappa_all"] = fleiss_kappa(AgreementTable.from_records(records))
    except EncsLabError as exc:
        doc["fleiss_kappa_all"] = None
        doc["fleiss_kappa_all_note"] = str(exc)
    if any(r.response_token_length is not None for r in records):
        buckets = length_by_agreement(records, args.min_matching)
        doc["length_by_agreement"] = {
            str(args.min_matching): {k: _json_safe(v) for k, v in buckets.items()}
        }
    if args.metrics:
        metrics = load_metrics(args.metrics)
        doc["ru_metric_correlation"] = {
            "encoding": args.encoding,
            "table": correlation_table(records, metrics, encoding=args.encoding),
        }
    _emit_json_doc(doc, args.out)
    return EXIT_OK


def cmd_breakeven(args) -> int:
    try:
        result = break_even_result(args.c_rnd, args.encs, args.c_m,
                                   monthly_volume=args.monthly_volume)
    except NeverBreaksEvenError as exc:
        doc = {"never_breaks_even": True, "message": str(exc)}
        if args.curve:
            doc["curve"] = _curve_doc(args)
        _emit_json_doc(doc, args.out)
        return EXIT_NEVER_BREAKS_EVEN if args.strict else EXIT_OK
    doc = {
        "never_breaks_even": False,
        "messages": result.messages,
        "messages_ceiling": result.messages_ceiling,
        "months": result.months,
    }
    if args.curve:
        doc["curve"] = _curve_doc(args)
    _emit_json_doc(doc, args.out)
    return EXIT_OK


def _curve_doc(args) -> dict:
    curve = break_even_curve(args.c_rnd, args.encs, args.c_m,
                             monthly_volume=args.monthly_volume)
    return {
        "messages": list(curve.messages),
        "months": list(curve.months) if curve.months is not None else None,
        "model_spend": list(curve.model_spend),
        "model_spend_upfront_only": list(curve.model_spend_upfront_only),
        "labor_offset": list(curve.labor_offset),
    }


def cmd_simulate(args) -> int:
    scenario = _scenario_from_args(args)
    presets = load_presets()
    spec = next((m for m in scenario.models if m.model_id == args.model), None)
    if spec is None:
        raise EncsLabError(
            f"model {args.model!r} not in scenario; available: "
            f"{', '.join(m.model_id for m in scenario.models)}")
    usage, _, _, _ = _resolve_usage(spec, presets)
    cost = _resolve_cost(spec, presets)
    savings = per_action_savings(scenario.economics, scenario.timings)
    analytic = encs(usage, savings, cost).per_message
    sim = simulate_encs(usage, savings, cost, n=args.n, seed=args.seed)
    _emit_json_doc({
        "model_id": spec.model_id,
        "analytic": analytic,
        "mean": sim.mean,
        "std_error": sim.std_error,
        "n": sim.n,
        "seed": sim.seed,
        "abs_error": abs(sim.mean - analytic),
    }, args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.bind, port=args.port)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="encs-lab",
        description="Expected net cost savings of LLM response suggestions: "
                    "scenario evaluation, usability fitting, annotation "
                    "statistics, break-even analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    scenario_flags = argparse.ArgumentParser(add_help=False)
    scenario_flags.add_argument("--scenario", metavar="PATH",
                                help="scenario JSON file")
    scenario_flags.add_argument("--preset", metavar="NAME",
                                help="named scenario preset (see `encs-lab presets`)")

    out_flag = argparse.ArgumentParser(add_help=False)
    out_flag.add_argument("--out", metavar="PATH",
                          help="write output here instead of stdout")

    p = sub.add_parser("evaluate", parents=[scenario_flags, out_flag],
                       help="evaluate a scenario into a report")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--strict", action="store_true",
                   help="exit 2 when any model never breaks even")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("fit", parents=[out_flag],
                       help="fit the usability-vs-perplexity lines from files")
    p.add_argument("--annotations", required=True, metavar="PATH",
                   help="judgment CSV (conversation_id, model_id, annotator_id, "
                        "label, token_length)")
    p.add_argument("--logprobs", required=True, metavar="PATH",
                   help="JSONL of per-token probabilities per (model, conversation)")
    p.add_argument("--iqr-k", type=float, default=1.5,
                   help="Tukey fence multiplier (default 1.5)")
    p.add_argument("--fences", choices=("pooled", "per_model"), default="pooled",
                   help="outlier fences over the pooled sample or per model")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("stats", parents=[out_flag],
                       help="label distributions, agreement, and correlations")
    p.add_argument("--annotations", required=True, metavar="PATH")
    p.add_argument("--metrics", metavar="PATH",
                   help="binary quality-metric CSV for correlation analysis")
    p.add_argument("--min-matching", type=int, choices=(3, 4, 5), default=3,
                   help="raters agreeing on the mode for length buckets")
    p.add_argument("--encoding", choices=("per_judgment", "per_item_majority"),
                   default="per_judgment")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("breakeven", parents=[out_flag],
                       help="messages and months to recover a build cost")
    p.add_argument("--c-rnd", type=float, required=True, help="build cost, USD")
    p.add_argument("--encs", type=float, required=True,
                   help="expected net saving per message, USD")
    p.add_argument("--c-m", type=float, default=0.0,
                   help="per-message maintenance, USD (default 0)")
    p.add_argument("--monthly-volume", type=float,
                   help="messages per month, for calendar time")
    p.add_argument("--curve", action="store_true",
                   help="include spend-vs-offset chart series")
    p.add_argument("--strict", action="store_true",
                   help="exit 2 when the investment never breaks even")
    p.set_defaults(func=cmd_breakeven)

    p = sub.add_parser("simulate", parents=[scenario_flags, out_flag],
                       help="Monte Carlo cross-check of one model's ENCS")
    p.add_argument("--model", required=True, help="model_id within the scenario")
    p.add_argument("-n", type=int, default=100_000, help="draws (default 100000)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("presets", parents=[out_flag],
                       help="print the preset catalog")
    p.set_defaults(func=lambda args: (_emit_json_doc(load_presets().raw, args.out),
                                      EXIT_OK)[1])

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    p.add_argument("--bind", default="127.0.0.1", help="bind address")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("ENCS_LAB_PORT", DEFAULT_PORT)),
                   help=f"port (env ENCS_LAB_PORT, default {DEFAULT_PORT})")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EncsLabError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
