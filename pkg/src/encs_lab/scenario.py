"""Scenario files: schema, loading, evaluation, dataset filtering.

A scenario bundles agent economics, action timings, message volumes, an
optional R&D block, and a list of candidate models. Each model declares
exactly one usage source (a rater-measured distribution, or a perplexity to
extrapolate through a coefficient set) and exactly one cost source (explicit
per-message USD, a self-hosted GPU profile, or metered API pricing).

The canonical on-disk encoding is JSON; `scenario_to_dict` /
`scenario_from_dict` round-trip exactly, and evaluation is deterministic, so
evaluating the same file twice yields byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from . import report as _report
from .breakeven import RndCost, messages_to_break_even, time_to_break_even
from .core_cost import (ActionTimings, AgentEconomics, UsageDistribution,
                        annualize, encs, per_action_savings)
from .errors import InvalidInputError, NeverBreaksEvenError
from .inference_cost import (ApiPricing, GpuPricing, MessageShape, ServingProfile,
                             api_cost_per_message, self_hosted_cost_per_inference,
                             tokens_per_message)
from .presets import Presets, load_presets
from .usability import LinearModel, RuCoefficients, predict_ru_set


# --------------------------------------------------------------------------
# schema types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PerplexityUsage:
    """Usage extrapolated from a perplexity through a coefficient set,
    referenced by preset id or carried inline."""

    ppl: float
    coefficient_set: str | None = None
    coefficients: RuCoefficients | None = None

    def __post_init__(self):
        if not (self.ppl >= 1.0):
            raise InvalidInputError(f"ppl must be >= 1, got {self.ppl}")
        if (self.coefficient_set is None) == (self.coefficients is None):
            raise InvalidInputError(
                "exactly one of coefficient_set / coefficients is required")


@dataclass(frozen=True)
class ExplicitCost:
    usd_per_message: float

    def __post_init__(self):
        if not (self.usd_per_message >= 0):
            raise InvalidInputError(
                f"usd_per_message must be >= 0, got {self.usd_per_message}")


@dataclass(frozen=True)
class SelfHostedCost:
    """GPU by preset id or inline pricing, plus the measured latency."""

    latency_seconds: float
    gpu_preset: str | None = None
    gpu: GpuPricing | None = None
    throughput_per_second: float | None = None

    def __post_init__(self):
        if (self.gpu_preset is None) == (self.gpu is None):
            raise InvalidInputError("exactly one of gpu_preset / gpu is required")
        if not (self.latency_seconds >= 0):
            raise InvalidInputError(
                f"latency_seconds must be >= 0, got {self.latency_seconds}")


@dataclass(frozen=True)
class ApiCost:
    """Metered pricing with the message's token count, explicit or derived
    from a message shape."""

    usd_per_1k_tokens: float
    tokens_per_message: float | None = None
    message_shape: MessageShape | None = None

    def __post_init__(self):
        if not (self.usd_per_1k_tokens >= 0):
            raise InvalidInputError(
                f"usd_per_1k_tokens must be >= 0, got {self.usd_per_1k_tokens}")
        if (self.tokens_per_message is None) == (self.message_shape is None):
            raise InvalidInputError(
                "exactly one of tokens_per_message / message_shape is required")
        if self.tokens_per_message is not None and not (self.tokens_per_message >= 0):
            raise InvalidInputError(
                f"tokens_per_message must be >= 0, got {self.tokens_per_message}")


@dataclass(frozen=True)
class ModelSpec:
    model_id: str
    usage: UsageDistribution | PerplexityUsage
    cost: ExplicitCost | SelfHostedCost | ApiCost
    note: str = ""

    def __post_init__(self):
        if not self.model_id:
            raise InvalidInputError("model_id must be non-empty")


@dataclass(frozen=True)
class Volumes:
    """Message volumes; either figure can be derived from the other at 12
    months/year when only one is given."""

    messages_per_month: float | None = None
    annual_messages: float | None = None

    def __post_init__(self):
        if self.messages_per_month is None and self.annual_messages is None:
            raise InvalidInputError(
                "one of messages_per_month / annual_messages is required")
        for name in ("messages_per_month", "annual_messages"):
            v = getattr(self, name)
            if v is not None and not (v > 0):
                raise InvalidInputError(f"{name} must be > 0, got {v}")

    @property
    def monthly(self) -> float:
        if self.messages_per_month is not None:
            return self.messages_per_month
        return self.annual_messages / 12.0

    @property
    def annual(self) -> float:
        if self.annual_messages is not None:
            return self.annual_messages
        return self.messages_per_month * 12.0


@dataclass(frozen=True)
class Scenario:
    name: str
    economics: AgentEconomics
    timings: ActionTimings
    volumes: Volumes
    models: tuple[ModelSpec, ...]
    rnd: RndCost | None = None
    description: str = ""

    def __post_init__(self):
        if not self.name:
            raise InvalidInputError("scenario name must be non-empty")
        if not self.models:
            raise InvalidInputError("scenario needs at least one model")
        seen = set()
        for m in self.models:
            if m.model_id in seen:
                raise InvalidInputError(f"duplicate model_id {m.model_id!r}")
            seen.add(m.model_id)


# --------------------------------------------------------------------------
# dict <-> dataclass
# --------------------------------------------------------------------------


def _require(d: dict, key: str, where: str) -> Any:
    if key not in d:
        raise InvalidInputError(f"{where}: missing required field {key!r}")
    return d[key]


def _num(d: dict, key: str, where: str) -> float:
    v = _require(d, key, where)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidInputError(f"{where}.{key}: expected a number, got {v!r}")
    return float(v)


def _usage_from_dict(d: dict, where: str) -> UsageDistribution | PerplexityUsage:
    source = _require(d, "source", where)
    if source == "annotated":
        return UsageDistribution(_num(d, "p_use", where), _num(d, "p_edit", where),
                                 _num(d, "p_ignore", where))
    if source == "perplexity":
        coeffs = None
        if "coefficients" in d:
            c = d["coefficients"]
            coeffs = RuCoefficients(**{
                action: LinearModel(slope=_num(c[action], "slope", f"{where}.{action}"),
                                    intercept=_num(c[action], "intercept",
                                                   f"{where}.{action}"))
                for action in ("use", "edit", "ignore")
            })
        return PerplexityUsage(ppl=_num(d, "ppl", where),
                               coefficient_set=d.get("coefficient_set"),
                               coefficients=coeffs)
    raise InvalidInputError(f"{where}.source: unknown usage source {source!r}")


def _cost_from_dict(d: dict, where: str) -> ExplicitCost | SelfHostedCost | ApiCost:
    source = _require(d, "source", where)
    if source == "explicit":
        return ExplicitCost(usd_per_message=_num(d, "usd_per_message", where))
    if source == "self_hosted":
        gpu_ref = _require(d, "gpu", where)
        if isinstance(gpu_ref, str):
            preset_id, gpu = gpu_ref, None
        elif isinstance(gpu_ref, dict):
            preset_id = None
            gpu = GpuPricing(monthly_cost=_num(gpu_ref, "monthly_cost", f"{where}.gpu"),
                             billed_hours_per_month=_num(gpu_ref,
                                                         "billed_hours_per_month",
                                                         f"{where}.gpu"))
        else:
            raise InvalidInputError(f"{where}.gpu: expected preset id or object")
        return SelfHostedCost(latency_seconds=_num(d, "latency_seconds", where),
                              gpu_preset=preset_id, gpu=gpu,
                              throughput_per_second=d.get("throughput_per_second"))
    if source == "api":
        shape = None
        if "message_shape" in d:
            s = d["message_shape"]
            shape = MessageShape(
                avg_chars_per_message=s.get("avg_chars_per_message"),
                chars_per_token=s.get("chars_per_token", 4.0),
                tokens_per_message=s.get("tokens_per_message"),
            )
        return ApiCost(usd_per_1k_tokens=_num(d, "usd_per_1k_tokens", where),
                       tokens_per_message=d.get("tokens_per_message"),
                       message_shape=shape)
    raise InvalidInputError(f"{where}.source: unknown cost source {source!r}")


def scenario_from_dict(data: dict[str, Any]) -> Scenario:
    """Validate and build a Scenario from its canonical JSON form."""
    if not isinstance(data, dict):
        raise InvalidInputError("scenario must be a JSON object")
    econ_d = _require(data, "economics", "scenario")
    timings_d = _require(data, "timings", "scenario")
    volumes_d = _require(data, "volumes", "scenario")
    models_d = _require(data, "models", "scenario")
    if not isinstance(models_d, list):
        raise InvalidInputError("scenario.models must be a list")
    rnd = None
    if data.get("rnd") is not None:
        r = data["rnd"]
        rnd = RndCost(
            build_cost=_num(r, "build_cost", "scenario.rnd"),
            amortization_months=int(_num(r, "amortization_months", "scenario.rnd")),
            annual_maintenance=r.get("annual_maintenance", 0.0),
            per_message_maintenance=r.get("per_message_maintenance"),
        )
    models = []
    for i, m in enumerate(models_d):
        where = f"scenario.models[{i}]"
        models.append(ModelSpec(
            model_id=str(_require(m, "model_id", where)),
            usage=_usage_from_dict(_require(m, "usage", where), f"{where}.usage"),
            cost=_cost_from_dict(_require(m, "cost", where), f"{where}.cost"),
            note=m.get("note", ""),
        ))
    return Scenario(
        name=str(_require(data, "name", "scenario")),
        economics=AgentEconomics(
            hourly_rate=_num(econ_d, "hourly_rate", "scenario.economics"),
            baseline_response_time=_num(econ_d, "baseline_response_time",
                                        "scenario.economics")),
        timings=ActionTimings(t_use=_num(timings_d, "t_use", "scenario.timings"),
                              t_edit=_num(timings_d, "t_edit", "scenario.timings"),
                              t_ignore=_num(timings_d, "t_ignore", "scenario.timings")),
        volumes=Volumes(messages_per_month=volumes_d.get("messages_per_month"),
                        annual_messages=volumes_d.get("annual_messages")),
        models=tuple(models),
        rnd=rnd,
        description=data.get("description", ""),
    )


def scenario_to_dict(s: Scenario) -> dict[str, Any]:
    """Canonical JSON form; `scenario_from_dict` of the result compares equal."""
    out: dict[str, Any] = {
        "name": s.name,
        "economics": {"hourly_rate": s.economics.hourly_rate,
                      "baseline_response_time": s.economics.baseline_response_time},
        "timings": {"t_use": s.timings.t_use, "t_edit": s.timings.t_edit,
                    "t_ignore": s.timings.t_ignore},
        "volumes": {},
        "models": [],
    }
    if s.description:
        out["description"] = s.description
    if s.volumes.messages_per_month is not None:
        out["volumes"]["messages_per_month"] = s.volumes.messages_per_month
    if s.volumes.annual_messages is not None:
        out["volumes"]["annual_messages"] = s.volumes.annual_messages
    if s.rnd is not None:
        rnd: dict[str, Any] = {"build_cost": s.rnd.build_cost,
                               "amortization_months": s.rnd.amortization_months,
                               "annual_maintenance": s.rnd.annual_maintenance}
        if s.rnd.per_message_maintenance is not None:
            rnd["per_message_maintenance"] = s.rnd.per_message_maintenance
        out["rnd"] = rnd
    for m in s.models:
        md: dict[str, Any] = {"model_id": m.model_id}
        if m.note:
            md["note"] = m.note
        if isinstance(m.usage, UsageDistribution):
            md["usage"] = {"source": "annotated", "p_use": m.usage.p_use,
                           "p_edit": m.usage.p_edit, "p_ignore": m.usage.p_ignore}
        else:
            ud: dict[str, Any] = {"source": "perplexity", "ppl": m.usage.ppl}
            if m.usage.coefficient_set is not None:
                ud["coefficient_set"] = m.usage.coefficient_set
            else:
                ud["coefficients"] = {
                    action: {"slope": line.slope, "intercept": line.intercept}
                    for action, line in (("use", m.usage.coefficients.use),
                                         ("edit", m.usage.coefficients.edit),
                                         ("ignore", m.usage.coefficients.ignore))
                }
            md["usage"] = ud
        c = m.cost
        if isinstance(c, ExplicitCost):
            md["cost"] = {"source": "explicit", "usd_per_message": c.usd_per_message}
        elif isinstance(c, SelfHostedCost):
            cd: dict[str, Any] = {"source": "self_hosted",
                                  "latency_seconds": c.latency_seconds}
            cd["gpu"] = c.gpu_preset if c.gpu_preset is not None else {
                "monthly_cost": c.gpu.monthly_cost,
                "billed_hours_per_month": c.gpu.billed_hours_per_month}
            if c.throughput_per_second is not None:
                cd["throughput_per_second"] = c.throughput_per_second
            md["cost"] = cd
        else:
            ad: dict[str, Any] = {"source": "api",
                                  "usd_per_1k_tokens": c.usd_per_1k_tokens}
            if c.tokens_per_message is not None:
                ad["tokens_per_message"] = c.tokens_per_message
            else:
                sd: dict[str, Any] = {"chars_per_token": c.message_shape.chars_per_token}
                if c.message_shape.avg_chars_per_message is not None:
                    sd["avg_chars_per_message"] = c.message_shape.avg_chars_per_message
                if c.message_shape.tokens_per_message is not None:
                    sd["tokens_per_message"] = c.message_shape.tokens_per_message
                ad["message_shape"] = sd
            md["cost"] = ad
        out["models"].append(md)
    return out


def load_scenario(path: str | Path) -> Scenario:
    """Read and validate a scenario JSON file."""
    p = Path(path)
    try:
        data = json.loads(p.read_text("utf-8"))
    except FileNotFoundError:
        raise InvalidInputError(f"scenario file not found: {p}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"scenario file {p} is not valid JSON: {exc}") from None
    return scenario_from_dict(data)


def save_scenario(s: Scenario, path: str | Path) -> None:
    """Write the canonical JSON form (sorted keys, indented, newline-ended)."""
    Path(path).write_text(
        json.dumps(scenario_to_dict(s), indent=2, sort_keys=True) + "\n", "utf-8")


def load_preset_scenario(name: str, presets: Presets | None = None) -> Scenario:
    presets = presets or load_presets()
    return scenario_from_dict(presets.scenario_dict(name))


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _resolve_usage(m: ModelSpec, presets: Presets):
    """-> (UsageDistribution, ppl or None, source tag, coefficient set id)."""
    if isinstance(m.usage, UsageDistribution):
        return m.usage, None, "annotated", None
    if m.usage.coefficient_set is not None:
        preset = presets.coefficient_set(m.usage.coefficient_set)
        coeffs, set_id = preset.coefficients, preset.set_id
    else:
        coeffs, set_id = m.usage.coefficients, None
    pred = predict_ru_set(m.usage.ppl, coeffs)
    usage = UsageDistribution(pred.p_use, pred.p_edit, pred.p_ignore)
    return usage, m.usage.ppl, "perplexity", set_id


def _resolve_cost(m: ModelSpec, presets: Presets) -> float:
    c = m.cost
    if isinstance(c, ExplicitCost):
        return c.usd_per_message
    if isinstance(c, SelfHostedCost):
        gpu = presets.gpu(c.gpu_preset) if c.gpu_preset is not None else c.gpu
        profile = ServingProfile(gpu=gpu, latency_seconds=c.latency_seconds,
                                 throughput_per_second=c.throughput_per_second)
        return self_hosted_cost_per_inference(profile)
    pricing = ApiPricing(usd_per_1k_tokens=c.usd_per_1k_tokens)
    tokens = (c.tokens_per_message if c.tokens_per_message is not None
              else tokens_per_message(c.message_shape))
    return api_cost_per_message(pricing, tokens)


def evaluate_scenario(s: Scenario, presets: Presets | None = None) -> "_report.Report":
    """Compute every model's ENCS (and break-even when R&D is declared).

    Pure and deterministic: rows come out in the scenario's model order and
    equal inputs give equal reports. A model that never breaks even is a
    rendered outcome, not an error.
    """
    presets = presets or load_presets()
    savings = per_action_savings(s.economics, s.timings)
    monthly = s.volumes.monthly
    annual = s.volumes.annual
    c_m = s.rnd.maintenance_per_message(monthly) if s.rnd is not None else None
    rows = []
    extrapolated = []
    for m in s.models:
        usage, ppl, source, set_id = _resolve_usage(m, presets)
        cost = _resolve_cost(m, presets)
        result = encs(usage, savings, cost)
        be_messages = be_months = None
        never = False
        if s.rnd is not None:
            try:
                be_messages = messages_to_break_even(s.rnd.build_cost,
                                                     result.per_message, c_m)
                be_months = time_to_break_even(be_messages, monthly)
            except NeverBreaksEvenError:
                never = True
        if source == "perplexity":
            extrapolated.append((m.model_id, set_id))
        rows.append(_report.ModelRow(
            model_id=m.model_id,
            ppl=ppl,
            p_use=usage.p_use,
            p_edit=usage.p_edit,
            p_ignore=usage.p_ignore,
            usage_source=source,
            coefficient_set=set_id,
            cost_per_message=cost,
            encs_per_message=result.per_message,
            encs_per_year=annualize(result.per_message, annual),
            break_even_messages=be_messages,
            break_even_months=be_months,
            never_breaks_even=never,
        ))
    notes = []
    if extrapolated:
        sets = sorted({set_id for _, set_id in extrapolated if set_id})
        notes.append(
            "usability extrapolated from perplexity for: "
            + ", ".join(mid for mid, _ in extrapolated)
            + (f" (coefficient set: {', '.join(sets)})" if sets else ""))
    if s.rnd is not None:
        notes.append(
            "break-even charges the full monthly build-and-maintain line "
            f"({s.rnd.monthly_total:.2f} USD/month) per message")
    breakeven_inputs = None
    if s.rnd is not None:
        breakeven_inputs = {"c_rnd": s.rnd.build_cost, "c_m": c_m,
                            "monthly_volume": monthly}
    return _report.Report(
        scenario_name=s.name,
        preset_version=presets.version,
        rows=tuple(rows),
        scenario=scenario_to_dict(s),
        notes=tuple(notes),
        breakeven_inputs=breakeven_inputs,
    )


# --------------------------------------------------------------------------
# dataset filtering
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConversationMeta:
    """Shape of one support conversation, for corpus filtering."""

    conversation_id: str
    agent_turns: int
    human_agent_messages: int
    bot_messages: int
    quality_score: float

    def __post_init__(self):
        for name in ("agent_turns", "human_agent_messages", "bot_messages"):
            if getattr(self, name) < 0:
                raise InvalidInputError(f"{name} must be >= 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class FilterResult:
    """Partition of the input; kept + rejected covers it exactly, and each
    rejection names the first failing predicate."""

    kept: tuple[ConversationMeta, ...]
    rejected: tuple[tuple[ConversationMeta, str], ...]


def dataset_filter(metas: Sequence[ConversationMeta], min_agent_turns: int = 2,
                   quality_threshold: float = 0.0,
                   strict_quality: bool = True) -> FilterResult:
    """Keep conversations suited to response suggestion: enough agent turns,
    more human-agent than bot messages (strictly), and a quality score above
    the threshold (strictly by default; >= with strict_quality=False).

    Predicates are checked in that order and a rejected conversation carries
    the first one it failed.
    """
    if min_agent_turns < 0:
        raise InvalidInputError(f"min_agent_turns must be >= 0, got {min_agent_turns}")
    kept = []
    rejected = []
    for meta in metas:
        if meta.agent_turns < min_agent_turns:
            rejected.append((meta, "min-agent-turns"))
        elif not (meta.human_agent_messages > meta.bot_messages):
            rejected.append((meta, "human-bot-ratio"))
        elif not (meta.quality_score > quality_threshold
                  or (not strict_quality and meta.quality_score >= quality_threshold)):
            rejected.append((meta, "quality-score"))
        else:
            kept.append(meta)
    return FilterResult(kept=tuple(kept), rejected=tuple(rejected))
