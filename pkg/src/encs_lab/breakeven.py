"""Recovering a build investment from per-message savings.

A model costing C_rnd to build pays for itself after

    N_r = C_rnd / (ENCS - C_m)

messages, where C_m is the ongoing per-message maintenance burden. When
ENCS <= C_m the denominator is non-positive and no volume breaks even; that
is a typed outcome (NeverBreaksEvenError), not invalid input.

Published break-even figures fold the *full* monthly R&D line (amortized
build plus maintenance) into C_m, so RndCost derives the per-message burden
from monthly_total when an explicit value is not given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_cost import (ActionTimings, AgentEconomics, SECONDS_PER_HOUR,
                        UsageDistribution, average_assisted_time)
from .errors import InvalidInputError, NeverBreaksEvenError


@dataclass(frozen=True)
class RndCost:
    """Build investment and its ongoing overheads."""

    build_cost: float
    amortization_months: int
    annual_maintenance: float = 0.0
    per_message_maintenance: float | None = None

    def __post_init__(self):
        if not (self.build_cost >= 0):
            raise InvalidInputError(f"build_cost must be >= 0, got {self.build_cost}")
        if self.amortization_months < 1:
            raise InvalidInputError(
                f"amortization_months must be >= 1, got {self.amortization_months}")
        if not (self.annual_maintenance >= 0):
            raise InvalidInputError(
                f"annual_maintenance must be >= 0, got {self.annual_maintenance}")
        if self.per_message_maintenance is not None and not (self.per_message_maintenance >= 0):
            raise InvalidInputError(
                f"per_message_maintenance must be >= 0, got {self.per_message_maintenance}")

    @property
    def monthly_build(self) -> float:
        """Build cost amortized per month."""
        return self.build_cost / self.amortization_months

    @property
    def monthly_maintenance(self) -> float:
        return self.annual_maintenance / 12.0

    @property
    def monthly_total(self) -> float:
        """Full monthly R&D line: amortized build plus maintenance."""
        return self.monthly_build + self.monthly_maintenance

    def maintenance_per_message(self, messages_per_month: float) -> float:
        """C_m: explicit value when given, else the full monthly R&D line
        spread over the message volume."""
        if self.per_message_maintenance is not None:
            return self.per_message_maintenance
        if not (messages_per_month > 0):
            raise InvalidInputError(
                f"messages_per_month must be > 0, got {messages_per_month}")
        return self.monthly_total / messages_per_month


@dataclass(frozen=True)
class BreakEvenResult:
    """Break-even volume, exact and as a whole-message ceiling, plus the
    calendar time at a monthly volume when one is known."""

    messages: float
    messages_ceiling: int
    months: float | None = None


@dataclass(frozen=True)
class BreakEvenCurve:
    """Cumulative spend-vs-offset series for plotting.

    model_spend charges the build cost up front and accrues C_m per message;
    model_spend_upfront_only is the flat build cost (the alternative reading
    of the published chart). labor_offset accrues ENCS per message. months
    mirrors the messages axis when a monthly volume is known.
    """

    messages: tuple[float, ...]
    months: tuple[float, ...] | None
    model_spend: tuple[float, ...]
    model_spend_upfront_only: tuple[float, ...]
    labor_offset: tuple[float, ...]


@dataclass(frozen=True)
class LaborComparison:
    """Per-message labor cost with and without suggestions."""

    labor_without: float
    labor_with: float
    saving: float
    saving_pct: float  # percent of the unassisted cost


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def messages_to_break_even(c_rnd: float, encs_per_message: float,
                           c_m: float = 0.0) -> float:
    """Exact message count N_r = c_rnd / (encs - c_m).

    Raises NeverBreaksEvenError when per-message savings do not clear the
    per-message maintenance.
    """
    if not (c_rnd >= 0):
        raise InvalidInputError(f"c_rnd must be >= 0, got {c_rnd}")
    if not (c_m >= 0):
        raise InvalidInputError(f"c_m must be >= 0, got {c_m}")
    margin = encs_per_message - c_m
    if margin <= 0:
        raise NeverBreaksEvenError(
            f"per-message savings {encs_per_message} do not exceed per-message "
            f"maintenance {c_m}; the build cost is never recovered",
            encs_per_message=encs_per_message, c_m=c_m)
    return c_rnd / margin


def time_to_break_even(messages: float, monthly_volume: float) -> float:
    """Months to reach a message count at a steady monthly volume."""
    if not (messages >= 0):
        raise InvalidInputError(f"messages must be >= 0, got {messages}")
    if not (monthly_volume > 0):
        raise InvalidInputError(f"monthly_volume must be > 0, got {monthly_volume}")
    return messages / monthly_volume


def amortized_build_per_month(build_cost: float, amortization_months: int) -> float:
    """Straight-line monthly amortization of a build cost."""
    if not (build_cost >= 0):
        raise InvalidInputError(f"build_cost must be >= 0, got {build_cost}")
    if amortization_months < 1:
        raise InvalidInputError(
            f"amortization_months must be >= 1, got {amortization_months}")
    return build_cost / amortization_months


def break_even_result(c_rnd: float, encs_per_message: float, c_m: float = 0.0,
                      monthly_volume: float | None = None) -> BreakEvenResult:
    """messages_to_break_even plus the ceiling and optional calendar time."""
    exact = messages_to_break_even(c_rnd, encs_per_message, c_m)
    months = time_to_break_even(exact, monthly_volume) if monthly_volume else None
    return BreakEvenResult(messages=exact, messages_ceiling=math.ceil(exact),
                           months=months)


def break_even_curve(c_rnd: float, encs_per_message: float, c_m: float = 0.0,
                     monthly_volume: float | None = None,
                     points: int = 50,
                     horizon_messages: float | None = None) -> BreakEvenCurve:
    """Series for a cumulative spend vs labor-offset chart.

    The horizon defaults to twice the break-even volume; when the scenario
    never breaks even it falls back to a year of volume (or one million
    messages without a volume) so the non-crossing lines are still visible.
    """
    if points < 2:
        raise InvalidInputError(f"points must be >= 2, got {points}")
    if horizon_messages is None:
        try:
            horizon_messages = 2.0 * messages_to_break_even(c_rnd, encs_per_message, c_m)
        except NeverBreaksEvenError:
            horizon_messages = 12.0 * monthly_volume if monthly_volume else 1_000_000.0
        if horizon_messages <= 0:
            horizon_messages = 12.0 * monthly_volume if monthly_volume else 1_000_000.0
    elif not (horizon_messages > 0):
        raise InvalidInputError(
            f"horizon_messages must be > 0, got {horizon_messages}")
    xs = tuple(horizon_messages * i / (points - 1) for i in range(points))
    return BreakEvenCurve(
        messages=xs,
        months=(tuple(x / monthly_volume for x in xs) if monthly_volume else None),
        model_spend=tuple(c_rnd + c_m * x for x in xs),
        model_spend_upfront_only=tuple(c_rnd for _ in xs),
        labor_offset=tuple(encs_per_message * x for x in xs),
    )


def assisted_labor_comparison(econ: AgentEconomics, usage: UsageDistribution,
                              timings: ActionTimings,
                              rec_cost_per_message: float) -> LaborComparison:
    """Per-message cost of an assisted agent (expected handling labor plus
    the recommendation cost) against the unassisted baseline."""
    if not (rec_cost_per_message >= 0):
        raise InvalidInputError(
            f"rec_cost_per_message must be >= 0, got {rec_cost_per_message}")
    labor_without = econ.labor_cost_per_message
    assisted_seconds = average_assisted_time(usage, timings)
    labor_with = (econ.hourly_rate * assisted_seconds / SECONDS_PER_HOUR
                  + rec_cost_per_message)
    saving = labor_without - labor_with
    return LaborComparison(
        labor_without=labor_without,
        labor_with=labor_with,
        saving=saving,
        saving_pct=saving / labor_without * 100.0,
    )
