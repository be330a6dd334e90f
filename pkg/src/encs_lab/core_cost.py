"""Expected net cost savings (ENCS) of response suggestions.

A suggestion shown to a support agent is either used as-is, edited, or
ignored. Each action x has a handling time t_x; against a baseline
composition time T_r and an agent hourly rate R, the per-message saving of
action x is

    S_x = R * (T_r - t_x) / 3600        [USD per message]

and the expected net saving per message, given action probabilities P and a
per-message generation cost C, is

    ENCS = P(use)*S_use + P(edit)*S_edit + P(ignore)*S_ignore - C

Ignored suggestions usually cost extra reading time (t_ignore > T_r), making
S_ignore negative. All money is USD, all times seconds, rates USD/hour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, SimplexViolationError

SECONDS_PER_HOUR = 3600.0

# |p_use + p_edit + p_ignore - 1| must stay within this unless the caller
# overrides it. Published distributions are rounded percentages and can be
# off by a point on either side.
SIMPLEX_SUM_TOLERANCE = 0.02


# --------------------------------------------------------------------------
# value types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AgentEconomics:
    """Agent labor price and unassisted composition time."""

    hourly_rate: float            # R, USD per hour
    baseline_response_time: float  # T_r, seconds to compose from scratch

    def __post_init__(self):
        if not (self.hourly_rate > 0):
            raise InvalidInputError(f"hourly_rate must be > 0, got {self.hourly_rate}")
        if not (self.baseline_response_time > 0):
            raise InvalidInputError(
                f"baseline_response_time must be > 0, got {self.baseline_response_time}")

    @property
    def labor_cost_per_message(self) -> float:
        """Cost of composing one message unassisted, R * T_r / 3600."""
        return self.hourly_rate * self.baseline_response_time / SECONDS_PER_HOUR


@dataclass(frozen=True)
class ActionTimings:
    """Seconds an agent spends per message for each suggestion action.

    t_ignore may exceed the baseline time: reading a useless suggestion and
    then composing from scratch is slower than never seeing it.
    """

    t_use: float
    t_edit: float
    t_ignore: float

    def __post_init__(self):
        for name in ("t_use", "t_edit", "t_ignore"):
            v = getattr(self, name)
            if not (v >= 0):
                raise InvalidInputError(f"{name} must be >= 0, got {v}")


@dataclass(frozen=True)
class ActionSavings:
    """Per-message savings S_x in USD for each action. S_ignore is typically
    negative; values are whatever the timing algebra yields."""

    s_use: float
    s_edit: float
    s_ignore: float


@dataclass(frozen=True)
class UsageDistribution:
    """Probabilities of the three agent actions.

    Each probability must lie in [0, 1] and the mass must be 1 within
    `tolerance` (default 0.02: published tables carry rounded percentages).
    Values are *not* silently renormalized — computations use them as given,
    which is what reproduces the published cost tables. Call `normalized()`
    when an exact simplex is wanted.
    """

    p_use: float
    p_edit: float
    p_ignore: float
    tolerance: float = field(default=SIMPLEX_SUM_TOLERANCE, compare=False, repr=False)

    def __post_init__(self):
        for name in ("p_use", "p_edit", "p_ignore"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise SimplexViolationError(f"{name} must be in [0, 1], got {v}")
        if not (self.tolerance >= 0):
            raise InvalidInputError(f"tolerance must be >= 0, got {self.tolerance}")
        if abs(self.mass - 1.0) > self.tolerance:
            raise SimplexViolationError(
                f"p_use + p_edit + p_ignore = {self.mass:.6f} is off 1 by more than "
                f"the tolerance {self.tolerance}")

    @property
    def mass(self) -> float:
        return self.p_use + self.p_edit + self.p_ignore

    def normalized(self) -> "UsageDistribution":
        """Scale so the probabilities sum to exactly 1."""
        m = self.mass
        return UsageDistribution(self.p_use / m, self.p_edit / m, self.p_ignore / m,
                                 tolerance=self.tolerance)

    @classmethod
    def from_counts(cls, n_use: int, n_edit: int, n_ignore: int,
                    tolerance: float = SIMPLEX_SUM_TOLERANCE) -> "UsageDistribution":
        """Exact proportions from raw judgment counts."""
        for name, n in (("n_use", n_use), ("n_edit", n_edit), ("n_ignore", n_ignore)):
            if n < 0:
                raise InvalidInputError(f"{name} must be >= 0, got {n}")
        total = n_use + n_edit + n_ignore
        if total == 0:
            raise InvalidInputError("at least one judgment required")
        return cls(n_use / total, n_edit / total, n_ignore / total, tolerance=tolerance)


@dataclass(frozen=True)
class EncsResult:
    """ENCS per message with its additive pieces.

    gross_savings is the sum of the three action contributions;
    per_message = gross_savings - generation_cost.
    """

    per_message: float
    gross_savings: float
    generation_cost: float
    use_contribution: float
    edit_contribution: float
    ignore_contribution: float

    @property
    def breakdown(self) -> tuple[float, float, float]:
        return (self.use_contribution, self.edit_contribution, self.ignore_contribution)


@dataclass(frozen=True)
class SimulationResult:
    """Monte Carlo estimate of ENCS per message."""

    mean: float
    std_error: float
    n: int
    seed: int


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def per_action_savings(econ: AgentEconomics, timings: ActionTimings) -> ActionSavings:
    """S_x = R * (T_r - t_x) / 3600 for each action, in USD per message."""
    r = econ.hourly_rate
    t_r = econ.baseline_response_time
    return ActionSavings(
        s_use=r * (t_r - timings.t_use) / SECONDS_PER_HOUR,
        s_edit=r * (t_r - timings.t_edit) / SECONDS_PER_HOUR,
        s_ignore=r * (t_r - timings.t_ignore) / SECONDS_PER_HOUR,
    )


def encs(usage: UsageDistribution, savings: ActionSavings,
         cost_per_message: float) -> EncsResult:
    """Expected net cost savings per message.

    The distribution is consumed exactly as given (no renormalization); a
    mass of 1.01 from rounded percentages shifts the result accordingly,
    matching how the published tables were computed.
    """
    if not math.isfinite(cost_per_message) or cost_per_message < 0:
        raise InvalidInputError(
            f"cost_per_message must be finite and >= 0, got {cost_per_message}")
    use_c = usage.p_use * savings.s_use
    edit_c = usage.p_edit * savings.s_edit
    ignore_c = usage.p_ignore * savings.s_ignore
    gross = use_c + edit_c + ignore_c
    return EncsResult(
        per_message=gross - cost_per_message,
        gross_savings=gross,
        generation_cost=cost_per_message,
        use_contribution=use_c,
        edit_contribution=edit_c,
        ignore_contribution=ignore_c,
    )


def encs_simple(p_use: float, s_use: float, cost_per_message: float) -> float:
    """Single-action shortcut: ENCS = P(use) * S_use - C.

    Equivalent to `encs` with all probability mass on `use` and the other
    actions priced at zero.
    """
    if not (0.0 <= p_use <= 1.0):
        raise SimplexViolationError(f"p_use must be in [0, 1], got {p_use}")
    if not math.isfinite(cost_per_message) or cost_per_message < 0:
        raise InvalidInputError(
            f"cost_per_message must be finite and >= 0, got {cost_per_message}")
    return p_use * s_use - cost_per_message


def annualize(per_message: float, annual_volume: float) -> float:
    """Scale a per-message figure to a yearly one. Returns the full-precision
    product; rounding to whole dollars happens only at report output."""
    if not (annual_volume >= 0):
        raise InvalidInputError(f"annual_volume must be >= 0, got {annual_volume}")
    return per_message * annual_volume


def average_assisted_time(usage: UsageDistribution, timings: ActionTimings) -> float:
    """Expected seconds to handle one message with suggestions shown,
    sum of p_x * t_x."""
    return (usage.p_use * timings.t_use
            + usage.p_edit * timings.t_edit
            + usage.p_ignore * timings.t_ignore)


def simulate_encs(usage: UsageDistribution, savings: ActionSavings,
                  cost_per_message: float, n: int, seed: int) -> SimulationResult:
    """Monte Carlo check of the ENCS expectation.

    Draws n agent actions i.i.d. from `usage` (normalized for sampling when
    the mass is not exactly 1), credits the matching S_x minus the generation
    cost for each, and reports the sample mean and its standard error.
    Deterministic for a fixed seed; independent of the analytic formula so
    the two can cross-validate each other.
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if not math.isfinite(cost_per_message) or cost_per_message < 0:
        raise InvalidInputError(
            f"cost_per_message must be finite and >= 0, got {cost_per_message}")
    mass = usage.mass
    c_use = usage.p_use / mass
    c_edit = c_use + usage.p_edit / mass
    rng = np.random.default_rng(seed)
    draws = rng.random(n)
    values = np.where(
        draws < c_use, savings.s_use,
        np.where(draws < c_edit, savings.s_edit, savings.s_ignore),
    ) - cost_per_message
    mean = float(values.mean())
    if n == 1:
        std_error = 0.0
    else:
        std_error = float(values.std(ddof=1) / math.sqrt(n))
    return SimulationResult(mean=mean, std_error=std_error, n=n, seed=seed)
