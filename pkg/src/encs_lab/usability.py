"""Perplexity and the usability regression.

Response quality is proxied by the perplexity of the generated response
under the model,

    PP(W) = exp(-(1/N) * sum_i ln p_i)

and usability is extrapolated by three simple linear regressions mapping
perplexity to the percentage of suggestions used, edited and ignored.
Regressions operate in percent units (0-100) to match the published tables;
predictions are clamped to [0, 100] and renormalized to a probability
simplex.

Perplexity samples feeding a fit are cleaned with a Tukey fence
(k * IQR beyond the quartiles) before regression.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from scipy import stats as _scipy_stats

from .errors import DegenerateDataError, InvalidInputError

# Tukey fence multiplier used throughout unless a caller overrides it.
DEFAULT_IQR_K = 1.5

# Quartile estimators: "inclusive" is linear interpolation over the sorted
# sample (type-7, the default of most numeric stacks), "exclusive" is type-6.
# The choice moves the fences, so it is explicit and configurable.
QuartileMethod = Literal["inclusive", "exclusive"]


# --------------------------------------------------------------------------
# value types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TokenProbSequence:
    """Per-token probabilities of one generated response."""

    probs: tuple[float, ...]

    def __post_init__(self):
        if not self.probs:
            raise InvalidInputError("token probability sequence is empty")
        for p in self.probs:
            if not (0.0 < p <= 1.0):
                raise InvalidInputError(f"token probability must be in (0, 1], got {p}")

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class PerplexitySample:
    """Perplexity of one (model, conversation) response; `missing` marks
    conversations where the model produced nothing to score."""

    model_id: str
    conversation_id: str
    ppl: float | None
    missing: bool = False

    def __post_init__(self):
        if self.missing:
            if self.ppl is not None:
                raise InvalidInputError("missing sample must not carry a ppl value")
        else:
            if self.ppl is None or not (self.ppl >= 1.0):
                raise InvalidInputError(
                    f"ppl must be >= 1 for a present sample, got {self.ppl}")


@dataclass(frozen=True)
class LinearModel:
    """A fitted (or given) line y = slope * x + intercept.

    Fit diagnostics are populated by ols_fit and absent on preset coefficient
    lines; the F-test is only defined for n >= 3.
    """

    slope: float
    intercept: float
    n: int | None = None
    r_squared: float | None = None
    f_statistic: float | None = None
    p_value: float | None = None

    def predict(self, x: float) -> float:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class RuCoefficients:
    """The three usability lines, one per action, in percent units."""

    use: LinearModel
    edit: LinearModel
    ignore: LinearModel


@dataclass(frozen=True)
class RuPrediction:
    """Usability distribution predicted from perplexity.

    raw_sum is the sum of the three raw (pre-clamp) percent predictions,
    kept as a diagnostic: a healthy coefficient set stays near 100.
    """

    p_use: float
    p_edit: float
    p_ignore: float
    raw_sum: float


@dataclass(frozen=True)
class IqrResult:
    """Values partitioned by a Tukey fence, in input order."""

    kept: tuple[float, ...]
    removed: tuple[float, ...]
    lower_fence: float
    upper_fence: float


@dataclass(frozen=True)
class RuPoint:
    """One regression observation: a response's perplexity and the share of
    raters (in percent) choosing each action for it."""

    model_id: str
    ppl: float
    pct_use: float
    pct_edit: float
    pct_ignore: float


@dataclass(frozen=True)
class RuFitResult:
    """Outcome of fitting the three usability lines."""

    coefficients: RuCoefficients
    n_points: int
    n_removed: int
    fences: str  # "pooled" or "per_model"


# --------------------------------------------------------------------------
# perplexity
# --------------------------------------------------------------------------


def perplexity(seq: TokenProbSequence) -> float:
    """PP(W) = exp(-(1/N) * sum ln p_i), computed in log space.

    Always >= 1 since every p_i <= 1; a uniform sequence of probability p
    gives exactly 1/p.
    """
    log_sum = math.fsum(math.log(p) for p in seq.probs)
    return math.exp(-log_sum / len(seq))


def mean_perplexity(samples: Iterable[PerplexitySample]) -> float:
    """Mean over present samples; missing ones are skipped, and a collection
    with nothing present is an error."""
    values = [s.ppl for s in samples if not s.missing]
    if not values:
        raise InvalidInputError("no present perplexity samples to average")
    return math.fsum(values) / len(values)


# --------------------------------------------------------------------------
# outlier filtering
# --------------------------------------------------------------------------


def iqr_filter(values: Sequence[float], k: float = DEFAULT_IQR_K,
               method: QuartileMethod = "inclusive") -> IqrResult:
    """Partition values by the Tukey fences Q1 - k*IQR and Q3 + k*IQR.

    Keeps values on the fences. A single value is never an outlier. When all
    values are equal the IQR is 0 and everything is kept.
    """
    if len(values) == 0:
        raise InvalidInputError("iqr_filter requires a non-empty sequence")
    if not (k >= 0):
        raise InvalidInputError(f"k must be >= 0, got {k}")
    if method not in ("inclusive", "exclusive"):
        raise InvalidInputError(f"unknown quartile method {method!r}")
    if len(values) == 1:
        v = float(values[0])
        return IqrResult(kept=(v,), removed=(), lower_fence=v, upper_fence=v)
    q1, _, q3 = statistics.quantiles(values, n=4, method=method)
    iqr = q3 - q1
    lo = q1 - k * iqr
    hi = q3 + k * iqr
    kept = tuple(float(v) for v in values if lo <= v <= hi)
    removed = tuple(float(v) for v in values if not (lo <= v <= hi))
    return IqrResult(kept=kept, removed=removed, lower_fence=lo, upper_fence=hi)


# --------------------------------------------------------------------------
# ordinary least squares
# --------------------------------------------------------------------------


def ols_fit(x: Sequence[float], y: Sequence[float]) -> LinearModel:
    """Simple least-squares line with an F-test against the flat model.

    F = (SSR/1) / (SSE/(n-2)) with the p-value taken from the F(1, n-2)
    distribution (regularized incomplete beta). A perfect fit (SSE = 0)
    reports F = +inf and p = 0. A constant regressor has no defined slope.
    """
    n = len(x)
    if n != len(y):
        raise InvalidInputError(f"x and y lengths differ: {n} vs {len(y)}")
    if n < 3:
        raise InvalidInputError(f"ols_fit requires n >= 3, got {n}")
    mean_x = math.fsum(x) / n
    mean_y = math.fsum(y) / n
    sxx = math.fsum((xi - mean_x) ** 2 for xi in x)
    if sxx == 0.0:
        raise DegenerateDataError("regressor is constant; slope undefined")
    sxy = math.fsum((xi - mean_x) * (yi - mean_y) for xi, yi in zip(x, y))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    sst = math.fsum((yi - mean_y) ** 2 for yi in y)
    sse = math.fsum((yi - (slope * xi + intercept)) ** 2 for xi, yi in zip(x, y))
    # sst - sse can dip a hair below zero from rounding; it is a sum of squares.
    ssr = max(sst - sse, 0.0)
    if sse == 0.0:
        # Perfect fit (includes constant y, where the flat line is exact).
        return LinearModel(slope=slope, intercept=intercept, n=n, r_squared=1.0,
                           f_statistic=math.inf, p_value=0.0)
    r_squared = ssr / sst if sst > 0 else 1.0
    f_stat = (ssr / 1.0) / (sse / (n - 2))
    p_value = float(_scipy_stats.f.sf(f_stat, 1, n - 2))
    return LinearModel(slope=slope, intercept=intercept, n=n, r_squared=r_squared,
                       f_statistic=f_stat, p_value=p_value)


# --------------------------------------------------------------------------
# usability prediction
# --------------------------------------------------------------------------


def predict_ru(ppl: float, m_use: LinearModel, m_edit: LinearModel,
               m_ignore: LinearModel) -> RuPrediction:
    """Evaluate the three lines at a perplexity and return a simplex.

    The lines produce percentages; each raw value is clamped to [0, 100] and
    the clamped triple is renormalized to probabilities. If clamping zeroes
    everything out there is no distribution to return.
    """
    if not (ppl >= 1.0):
        raise InvalidInputError(f"ppl must be >= 1, got {ppl}")
    raws = (m_use.predict(ppl), m_edit.predict(ppl), m_ignore.predict(ppl))
    raw_sum = raws[0] + raws[1] + raws[2]
    clamped = [min(max(v, 0.0), 100.0) for v in raws]
    total = clamped[0] + clamped[1] + clamped[2]
    if total <= 0.0:
        raise DegenerateDataError(
            f"all predictions clamp to zero at ppl {ppl}; no usable distribution")
    return RuPrediction(
        p_use=clamped[0] / total,
        p_edit=clamped[1] / total,
        p_ignore=clamped[2] / total,
        raw_sum=raw_sum,
    )


def predict_ru_set(ppl: float, coefficients: RuCoefficients) -> RuPrediction:
    """`predict_ru` over a bundled coefficient set."""
    return predict_ru(ppl, coefficients.use, coefficients.edit, coefficients.ignore)


def fit_ru_models(points: Sequence[RuPoint], k: float = DEFAULT_IQR_K,
                  fences: Literal["pooled", "per_model"] = "pooled",
                  method: QuartileMethod = "inclusive") -> RuFitResult:
    """Fit the three usability lines from joined (ppl, action-share) points.

    Outliers are dropped on perplexity with Tukey fences computed either over
    the pooled sample (default; the published fit aggregates all models) or
    per model. The surviving points are always fitted pooled.
    """
    if len(points) < 3:
        raise InvalidInputError(f"need at least 3 points, got {len(points)}")
    if fences == "pooled":
        result = iqr_filter([p.ppl for p in points], k=k, method=method)
        kept = [p for p in points
                if result.lower_fence <= p.ppl <= result.upper_fence]
    elif fences == "per_model":
        kept = []
        by_model: dict[str, list[RuPoint]] = {}
        for p in points:
            by_model.setdefault(p.model_id, []).append(p)
        for group in by_model.values():
            result = iqr_filter([p.ppl for p in group], k=k, method=method)
            kept.extend(p for p in group
                        if result.lower_fence <= p.ppl <= result.upper_fence)
        kept.sort(key=lambda p: points.index(p))
    else:
        raise InvalidInputError(f"unknown fence mode {fences!r}")
    if len(kept) < 3:
        raise InvalidInputError(
            f"only {len(kept)} points remain after outlier filtering; need 3")
    xs = [p.ppl for p in kept]
    coeffs = RuCoefficients(
        use=ols_fit(xs, [p.pct_use for p in kept]),
        edit=ols_fit(xs, [p.pct_edit for p in kept]),
        ignore=ols_fit(xs, [p.pct_ignore for p in kept]),
    )
    return RuFitResult(coefficients=coeffs, n_points=len(kept),
                       n_removed=len(points) - len(kept), fences=fences)
