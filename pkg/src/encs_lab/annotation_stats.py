"""Statistics over rater judgments of response suggestions.

Raters label each (conversation, model) suggestion use / edit / ignore, or
no_suggestion when the model produced nothing; no_suggestion collapses into
ignore for every statistic here, leaving three categories. Items are rated
by a fixed panel (five raters in the source study), so chance-corrected
agreement uses Fleiss' kappa.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Literal, Sequence

from .core_cost import UsageDistribution
from .errors import DegenerateDataError, InvalidInputError


class RuLabel(Enum):
    USE = "use"
    EDIT = "edit"
    IGNORE = "ignore"
    NO_SUGGESTION = "no_suggestion"

    @classmethod
    def parse(cls, text: str) -> "RuLabel":
        key = text.strip().lower().replace(" ", "_").replace("-", "_")
        for member in cls:
            if member.value == key:
                return member
        raise InvalidInputError(f"unknown label {text!r}; expected one of "
                                f"{[m.value for m in cls]}")

    def merged(self) -> "RuLabel":
        """The three-category view: no_suggestion counts as ignore."""
        return RuLabel.IGNORE if self is RuLabel.NO_SUGGESTION else self


# The three categories every statistic operates on, in fixed order.
MERGED_LABELS = (RuLabel.USE, RuLabel.EDIT, RuLabel.IGNORE)


@dataclass(frozen=True)
class AnnotationRecord:
    """One rater's judgment of one (conversation, model) suggestion."""

    conversation_id: str
    model_id: str
    annotator_id: str
    label: RuLabel
    response_token_length: int | None = None

    def __post_init__(self):
        if self.response_token_length is not None and self.response_token_length < 0:
            raise InvalidInputError(
                f"response_token_length must be >= 0, got {self.response_token_length}")


@dataclass(frozen=True)
class AgreementTable:
    """Per-item category counts for agreement statistics.

    rows[i] = (n_use, n_edit, n_ignore) for item i, after the no_suggestion
    merge. Every item must have the same number of judgments.
    """

    rows: tuple[tuple[int, int, int], ...]
    raters_per_item: int

    def __post_init__(self):
        if len(self.rows) < 2:
            raise InvalidInputError(f"need at least 2 items, got {len(self.rows)}")
        if self.raters_per_item < 2:
            raise InvalidInputError(
                f"need at least 2 raters per item, got {self.raters_per_item}")
        for i, row in enumerate(self.rows):
            if any(c < 0 for c in row):
                raise InvalidInputError(f"negative count in item {i}: {row}")
            if sum(row) != self.raters_per_item:
                raise InvalidInputError(
                    f"item {i} has {sum(row)} judgments, expected "
                    f"{self.raters_per_item} (raters per item must be constant)")

    @classmethod
    def from_records(cls, records: Iterable[AnnotationRecord],
                     model_id: str | None = None) -> "AgreementTable":
        """Group judgments by (conversation, model) item, optionally for one
        model only, merging no_suggestion into ignore."""
        items: dict[tuple[str, str], Counter] = {}
        for rec in records:
            if model_id is not None and rec.model_id != model_id:
                continue
            key = (rec.conversation_id, rec.model_id)
            items.setdefault(key, Counter())[rec.label.merged()] += 1
        if not items:
            raise InvalidInputError("no records match")
        rows = []
        for key in sorted(items):
            counts = items[key]
            rows.append(tuple(counts.get(lab, 0) for lab in MERGED_LABELS))
        raters = sum(rows[0])
        return cls(rows=tuple(rows), raters_per_item=raters)


@dataclass(frozen=True)
class MetricRecord:
    """Binary response-quality metrics for one (conversation, model) item."""

    conversation_id: str
    model_id: str
    sensible: bool
    specific: bool
    informative: bool
    helpful: bool
    safe: bool
    role_consistent: bool


METRIC_NAMES = ("sensible", "specific", "informative", "helpful", "safe",
                "role_consistent")


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def label_distribution(records: Iterable[AnnotationRecord],
                       model_id: str) -> UsageDistribution:
    """Proportion of individual judgments per action for one model, with
    no_suggestion merged into ignore. Exact (counts-based) simplex."""
    counts = Counter()
    for rec in records:
        if rec.model_id == model_id:
            counts[rec.label.merged()] += 1
    total = sum(counts.values())
    if total == 0:
        raise InvalidInputError(f"no records for model {model_id!r}")
    return UsageDistribution.from_counts(
        counts.get(RuLabel.USE, 0), counts.get(RuLabel.EDIT, 0),
        counts.get(RuLabel.IGNORE, 0))


def fleiss_kappa(table: AgreementTable) -> float:
    """Fleiss' kappa over the three merged categories.

    kappa = (P_bar - Pe_bar) / (1 - Pe_bar), where P_bar is the mean
    per-item pairwise agreement and Pe_bar the chance agreement from pooled
    category shares. All judgments in a single category force unanimous
    items, which is perfect agreement (1.0).
    """
    n_items = len(table.rows)
    n = table.raters_per_item
    total = n_items * n
    category_share = [sum(row[j] for row in table.rows) / total for j in range(3)]
    pe_bar = math.fsum(share ** 2 for share in category_share)
    p_bar = math.fsum(
        (sum(c * c for c in row) - n) / (n * (n - 1)) for row in table.rows
    ) / n_items
    if pe_bar >= 1.0:
        if p_bar >= 1.0:
            return 1.0
        raise DegenerateDataError(
            "chance agreement is 1 without unanimous items; kappa undefined")
    return (p_bar - pe_bar) / (1.0 - pe_bar)


def pearson_r(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation coefficient.

    Invariant under positive affine maps of either variable and flips sign
    when one variable is negated. A constant series has no correlation.
    """
    n = len(x)
    if n != len(y):
        raise InvalidInputError(f"x and y lengths differ: {n} vs {len(y)}")
    if n < 2:
        raise InvalidInputError(f"pearson_r requires n >= 2, got {n}")
    mean_x = math.fsum(x) / n
    mean_y = math.fsum(y) / n
    sxx = math.fsum((xi - mean_x) ** 2 for xi in x)
    syy = math.fsum((yi - mean_y) ** 2 for yi in y)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateDataError("constant series; correlation undefined")
    sxy = math.fsum((xi - mean_x) * (yi - mean_y) for xi, yi in zip(x, y))
    return sxy / math.sqrt(sxx * syy)


def ru_metric_series(records: Sequence[AnnotationRecord],
                     metrics: Sequence[MetricRecord],
                     ru_label: RuLabel, metric: str,
                     encoding: Literal["per_judgment", "per_item_majority"]
                     = "per_judgment") -> tuple[list[float], list[float]]:
    """Paired series for correlating one action against one quality metric.

    per_judgment: every rater judgment is a point; x is the 0/1 indicator of
    that judgment being `ru_label`, y the item's metric value.
    per_item_majority: one point per item; x indicates the item's modal label
    (ties contribute no point).
    """
    if metric not in METRIC_NAMES:
        raise InvalidInputError(f"unknown metric {metric!r}; expected one of "
                                f"{METRIC_NAMES}")
    ru_label = ru_label.merged()
    metric_by_item = {(m.conversation_id, m.model_id): float(getattr(m, metric))
                      for m in metrics}
    xs: list[float] = []
    ys: list[float] = []
    if encoding == "per_judgment":
        for rec in records:
            key = (rec.conversation_id, rec.model_id)
            if key not in metric_by_item:
                continue
            xs.append(1.0 if rec.label.merged() is ru_label else 0.0)
            ys.append(metric_by_item[key])
    elif encoding == "per_item_majority":
        items: dict[tuple[str, str], Counter] = {}
        for rec in records:
            key = (rec.conversation_id, rec.model_id)
            if key in metric_by_item:
                items.setdefault(key, Counter())[rec.label.merged()] += 1
        for key in sorted(items):
            counts = items[key]
            top = counts.most_common()
            if len(top) > 1 and top[0][1] == top[1][1]:
                continue  # no unique mode
            xs.append(1.0 if top[0][0] is ru_label else 0.0)
            ys.append(metric_by_item[key])
    else:
        raise InvalidInputError(f"unknown encoding {encoding!r}")
    return xs, ys


def correlation_table(records: Sequence[AnnotationRecord],
                      metrics: Sequence[MetricRecord],
                      encoding: Literal["per_judgment", "per_item_majority"]
                      = "per_judgment") -> dict[str, dict[str, float | None]]:
    """Pearson r of each action indicator against each quality metric.

    Cells where either series is constant are None rather than a number.
    """
    out: dict[str, dict[str, float | None]] = {}
    for lab in MERGED_LABELS:
        row: dict[str, float | None] = {}
        for metric in METRIC_NAMES:
            xs, ys = ru_metric_series(records, metrics, lab, metric, encoding)
            try:
                row[metric] = pearson_r(xs, ys)
            except DegenerateDataError:
                row[metric] = None
        out[lab.value] = row
    return out


def length_by_agreement(records: Sequence[AnnotationRecord],
                        min_matching: int) -> dict[str, float]:
    """Mean response token length per modal action, over items where at
    least `min_matching` raters chose the mode.

    Items whose modal label ties are excluded. Requires a constant rater
    count per item and a token length on every qualifying item.
    """
    if min_matching not in (3, 4, 5):
        raise InvalidInputError(f"min_matching must be 3, 4 or 5, got {min_matching}")
    items: dict[tuple[str, str], list[AnnotationRecord]] = {}
    for rec in records:
        items.setdefault((rec.conversation_id, rec.model_id), []).append(rec)
    if not items:
        raise InvalidInputError("no records")
    raters = None
    lengths: dict[RuLabel, list[int]] = {lab: [] for lab in MERGED_LABELS}
    for key in sorted(items):
        group = items[key]
        if raters is None:
            raters = len(group)
        elif len(group) != raters:
            raise InvalidInputError(
                f"item {key} has {len(group)} judgments, others have {raters}")
        counts = Counter(rec.label.merged() for rec in group)
        top = counts.most_common()
        if len(top) > 1 and top[0][1] == top[1][1]:
            continue  # tied mode: agreement bucket undefined
        modal, modal_count = top[0]
        if modal_count < min_matching:
            continue
        length = next((rec.response_token_length for rec in group
                       if rec.response_token_length is not None), None)
        if length is None:
            raise InvalidInputError(f"item {key} carries no response_token_length")
        lengths[modal].append(length)
    return {lab.value: (math.fsum(vals) / len(vals) if vals else math.nan)
            for lab, vals in lengths.items()}
