"""Label handling, agreement statistics, and quality correlations."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from encs_lab.annotation_stats import (AgreementTable, AnnotationRecord,
                                       MetricRecord, RuLabel,
                                       correlation_table, fleiss_kappa,
                                       label_distribution,
                                       length_by_agreement, pearson_r,
                                       ru_metric_series)
from encs_lab.errors import DegenerateDataError, InvalidInputError


def test_label_parsing():
    assert RuLabel.parse("use") is RuLabel.USE
    assert RuLabel.parse("Edit") is RuLabel.EDIT
    assert RuLabel.parse("IGNORE") is RuLabel.IGNORE
    assert RuLabel.parse("No Suggestion") is RuLabel.NO_SUGGESTION
    assert RuLabel.parse("no-suggestion") is RuLabel.NO_SUGGESTION
    with pytest.raises(InvalidInputError):
        RuLabel.parse("maybe")


def test_label_merge():
    assert RuLabel.NO_SUGGESTION.merged() is RuLabel.IGNORE
    assert RuLabel.USE.merged() is RuLabel.USE


def _rec(conv, model, annotator, label, length=None):
    return AnnotationRecord(conv, model, annotator, RuLabel.parse(label), length)


def test_label_distribution_merges_no_suggestion():
    records = [
        _rec("c1", "m", "a1", "use"),
        _rec("c2", "m", "a1", "use"),
        _rec("c3", "m", "a1", "use"),
        _rec("c4", "m", "a1", "use"),
        _rec("c5", "m", "a1", "no_suggestion"),
    ]
    d = label_distribution(records, "m")
    assert (d.p_use, d.p_edit, d.p_ignore) == (0.8, 0.0, 0.2)


def test_label_distribution_model_filter():
    records = [
        _rec("c1", "a", "a1", "use"),
        _rec("c1", "b", "a1", "ignore"),
    ]
    d = label_distribution(records, "b")
    assert d.p_ignore == 1.0
    with pytest.raises(InvalidInputError):
        label_distribution(records, "zzz")
    with pytest.raises(InvalidInputError):
        label_distribution([], "a")


def test_agreement_table_from_records():
    records = [
        _rec("c1", "m", "a1", "use"), _rec("c1", "m", "a2", "use"),
        _rec("c2", "m", "a1", "use"), _rec("c2", "m", "a2", "edit"),
    ]
    table = AgreementTable.from_records(records)
    assert table.raters_per_item == 2
    assert table.rows == ((2, 0, 0), (1, 1, 0))


def test_agreement_table_requires_constant_raters():
    records = [
        _rec("c1", "m", "a1", "use"), _rec("c1", "m", "a2", "use"),
        _rec("c2", "m", "a1", "use"),
    ]
    with pytest.raises(InvalidInputError):
        AgreementTable.from_records(records)


def test_fleiss_kappa_hand_oracle():
    # two items, two raters: (use,use) and (use,edit)
    # mean observed agreement 0.5, chance agreement 0.625, kappa = -1/3
    table = AgreementTable(rows=((2, 0, 0), (1, 1, 0)), raters_per_item=2)
    assert fleiss_kappa(table) == pytest.approx(-1.0 / 3.0, abs=1e-12)


def test_fleiss_kappa_unanimous_is_one():
    table = AgreementTable(rows=((3, 0, 0), (3, 0, 0), (0, 0, 3)),
                           raters_per_item=3)
    assert fleiss_kappa(table) == 1.0


def test_fleiss_kappa_single_category_everywhere():
    # every judgment in one category: chance and observed agreement are both
    # 1, reported as perfect agreement rather than 0/0
    table = AgreementTable(rows=((3, 0, 0), (3, 0, 0)), raters_per_item=3)
    assert fleiss_kappa(table) == 1.0


def test_fleiss_kappa_item_order_invariant():
    a = AgreementTable(rows=((2, 1, 0), (0, 1, 2), (1, 1, 1)), raters_per_item=3)
    b = AgreementTable(rows=((1, 1, 1), (2, 1, 0), (0, 1, 2)), raters_per_item=3)
    assert fleiss_kappa(a) == pytest.approx(fleiss_kappa(b), abs=1e-15)


def test_fleiss_kappa_from_merged_labels():
    # no_suggestion folds into ignore before the table is built
    records = [
        _rec("c1", "m", "a1", "ignore"), _rec("c1", "m", "a2", "no_suggestion"),
        _rec("c2", "m", "a1", "use"), _rec("c2", "m", "a2", "use"),
    ]
    table = AgreementTable.from_records(records)
    assert table.rows == ((0, 0, 2), (2, 0, 0))
    assert fleiss_kappa(table) == 1.0


def test_agreement_table_validation():
    with pytest.raises(InvalidInputError):
        AgreementTable(rows=((2, 0, 0),), raters_per_item=2)  # one item
    with pytest.raises(InvalidInputError):
        AgreementTable(rows=((1, 0, 0), (1, 0, 0)), raters_per_item=1)
    with pytest.raises(InvalidInputError):
        AgreementTable(rows=((2, 0, 0), (1, 1, 1)), raters_per_item=2)


def test_pearson_hand_oracle():
    assert pearson_r([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, abs=1e-12)
    assert pearson_r([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, abs=1e-12)
    assert pearson_r([1, 2, 3], [6, 4, 2]) == pytest.approx(-1.0, abs=1e-12)


@given(a=st.floats(min_value=0.1, max_value=10.0),
       b=st.floats(min_value=-5.0, max_value=5.0))
@settings(max_examples=50, deadline=None)
def test_pearson_affine_invariance(a, b):
    x = [1.0, 2.0, 4.0, 7.0]
    y = [2.0, 1.0, 5.0, 6.0]
    base = pearson_r(x, y)
    scaled = pearson_r([a * v + b for v in x], y)
    assert scaled == pytest.approx(base, abs=1e-9)
    flipped = pearson_r([-a * v + b for v in x], y)
    assert flipped == pytest.approx(-base, abs=1e-9)


def test_pearson_degenerate():
    with pytest.raises(DegenerateDataError):
        pearson_r([1, 1, 1], [1, 2, 3])
    with pytest.raises(InvalidInputError):
        pearson_r([1], [2])
    with pytest.raises(InvalidInputError):
        pearson_r([1, 2], [1, 2, 3])


def _metric(conv, model, helpful, safe=True):
    return MetricRecord(conv, model, sensible=True, specific=True,
                        informative=True, helpful=helpful, safe=safe,
                        role_consistent=True)


def test_ru_metric_series_per_judgment():
    records = [
        _rec("c1", "m", "a1", "use"), _rec("c1", "m", "a2", "edit"),
        _rec("c2", "m", "a1", "ignore"), _rec("c2", "m", "a2", "use"),
    ]
    metrics = [_metric("c1", "m", True), _metric("c2", "m", False)]
    xs, ys = ru_metric_series(records, metrics, RuLabel.USE, "helpful")
    # one (x, y) pair per judgment, y repeating the item's metric value
    assert xs == [1.0, 0.0, 0.0, 1.0]
    assert ys == [1.0, 1.0, 0.0, 0.0]


def test_ru_metric_series_skips_items_without_metrics():
    records = [
        _rec("c1", "m", "a1", "use"),
        _rec("c9", "m", "a1", "edit"),  # no metric row for c9
    ]
    metrics = [_metric("c1", "m", True)]
    xs, ys = ru_metric_series(records, metrics, RuLabel.USE, "helpful")
    assert xs == [1.0]
    assert ys == [1.0]


def test_ru_metric_series_majority_encoding():
    records = [
        _rec("c1", "m", "a1", "use"), _rec("c1", "m", "a2", "use"),
        _rec("c2", "m", "a1", "use"), _rec("c2", "m", "a2", "edit"),  # tie
    ]
    metrics = [_metric("c1", "m", True), _metric("c2", "m", False)]
    xs, ys = ru_metric_series(records, metrics, RuLabel.USE, "helpful",
                              encoding="per_item_majority")
    # the tied item contributes no point; the unanimous one stays
    assert xs == [1.0]
    assert ys == [1.0]


def test_ru_metric_series_no_suggestion_counts_as_ignore():
    records = [
        _rec("c1", "m", "a1", "no_suggestion"),
        _rec("c2", "m", "a1", "ignore"),
    ]
    metrics = [_metric("c1", "m", True), _metric("c2", "m", False)]
    xs, ys = ru_metric_series(records, metrics, RuLabel.NO_SUGGESTION, "helpful")
    assert xs == [1.0, 1.0]


def test_ru_metric_series_validation():
    records = [_rec("c1", "m", "a1", "use")]
    metrics = [_metric("c1", "m", True)]
    with pytest.raises(InvalidInputError):
        ru_metric_series(records, metrics, RuLabel.USE, "sparkle")
    with pytest.raises(InvalidInputError):
        ru_metric_series(records, metrics, RuLabel.USE, "helpful",
                         encoding="per_galaxy")


def test_correlation_table_handles_degenerate_cells():
    records = [
        _rec("c1", "m", "a1", "use"), _rec("c2", "m", "a1", "edit"),
        _rec("c3", "m", "a1", "use"),
    ]
    metrics = [
        _metric("c1", "m", True), _metric("c2", "m", False),
        _metric("c3", "m", True),
    ]
    table = correlation_table(records, metrics)
    # "safe" is constant True here, so its correlation is undefined
    assert table["use"]["safe"] is None
    assert table["use"]["helpful"] == pytest.approx(1.0)
    assert table["edit"]["helpful"] == pytest.approx(-1.0)
    assert set(table) == {"use", "edit", "ignore"}


def _item(conv, labels, length):
    return [_rec(conv, "m", f"a{i}", lab, length)
            for i, lab in enumerate(labels)]


def test_length_by_agreement_means_per_modal_action():
    records = []
    records += _item("c1", ["use"] * 5, 120)                # use, 5 matching
    records += _item("c2", ["use"] * 4 + ["edit"], 80)      # use, 4 matching
    records += _item("c3", ["edit"] * 3 + ["use"] * 2, 60)  # edit, 3 matching
    records += _item("c4", ["use", "use", "edit", "edit", "ignore"], 999)  # tie
    out = length_by_agreement(records, min_matching=3)
    assert out["use"] == pytest.approx(100.0)  # mean of 120 and 80
    assert out["edit"] == pytest.approx(60.0)
    assert math.isnan(out["ignore"])  # no qualifying item


def test_length_by_agreement_min_matching_filter():
    records = _item("c1", ["use"] * 5, 100) + _item("c2", ["use"] * 4 + ["edit"], 50)
    out = length_by_agreement(records, min_matching=5)
    assert out["use"] == pytest.approx(100.0)  # the 4-of-5 item is excluded
    with pytest.raises(InvalidInputError):
        length_by_agreement(records, min_matching=2)


def test_length_by_agreement_data_requirements():
    no_lengths = _item("c1", ["use"] * 3, None) + _item("c2", ["use"] * 3, None)
    with pytest.raises(InvalidInputError):
        length_by_agreement(no_lengths, min_matching=3)
    uneven = _item("c1", ["use"] * 3, 10) + _item("c2", ["use"] * 4, 10)
    with pytest.raises(InvalidInputError):
        length_by_agreement(uneven, min_matching=3)
    with pytest.raises(InvalidInputError):
        length_by_agreement([], min_matching=3)
