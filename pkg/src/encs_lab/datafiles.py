"""Loaders for the tabular inputs of fitting and annotation statistics.

Annotation file: CSV with header conversation_id, model_id, annotator_id,
label, token_length. Labels are case-insensitive {use, edit, ignore,
no_suggestion}; token_length may be empty. One row per judgment, and a
(conversation, model, annotator) key may appear only once.

Log-prob file: JSON Lines, one record per (model_id, conversation_id) with
either "probs": [per-token probabilities] or "missing": true.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from collections import Counter
from typing import Sequence

from .annotation_stats import AnnotationRecord, MERGED_LABELS, METRIC_NAMES, \
    MetricRecord, RuLabel
from .errors import InvalidInputError
from .usability import PerplexitySample, RuPoint, TokenProbSequence, perplexity

ANNOTATION_COLUMNS = ("conversation_id", "model_id", "annotator_id", "label",
                      "token_length")


def load_annotations(path: str | Path) -> list[AnnotationRecord]:
    p = Path(path)
    if not p.exists():
        raise InvalidInputError(f"annotation file not found: {p}")
    records: list[AnnotationRecord] = []
    seen: set[tuple[str, str, str]] = set()
    with p.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in ANNOTATION_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise InvalidInputError(
                f"annotation file {p} lacks columns: {', '.join(missing)}")
        for lineno, row in enumerate(reader, start=2):
            key = (row["conversation_id"], row["model_id"], row["annotator_id"])
            if key in seen:
                raise InvalidInputError(
                    f"{p}:{lineno}: duplicate judgment for {key}")
            seen.add(key)
            raw_len = (row.get("token_length") or "").strip()
            records.append(AnnotationRecord(
                conversation_id=row["conversation_id"],
                model_id=row["model_id"],
                annotator_id=row["annotator_id"],
                label=RuLabel.parse(row["label"]),
                response_token_length=int(raw_len) if raw_len else None,
            ))
    if not records:
        raise InvalidInputError(f"annotation file {p} holds no rows")
    return records


def load_logprobs(path: str | Path) -> list[PerplexitySample]:
    """Perplexity per (model, conversation) from a per-token probability
    JSONL file; records flagged missing become missing samples."""
    p = Path(path)
    if not p.exists():
        raise InvalidInputError(f"log-prob file not found: {p}")
    samples: list[PerplexitySample] = []
    seen: set[tuple[str, str]] = set()
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"{p}:{lineno}: invalid JSON: {exc}") from None
            for field in ("model_id", "conversation_id"):
                if field not in rec:
                    raise InvalidInputError(f"{p}:{lineno}: missing field {field!r}")
            key = (rec["model_id"], rec["conversation_id"])
            if key in seen:
                raise InvalidInputError(f"{p}:{lineno}: duplicate record for {key}")
            seen.add(key)
            if rec.get("missing"):
                samples.append(PerplexitySample(model_id=rec["model_id"],
                                                conversation_id=rec["conversation_id"],
                                                ppl=None, missing=True))
                continue
            if "probs" not in rec:
                raise InvalidInputError(
                    f"{p}:{lineno}: record needs probs or missing=true")
            seq = TokenProbSequence(probs=tuple(rec["probs"]))
            samples.append(PerplexitySample(model_id=rec["model_id"],
                                            conversation_id=rec["conversation_id"],
                                            ppl=perplexity(seq), missing=False))
    if not samples:
        raise InvalidInputError(f"log-prob file {p} holds no records")
    return samples


def build_ru_points(annotations: Sequence[AnnotationRecord],
                    samples: Sequence[PerplexitySample]) -> list[RuPoint]:
    """Join judgments with perplexities into regression points.

    One point per (model, conversation) item that has both a present
    perplexity sample and at least one judgment; the targets are the share
    of that item's raters choosing each action, in percent. Items lacking a
    perplexity (missing or unsampled) are skipped. Output order is sorted by
    (model_id, conversation_id) so fits are deterministic.
    """
    ppl_by_item: dict[tuple[str, str], float] = {}
    for s in samples:
        if not s.missing:
            ppl_by_item[(s.model_id, s.conversation_id)] = s.ppl
    counts_by_item: dict[tuple[str, str], Counter] = {}
    for rec in annotations:
        key = (rec.model_id, rec.conversation_id)
        counts_by_item.setdefault(key, Counter())[rec.label.merged()] += 1
    points: list[RuPoint] = []
    for key in sorted(counts_by_item):
        if key not in ppl_by_item:
            continue
        counts = counts_by_item[key]
        total = sum(counts.values())
        shares = [counts.get(lab, 0) / total * 100.0 for lab in MERGED_LABELS]
        points.append(RuPoint(model_id=key[0], ppl=ppl_by_item[key],
                              pct_use=shares[0], pct_edit=shares[1],
                              pct_ignore=shares[2]))
    return points


METRIC_COLUMNS = ("conversation_id", "model_id") + METRIC_NAMES

_TRUTHY = {"1", "true", "yes", "y"}
_FALSY = {"0", "false", "no", "n"}


def load_metrics(path: str | Path) -> list[MetricRecord]:
    """Binary quality-metric CSV: conversation_id, model_id plus one 0/1
    column per metric."""
    p = Path(path)
    if not p.exists():
        raise InvalidInputError(f"metric file not found: {p}")
    records: list[MetricRecord] = []
    with p.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in METRIC_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise InvalidInputError(f"metric file {p} lacks columns: {', '.join(missing)}")
        for lineno, row in enumerate(reader, start=2):
            flags = {}
            for name in METRIC_NAMES:
                raw = row[name].strip().lower()
                if raw in _TRUTHY:
                    flags[name] = True
                elif raw in _FALSY:
                    flags[name] = False
                else:
                    raise InvalidInputError(
                        f"{p}:{lineno}: column {name} must be boolean-like, got {raw!r}")
            records.append(MetricRecord(conversation_id=row["conversation_id"],
                                        model_id=row["model_id"], **flags))
    if not records:
        raise InvalidInputError(f"metric file {p} holds no rows")
    return records
