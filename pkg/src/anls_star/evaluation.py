"""Batch evaluation of prediction files against ground-truth datasets.

Every ground-truth sample produces exactly one result.  Samples without a
usable prediction (missing line, or a line whose value cannot be converted)
count as failures and score 0.0.  The dataset score is the arithmetic mean
over all ground-truth samples, matching the averaging convention of the
classic string-level metric this one extends; the convention is echoed in
the report so downstream tooling can tell.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import AnlsStarError, DuplicateId, EmptyGroundTruth, SinkWriteError
from .metric import DEFAULT_MAX_DEPTH, score_with_breakdown
from .similarity import DEFAULT_CONFIG, SimilarityConfig
from .tree import (
    DocumentSet,
    Role,
    iter_record_lines,
    parse_record,
    tree_from_value,
)

logger = logging.getLogger(__name__)

STATUS_SCORED = "scored"
STATUS_MISSING = "missing_prediction"
STATUS_PARSE_ERROR = "parse_error"

AGGREGATION = "mean_per_sample"

REPORT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class SampleResult:
    """Outcome for one ground-truth sample."""

    sample_id: str
    score: float
    s: float
    l: int
    status: str
    per_key: dict[str, tuple[float, int]] | None = None

    def to_mapping(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.sample_id,
            "score": self.score,
            "s": self.s,
            "l": self.l,
            "status": self.status,
        }
        if self.per_key is not None:
            out["per_key"] = {k: {"s": s, "l": l} for k, (s, l) in self.per_key.items()}
        return out

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "SampleResult":
        per_key = None
        if "per_key" in mapping and mapping["per_key"] is not None:
            per_key = {k: (v["s"], v["l"]) for k, v in mapping["per_key"].items()}
        return cls(
            sample_id=mapping["id"],
            score=mapping["score"],
            s=mapping["s"],
            l=mapping["l"],
            status=mapping["status"],
            per_key=per_key,
        )


@dataclass(frozen=True)
class EvalReport:
    """Dataset-level aggregate over all ground-truth samples."""

    mean_score: float
    sample_count: int
    failed_count: int
    results: tuple[SampleResult, ...]
    config_echo: SimilarityConfig

    def to_mapping(self) -> dict[str, Any]:
        return {
            "mean_score": self.mean_score,
            "sample_count": self.sample_count,
            "failed_count": self.failed_count,
            "config_echo": {
                "tau": self.config_echo.tau,
                "case_fold": self.config_echo.case_fold,
                "trim": self.config_echo.trim,
                "aggregation": AGGREGATION,
            },
            "results": [result.to_mapping() for result in self.results],
        }

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "EvalReport":
        echo = mapping["config_echo"]
        return cls(
            mean_score=mapping["mean_score"],
            sample_count=mapping["sample_count"],
            failed_count=mapping["failed_count"],
            results=tuple(SampleResult.from_mapping(r) for r in mapping["results"]),
            config_echo=SimilarityConfig(
                tau=echo["tau"], case_fold=echo["case_fold"], trim=echo["trim"]
            ),
        )


def evaluate(
    gt: DocumentSet,
    pred: DocumentSet,
    config: SimilarityConfig = DEFAULT_CONFIG,
    *,
    jobs: int = 1,
    breakdown: bool = False,
    pred_errors: Mapping[str, str] | None = None,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> EvalReport:
    """Score every ground-truth sample against its prediction.

    ``pred_errors`` maps sample ids whose prediction existed but could not
    be converted to a tree; those samples fail with status "parse_error".
    ``jobs`` > 1 evaluates samples concurrently; results are merged in
    ground-truth order, so the report is identical to a sequential run.
    """
    if len(gt) == 0:
        raise EmptyGroundTruth("the ground-truth set has no samples")
    errors = dict(pred_errors or {})
    pred_map = pred.mapping()
    gt_ids = set(gt.ids())
    for extra_id in pred.ids():
        if extra_id not in gt_ids:
            logger.warning("prediction id %r has no ground-truth sample; ignored", extra_id)

    def one(item: tuple[str, Any]) -> SampleResult:
        sample_id, g = item
        if sample_id in errors:
            return SampleResult(sample_id, 0.0, 0.0, 0, STATUS_PARSE_ERROR)
        p = pred_map.get(sample_id)
        if p is None:
            return SampleResult(sample_id, 0.0, 0.0, 0, STATUS_MISSING)
        bd = score_with_breakdown(g, p, config, max_depth=max_depth)
        s_exact = sum((pair.s for pair in bd.per_key.values()), Fraction(0))
        l_total = sum(pair.l for pair in bd.per_key.values())
        per_key = None
        if breakdown:
            per_key = {k: (float(pair.s), pair.l) for k, pair in bd.per_key.items()}
        return SampleResult(sample_id, bd.total, float(s_exact), l_total, STATUS_SCORED, per_key)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            results = tuple(executor.map(one, gt.samples))
    else:
        results = tuple(one(item) for item in gt.samples)

    mean_score = sum(result.score for result in results) / len(results)
    failed_count = sum(1 for result in results if result.status != STATUS_SCORED)
    return EvalReport(mean_score, len(results), failed_count, results, config)


def records_from_text(text: str, *, lenient: bool = False) -> tuple[list[tuple[str, Any]], list[str]]:
    """Split a JSONL document into (id, raw value) records.

    In strict mode a bad line raises; in lenient mode it is reported in the
    returned warning list and skipped (the affected sample will then count
    as missing).
    """
    records: list[tuple[str, Any]] = []
    warnings: list[str] = []
    for line_no, line in iter_record_lines(text):
        try:
            records.append(parse_record(line))
        except AnlsStarError as exc:
            if not lenient:
                raise type(exc)(f"line {line_no}: {exc}") from None
            warnings.append(f"line {line_no}: {exc}")
    return records, warnings


def ground_truth_set_from_records(records: Sequence[tuple[str, Any]]) -> DocumentSet:
    """Build the ground-truth set; any bad record raises."""
    return DocumentSet(
        tuple((sample_id, tree_from_value(value, Role.GROUND_TRUTH)) for sample_id, value in records)
    )


def prediction_set_from_records(
    records: Sequence[tuple[str, Any]],
) -> tuple[DocumentSet, dict[str, str]]:
    """Build the prediction set, tolerating per-record conversion failures.

    Returns the set of convertible predictions plus {id: error message} for
    records that parsed as JSON but are not valid prediction trees.
    """
    samples: list[tuple[str, Any]] = []
    errors: dict[str, str] = {}
    seen: set[str] = set()
    for sample_id, value in records:
        if sample_id in seen:
            raise DuplicateId(f"duplicate sample id {sample_id!r}")
        seen.add(sample_id)
        try:
            samples.append((sample_id, tree_from_value(value, Role.PREDICTION)))
        except AnlsStarError as exc:
            errors[sample_id] = str(exc)
    return DocumentSet(tuple(samples)), errors


def evaluate_files(
    gt_path: str | Path,
    pred_path: str | Path,
    config: SimilarityConfig = DEFAULT_CONFIG,
    *,
    jobs: int = 1,
    breakdown: bool = False,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> tuple[EvalReport, list[str]]:
    """Evaluate two JSONL files; returns the report and any line warnings."""
    gt_records, _ = records_from_text(Path(gt_path).read_text(encoding="utf-8"))
    pred_records, warnings = records_from_text(
        Path(pred_path).read_text(encoding="utf-8"), lenient=True
    )
    gt = ground_truth_set_from_records(gt_records)
    pred, pred_errors = prediction_set_from_records(pred_records)
    report = evaluate(
        gt,
        pred,
        config,
        jobs=jobs,
        breakdown=breakdown,
        pred_errors=pred_errors,
        max_depth=max_depth,
    )
    return report, warnings


def render_report(report: EvalReport, fmt: str = "json") -> str:
    """Serialize a report deterministically: same report, same bytes."""
    if fmt == "json":
        return json.dumps(report.to_mapping(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "score", "status"])
        for result in report.results:
            writer.writerow([result.sample_id, repr(result.score), result.status])
        writer.writerow(
            [
                "__mean__",
                repr(report.mean_score),
                f"samples={report.sample_count} failed={report.failed_count}",
            ]
        )
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")


def write_report(report: EvalReport, destination, fmt: str = "json") -> None:
    """Write a rendered report to a path or writable file object."""
    payload = render_report(report, fmt)
    try:
        if hasattr(destination, "write"):
            destination.write(payload)
        else:
            Path(destination).write_text(payload, encoding="utf-8")
    except OSError as exc:
        raise SinkWriteError(f"cannot write report to {destination}: {exc}") from exc
