"""Desk-scale non-vanishing survey over the family of quadratic fields with
discriminant 8d, d odd squarefree, with deterministic parallel evaluation
and CSV/JSON reporting.

Each d gets L(1/2, chi_8d) evaluated once; a row is certified exactly when
|value| > err.  Work is partitioned by d ranges and aggregated in order, so
the report is byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import List, Tuple

from .lfunc import l_value
from .mpreal import DomainError, PrecisionContext, PrecisionExhausted, render

__all__ = [
    "SurveyRecord",
    "SurveyReport",
    "enumerate_odd_squarefree",
    "run_survey",
    "report_to_json",
    "write_csv",
    "write_json",
]

ERR_RENDER_DIGITS = 3


@dataclass(frozen=True)
class SurveyRecord:
    d: int
    disc: int
    l_value: str
    err: str
    certified: bool


@dataclass(frozen=True)
class SurveyReport:
    limit: int
    digits: int
    total: int
    certified_nonzero: int
    undetermined: int
    proportion: Fraction
    records: Tuple[SurveyRecord, ...]


def enumerate_odd_squarefree(limit: int) -> List[int]:
    """All odd squarefree d with 1 <= d <= limit, ascending."""
    if limit < 1:
        raise DomainError("limit must be >= 1")
    flags = bytearray([1]) * (limit + 1)
    for p in range(2, math.isqrt(limit) + 1):
        step = p * p
        for k in range(step, limit + 1, step):
            flags[k] = 0
    return [d for d in range(1, limit + 1, 2) if flags[d]]


def _evaluate_one(d: int, digits: int) -> SurveyRecord:
    ctx = PrecisionContext(digits)
    disc = 8 * d
    try:
        val = l_value(disc, Fraction(1, 2), ctx)
    except PrecisionExhausted:
        return SurveyRecord(d=d, disc=disc, l_value="", err="", certified=False)
    return SurveyRecord(
        d=d,
        disc=disc,
        l_value=render(val, digits),
        err=render(val.err, ERR_RENDER_DIGITS),
        certified=val.is_nonzero(),
    )


def _worker(args: Tuple[Tuple[int, ...], int]) -> List[SurveyRecord]:
    ds, digits = args
    return [_evaluate_one(d, digits) for d in ds]


def run_survey(
    limit: int, ctx: PrecisionContext, worker_count: int = 1
) -> SurveyReport:
    """Evaluate the family up to ``limit``; per-d precision exhaustion is
    recorded as undetermined, never aborts the run."""
    if worker_count < 1:
        raise DomainError("worker_count must be >= 1")
    ds = enumerate_odd_squarefree(limit)
    digits = ctx.digits
    if worker_count == 1 or len(ds) <= 1:
        records = [_evaluate_one(d, digits) for d in ds]
    else:
        chunk = max(1, math.ceil(len(ds) / (worker_count * 4)))
        batches = [
            (tuple(ds[i : i + chunk]), digits) for i in range(0, len(ds), chunk)
        ]
        with Pool(processes=worker_count) as pool:
            chunks = pool.map(_worker, batches)
        records = [rec for batch in chunks for rec in batch]
    certified = sum(1 for r in records if r.certified)
    total = len(records)
    return SurveyReport(
        limit=limit,
        digits=digits,
        total=total,
        certified_nonzero=certified,
        undetermined=total - certified,
        proportion=Fraction(certified, total) if total else Fraction(0),
        records=tuple(records),
    )


def report_to_json(report: SurveyReport) -> dict:
    return {
        "summary": {
            "limit": report.limit,
            "digits": report.digits,
            "total": report.total,
            "certified_nonzero": report.certified_nonzero,
            "undetermined": report.undetermined,
            "proportion": str(report.proportion),
        },
        "records": [asdict(r) for r in report.records],
    }


def write_json(report: SurveyReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report_to_json(report), fh, indent=2)
        fh.write("\n")


def write_csv(report: SurveyReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["d", "disc", "l_value", "err", "certified"])
        for r in report.records:
            writer.writerow(
                [r.d, r.disc, r.l_value, r.err, "true" if r.certified else "false"]
            )
