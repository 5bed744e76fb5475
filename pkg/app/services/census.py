"""
Batch drivers behind `enumerate` and `crosscheck`.

The vector space {0..max}^6 is split by leading coordinate; slices run in a
process pool when more than one job is requested and are reassembled in
lexicographic order, so output never depends on completion order.
"""

from __future__ import annotations

import asyncio
import csv
import io
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

from app.models.schemas import (
    CrosscheckReport,
    Discrepancy,
    EnumerationRow,
    ExponentVector,
    Method,
    RunConfig,
)
from app.services.conditions import ConditionEngine
from app.services.deciders import agree, decide, decide_all
from app.services.numeric_classifier import default_engine

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "p1", "p2", "p3", "p4", "p5", "p6",
    "acm", "method", "condition",
    "witness_i", "witness_j", "witness_l", "witness_m",
]

NUMERIC_METHODS = [Method.CLOSED_FORM, Method.WITNESS, Method.CHORDAL]
HOMOLOGY_METHODS = [Method.LINEAR_RESOLUTION, Method.REISNER]


def iter_vectors(max_value: int, leading: Optional[int] = None) -> Iterator[ExponentVector]:
    """{0..max}^6 in lexicographic order, optionally only one leading coordinate."""
    if max_value < 0:
        raise ValueError(f"max must be nonnegative, got {max_value}")
    firsts = range(max_value + 1) if leading is None else [leading]
    for first in firsts:
        for rest in product(range(max_value + 1), repeat=5):
            yield ExponentVector.of(first, *rest)


def _engine(conditions_path: Optional[str]) -> ConditionEngine:
    return ConditionEngine(conditions_path) if conditions_path else default_engine()


def _enumerate_slice(
    leading: int, max_value: int, method: Method, config: RunConfig
) -> List[EnumerationRow]:
    engine = _engine(config.conditions_path)
    rows = []
    for p in iter_vectors(max_value, leading):
        verdict = decide(p, method, config, engine)
        rows.append(
            EnumerationRow(
                p=p.p,
                acm=verdict.acm,
                method=method,
                condition=verdict.condition.condition if verdict.condition else None,
                witness=verdict.witness,
            )
        )
    return rows


def _crosscheck_slice(
    leading: int, max_value: int, methods: List[Method], config: RunConfig
) -> Dict[str, Any]:
    engine = _engine(config.conditions_path)
    total = acm_count = 0
    skipped: Counter = Counter()
    discrepancies = []
    for p in iter_vectors(max_value, leading):
        total += 1
        outcomes = decide_all(p, methods, config, engine)
        verdicts = {o.method.value: o.verdict.acm for o in outcomes if o.verdict is not None}
        skipped.update(o.method.value for o in outcomes if o.skipped)
        if not agree(outcomes):
            errors = {o.method.value: o.error for o in outcomes if o.error}
            logger.error(f"Methods disagree on ({p}): {verdicts} {errors}")
            discrepancies.append(Discrepancy(p=p.p, verdicts=verdicts, errors=errors))
        elif any(verdicts.values()):
            acm_count += 1
    return {
        "total": total,
        "acm_count": acm_count,
        "skipped": dict(skipped),
        "discrepancies": discrepancies,
    }


async def _run_partitioned(
    work: Callable[..., Any], max_value: int, jobs: int, *args: Any
) -> List[Any]:
    """One call of `work` per leading coordinate, results in coordinate order."""
    leads = range(max_value + 1)
    if jobs <= 1:
        return [work(lead, max_value, *args) for lead in leads]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [loop.run_in_executor(pool, work, lead, max_value, *args) for lead in leads]
        return list(await asyncio.gather(*tasks))


async def enumerate_rows(
    max_value: int,
    method: Method = Method.CLOSED_FORM,
    config: Optional[RunConfig] = None,
) -> List[EnumerationRow]:
    if max_value < 0:
        raise ValueError(f"max must be nonnegative, got {max_value}")
    config = config or RunConfig(methods=[method])
    logger.info(f"Enumerating {(max_value + 1) ** 6} vectors with {method.value} ({config.jobs} jobs)")
    slices = await _run_partitioned(_enumerate_slice, max_value, config.jobs, method, config)
    return [row for chunk in slices for row in chunk]


async def crosscheck(
    max_value: int,
    with_homology: bool = False,
    config: Optional[RunConfig] = None,
) -> CrosscheckReport:
    """Compare the deciders on every vector with entries <= max_value."""
    if max_value < 0:
        raise ValueError(f"max must be nonnegative, got {max_value}")
    methods = NUMERIC_METHODS + (HOMOLOGY_METHODS if with_homology else [])
    config = config or RunConfig(methods=methods)
    slices = await _run_partitioned(_crosscheck_slice, max_value, config.jobs, methods, config)

    skipped: Counter = Counter()
    discrepancies: List[Discrepancy] = []
    for chunk in slices:
        skipped.update(chunk["skipped"])
        discrepancies.extend(chunk["discrepancies"])
    report = CrosscheckReport(
        max_value=max_value,
        total=sum(chunk["total"] for chunk in slices),
        methods=methods,
        acm_count=sum(chunk["acm_count"] for chunk in slices),
        discrepancies=discrepancies,
        skipped=dict(sorted(skipped.items())),
    )
    logger.info(
        f"Crosscheck up to {max_value}: {report.total} vectors, "
        f"{len(report.discrepancies)} discrepancies"
    )
    return report


def rows_to_csv(rows: Sequence[EnumerationRow]) -> str:
    """Header plus one line per row; absent fields are empty strings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        witness = row.witness.as_tuple() if row.witness else ("", "", "", "")
        writer.writerow(
            [*row.p, "true" if row.acm else "false", row.method.value, row.condition or "", *witness]
        )
    return buffer.getvalue()
