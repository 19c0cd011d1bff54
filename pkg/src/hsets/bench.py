"""Timing harness for membership queries and operations.

Operands are shuffled dense integer ranges; the two operands of an operation
are disjoint.  Each case is timed ``repeats`` times on fresh operands and the
median wall time is reported.
"""

from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .core import HSet
from .operations import Semantic, difference, intersection, setsum, symmdiff, union
from .relations import inclusion_batch

__all__ = ["BenchCase", "CSV_HEADER", "bench", "grid_cases", "rows_to_csv", "run_case"]

CSV_HEADER = ("kind", "op", "semantic", "size1", "size2", "batch", "median_ns")

_OPS = {
    "intersection": intersection,
    "union": union,
    "sum": setsum,
    "difference": difference,
    "symmdiff": symmdiff,
}


@dataclass(frozen=True)
class BenchCase:
    kind: str  # "inclusion" or "operation"
    op: str = "in"
    semantic: str = "refer"
    size1: int = 1024
    size2: int = 16
    batch: int = 100
    repeats: int = 21
    generalized: bool = True

    def __post_init__(self):
        if self.kind not in ("inclusion", "operation"):
            raise ValueError(f"unknown benchmark kind {self.kind!r}")
        if self.kind == "operation" and self.op not in _OPS:
            raise ValueError(f"unknown operation {self.op!r}; pick one of {sorted(_OPS)}")
        Semantic(self.semantic)
        if min(self.size1, self.size2, self.batch) < 0:
            raise ValueError("sizes must be >= 0")
        if self.repeats < 3:
            raise ValueError("repeats must be >= 3")


def _make(values: np.ndarray, generalized: bool, rng: np.random.Generator) -> HSet:
    ids = values.tolist()
    if not generalized:
        return HSet(ids)
    return HSet(ids, rng.integers(1, 5, size=len(ids)).tolist())


def _time_inclusion(case: BenchCase, rng: np.random.Generator) -> list[int]:
    x = _make(rng.permutation(case.size1), False, rng)
    samples = []
    for _ in range(case.repeats + 1):
        # half the queries hit, half miss
        queries = rng.integers(0, 2 * max(case.size1, 1), size=case.batch).tolist()
        t0 = time.perf_counter_ns()
        inclusion_batch(queries, x)
        samples.append(time.perf_counter_ns() - t0)
    return samples[1:]  # first run warms caches


def _time_operation(case: BenchCase, rng: np.random.Generator) -> list[int]:
    func = _OPS[case.op]
    perm = rng.permutation(case.size1 + case.size2)
    proto1 = _make(perm[: case.size1], case.generalized, rng)
    h2 = _make(perm[case.size1 :], case.generalized, rng)
    samples = []
    for _ in range(case.repeats + 1):
        h1 = proto1.clone()
        t0 = time.perf_counter_ns()
        func(h1, h2, semantic=case.semantic)
        samples.append(time.perf_counter_ns() - t0)
    return samples[1:]


def run_case(case: BenchCase, rng: np.random.Generator | None = None) -> int:
    """Median wall time of one case, in nanoseconds."""
    if rng is None:
        rng = np.random.default_rng(0)
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        if case.kind == "inclusion":
            samples = _time_inclusion(case, rng)
        else:
            samples = _time_operation(case, rng)
    finally:
        if gc_was_enabled:
            gc.enable()
    return int(statistics.median(samples))


def _row(case: BenchCase, median_ns: int) -> dict:
    return {
        "kind": case.kind,
        "op": case.op if case.kind == "operation" else "in",
        "semantic": case.semantic if case.kind == "operation" else "",
        "size1": case.size1,
        "size2": case.size2 if case.kind == "operation" else 0,
        "batch": case.batch if case.kind == "inclusion" else 0,
        "median_ns": median_ns,
    }


def grid_cases(base: BenchCase, grid: Sequence[int]) -> list[BenchCase]:
    """One case per first-operand size."""
    return [replace(base, size1=int(s)) for s in grid]


def bench(cases: Iterable[BenchCase], seed: int = 0) -> list[dict]:
    """Run cases sequentially; one row per case."""
    rng = np.random.default_rng(seed)
    return [_row(case, run_case(case, rng)) for case in cases]


def rows_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
