"""Rejection-graph detector: reachability, valid marking and cut extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import WorkerPool, as_pool
from .errors import InvariantError, ModelError
from .metrics import DetectResult, Metrics
from .model import Cut, FilteredComputation
from .reach import ReachSet, reach
from .rejection import InitialRejects, StateMaxIncidence, build_F, build_R


def mark_valid(fc: FilteredComputation, rr: ReachSet) -> list[np.ndarray]:
    """Per-process 0/1 rows; a state is invalid (0) iff it was reached."""
    return [(~rr.process_members(i + 1)).astype(np.int8) for i in range(fc.n)]


def flis(row) -> int:
    """Largest 1-based index holding 0, or 0 if there is none.

    Pairwise max-reduction: leaves carry their index when the entry is 0
    and 0 otherwise; each level combines neighbours, an odd element out
    passes through unchanged.
    """
    vals = np.asarray(row)
    if vals.size == 0:
        raise ModelError("flis needs a non-empty row")
    level = np.where(vals == 0, np.arange(1, vals.size + 1), 0)
    while level.size > 1:
        if level.size % 2:
            level = np.append(level, 0)
        level = np.maximum(level[0::2], level[1::2])
    return int(level[0])


def check_prefix(valid_row: np.ndarray, process: int) -> int:
    """Return the number of invalid states, asserting they form a prefix."""
    k = flis(valid_row)
    if np.any(valid_row[:k] != 0):
        raise InvariantError(f"invalid states on process {process} are not a prefix")
    return k


def extract_cut(fc: FilteredComputation, valid: list[np.ndarray],
                workers: int | WorkerPool = 1) -> Cut | None:
    pool, owned = as_pool(workers)
    try:
        largest = pool.map(lambda i: check_prefix(valid[i], i + 1), range(fc.n))
    finally:
        if owned:
            pool.close()
    if any(k == mi for k, mi in zip(largest, fc.m)):
        return None
    return Cut(tuple(k + 1 for k in largest))


@dataclass(frozen=True, eq=False)
class JLSRun:
    """Every intermediate of one pipeline run, for inspection and tests."""

    F: InitialRejects | None
    R: StateMaxIncidence | None
    rr: ReachSet | None
    valid: list[np.ndarray] | None
    result: DetectResult


def jls_pipeline(fc: FilteredComputation, workers: int = 1) -> JLSRun:
    metrics = Metrics()
    with metrics.timed(), WorkerPool(workers) as pool:
        if fc.empty_processes:
            return JLSRun(None, None, None, None, DetectResult(None, metrics))
        F = build_F(fc, pool)
        metrics.comparisons += fc.n * (fc.n - 1)
        R = build_R(fc, pool)
        rr = reach(R, F, pool)
        metrics.rounds = rr.levels
        metrics.edges_relaxed = rr.edges_relaxed
        valid = mark_valid(fc, rr)
        metrics.states_advanced = int(np.count_nonzero(rr.member))
        cut = extract_cut(fc, valid, pool)
    return JLSRun(F, R, rr, valid, DetectResult(cut, metrics))


def jls_detect(fc: FilteredComputation, workers: int = 1) -> DetectResult:
    return jls_pipeline(fc, workers).result
