"""Round-synchronous cut advancement and its one-at-a-time sequential variant.

Both detectors start from the cut of initial states and repeatedly advance
"red" processes, those whose current state happened-before the current
state of some other process. A red state can never belong to a consistent
cut at or above the current one, so advancing past it is safe; the first
all-green cut is the minimum satisfying cut.

All comparisons work in filtered coordinates: ``(i, a)`` happened-before
``(k, b)`` for ``i != k`` iff ``a <= fclock(k, b)[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import WorkerPool, as_pool
from .metrics import DetectResult, Metrics
from .model import Cut, FilteredComputation

@dataclass(frozen=True, eq=False)
class Frontier:
    """Working cut (1-based filtered indices) and per-process colour (True = red)."""

    current: np.ndarray
    color: np.ndarray

    @property
    def reds(self) -> np.ndarray:
        return np.flatnonzero(self.color)

    def cut(self) -> Cut:
        return Cut(tuple(int(j) for j in self.current))


def _cut_clocks(fc: FilteredComputation, current: np.ndarray) -> np.ndarray:
    # row k: fclock of the state currently chosen on process k
    return fc.fclock[fc.offsets + current - 1]


def _full_colors(fc, current, pool: WorkerPool) -> np.ndarray:
    clocks = _cut_clocks(fc, current)
    n = fc.n

    def block(cols: range) -> np.ndarray:
        sl = slice(cols.start, cols.stop)
        # before[k, i]: cut state of i happened-before cut state of k
        before = current[sl][None, :] <= clocks[:, sl]
        before[np.arange(cols.start, cols.stop), np.arange(len(cols))] = False
        return before.any(axis=0)

    parts = pool.over_blocks(n, block)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=bool)


def _incremental_colors(fc, current, moved: np.ndarray, pool: WorkerPool) -> np.ndarray:
    """Colours after the processes in ``moved`` advanced; all others were green.

    Only pairs involving a moved process can have changed, so only those
    are compared. The result equals a full recolour of ``current``.
    """
    clocks = _cut_clocks(fc, current)
    n = fc.n
    own_moved = current[moved]

    def block(cols: range):
        sl = slice(cols.start, cols.stop)
        idx = np.arange(cols.start, cols.stop)
        # moved state a happened-before cut state of k in this block
        a_before = own_moved[None, :] <= clocks[sl][:, moved]
        a_before &= idx[:, None] != moved[None, :]
        # cut state of k in this block happened-before moved state a
        k_before = current[sl][None, :] <= clocks[moved][:, sl]
        k_before &= moved[:, None] != idx[None, :]
        return a_before, k_before.any(axis=0)

    parts = pool.over_blocks(n, block)
    red_moved = np.zeros(len(moved), dtype=bool)
    color = np.zeros(n, dtype=bool)
    pos = 0
    for a_before, k_red in parts:
        red_moved |= a_before.any(axis=0)
        color[pos : pos + len(k_red)] = k_red
        pos += len(k_red)
    color[moved] |= red_moved
    return color


def init_cut(fc: FilteredComputation, metrics: Metrics | None = None,
             workers: int | WorkerPool = 1) -> Frontier | None:
    """Cut of first filtered states; ``None`` if some process has none."""
    if fc.empty_processes:
        return None
    current = np.ones(fc.n, dtype=np.int64)
    return recolor(fc, Frontier(current, np.zeros(fc.n, dtype=bool)), metrics, workers)


def recolor(fc: FilteredComputation, f: Frontier, metrics: Metrics | None = None,
            workers: int | WorkerPool = 1) -> Frontier:
    pool, owned = as_pool(workers)
    try:
        color = _full_colors(fc, f.current, pool)
    finally:
        if owned:
            pool.close()
    if metrics is not None:
        metrics.comparisons += fc.n * (fc.n - 1)
    return Frontier(f.current.copy(), color)


def advance_round(fc: FilteredComputation, f: Frontier, metrics: Metrics | None = None,
                  workers: int | WorkerPool = 1) -> Frontier | None:
    """Advance every red process by one state at once, then recolour.

    Returns ``None`` when some red process is already on its last state.
    """
    reds = f.reds
    m = np.asarray(fc.m, dtype=np.int64)
    if metrics is not None:
        metrics.rounds += 1
    if np.any(f.current[reds] >= m[reds]):
        return None
    current = f.current.copy()
    current[reds] += 1
    pool, owned = as_pool(workers)
    try:
        color = _incremental_colors(fc, current, reds, pool)
    finally:
        if owned:
            pool.close()
    if metrics is not None:
        metrics.states_advanced += len(reds)
        metrics.comparisons += 2 * len(reds) * (fc.n - 1)
    return Frontier(current, color)


def opt_detect(fc: FilteredComputation, workers: int = 1) -> DetectResult:
    metrics = Metrics()
    with metrics.timed(), WorkerPool(workers) as pool:
        f = init_cut(fc, metrics, pool)
        while f is not None and f.color.any():
            f = advance_round(fc, f, metrics, pool)
    return DetectResult(f.cut() if f is not None else None, metrics)


def seq_detect(fc: FilteredComputation, workers: int = 1) -> DetectResult:
    """Advance only the lowest-numbered red process per step."""
    metrics = Metrics()
    with metrics.timed(), WorkerPool(workers) as pool:
        f = init_cut(fc, metrics, pool)
        if f is None:
            return DetectResult(None, metrics)
        m = np.asarray(fc.m, dtype=np.int64)
        current, color = f.current, f.color
        while color.any():
            i = int(np.argmax(color))
            metrics.rounds += 1
            if current[i] >= m[i]:
                return DetectResult(None, metrics)
            current = current.copy()
            current[i] += 1
            moved = np.array([i])
            # reds stay red: a state that precedes some cut state still
            # precedes that process's later states
            still_red = color.copy()
            still_red[i] = False
            color = still_red | _incremental_colors(fc, current, moved, pool)
            metrics.states_advanced += 1
            metrics.comparisons += 2 * (fc.n - 1)
    return DetectResult(Frontier(current, color).cut(), metrics)
