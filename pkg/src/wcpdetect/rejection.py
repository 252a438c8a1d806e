"""Initially rejected states and the state rejection graph.

Rejecting ``(i, j)`` means no satisfying cut uses ``(i, j)`` or anything
before it on process ``i``, so the cut must use ``(i, j+1)`` or later, and
every state that happened-before ``(i, j+1)`` is rejected too. Per target
process only the latest such state matters, since rejecting it rejects
its whole prefix; that latest state is read straight off the filtered
clock of ``(i, j+1)``. This gives one row of ``n`` entries per state
(the state-max incidence matrix), never an ``(mn) x (mn)`` adjacency
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import WorkerPool, as_pool
from .errors import ModelError
from .model import FilteredComputation


@dataclass(frozen=True, eq=False)
class InitialRejects:
    """States rejected by the cut of initial states.

    ``f[i]`` is set iff ``(i+1, 1)`` happened-before some other initial
    state. ``depth[i]`` is the largest filtered index on process ``i+1``
    that happened-before some initial state of another process (0 if
    none); these are the targets of the dummy source's edges.
    """

    f: np.ndarray
    depth: np.ndarray

    def sources(self) -> list[tuple[int, int]]:
        return [(i + 1, int(d)) for i, d in enumerate(self.depth) if d >= 1]


@dataclass(frozen=True, eq=False)
class StateMaxIncidence:
    """``rows[offsets[i-1] + j - 1]`` is the row of filtered state ``(i, j)``.

    For ``i' != i`` the entry is the latest state on ``i'`` whose rejection
    is forced by rejecting ``(i, j)`` (0 for none); the entry at ``i`` is
    ``j`` itself.
    """

    rows: np.ndarray
    offsets: np.ndarray
    m: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.m)

    def row(self, i: int, j: int) -> np.ndarray:
        if not 1 <= i <= self.n or not 1 <= j <= self.m[i - 1]:
            raise ModelError(f"state ({i},{j}) out of range")
        return self.rows[self.offsets[i - 1] + j - 1]

    @property
    def entries(self) -> int:
        return int(self.rows.size)

    def edge_count(self) -> int:
        cross = self.rows.copy()
        cross[np.arange(self.rows.shape[0]), self.owner] = 0
        return int(np.count_nonzero(cross))

    @property
    def owner(self) -> np.ndarray:
        """Process (0-based) owning each row."""
        return np.repeat(np.arange(self.n), self.m)


def build_F(fc: FilteredComputation, workers: int | WorkerPool = 1) -> InitialRejects:
    if fc.empty_processes:
        raise ModelError(f"processes {fc.empty_processes} have no predicate-true state")
    n = fc.n
    initial = fc.fclock[fc.offsets]  # row k: fclock of (k, 1)
    pool, owned = as_pool(workers)
    try:
        def block(procs: range) -> np.ndarray:
            # largest state on i before some (k, 1), k != i
            sub = initial[:, procs.start : procs.stop].copy()
            sub[np.arange(procs.start, procs.stop), np.arange(len(procs))] = 0
            return sub.max(axis=0)

        parts = pool.over_blocks(n, block)
    finally:
        if owned:
            pool.close()
    depth = np.concatenate(parts)
    return InitialRejects(f=depth >= 1, depth=depth)


def build_R(fc: FilteredComputation, workers: int | WorkerPool = 1) -> StateMaxIncidence:
    n = fc.n
    m = fc.m
    rows = np.zeros((fc.total, n), dtype=np.int64)
    pool, owned = as_pool(workers)
    try:
        def block(procs: range) -> None:
            # disjoint row ranges per process
            for i in procs:
                start, mi = int(fc.offsets[i]), m[i]
                if mi == 0:
                    continue
                if mi > 1:
                    rows[start : start + mi - 1] = fc.fclock[start + 1 : start + mi]
                rows[start : start + mi, i] = np.arange(1, mi + 1)

        pool.over_blocks(n, block)
    finally:
        if owned:
            pool.close()
    rows.setflags(write=False)
    return StateMaxIncidence(rows=rows, offsets=np.asarray(fc.offsets), m=m)


def neighbors(R: StateMaxIncidence, node: tuple[int, int]) -> set[tuple[int, int]]:
    i, j = node
    row = R.row(i, j)
    return {(k + 1, int(v)) for k, v in enumerate(row) if k != i - 1 and v >= 1}
