"""Reachability from the dummy source over the state rejection graph.

An edge to ``(i', j')`` rejects ``(i', j')`` together with every earlier
state on ``i'`` (they all happened-before it), so membership on each
process is a prefix and is tracked as a per-process high-water mark.
The dummy source ``f`` is virtual: its edges go to the
``InitialRejects.sources()`` states and are never stored in ``R``.

``reach`` is a level-synchronous BFS. Each level expands the whole
frontier in parallel blocks, each block reports the furthest state it
reaches per process, and blocks are combined with ``max`` (concurrent
writers only ever raise a mark, so any interleaving gives the same
marks). ``reach_oracle`` is a plain sequential 0-1 BFS over the explicit
node graph, kept as the reference for any backend.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from ._parallel import WorkerPool, as_pool
from .rejection import InitialRejects, StateMaxIncidence, neighbors


@dataclass(frozen=True, eq=False)
class ReachSet:
    """Membership per filtered state (stacked like ``R.rows``) plus BFS stats."""

    member: np.ndarray
    offsets: np.ndarray
    m: tuple[int, ...]
    levels: int
    edges_relaxed: int

    def process_members(self, i: int) -> np.ndarray:
        start = self.offsets[i - 1]
        return self.member[start : start + self.m[i - 1]]

    def nodes(self) -> set[tuple[int, int]]:
        out = set()
        for i in range(1, len(self.m) + 1):
            out.update((i, int(j) + 1) for j in np.flatnonzero(self.process_members(i)))
        return out

    def max_index(self) -> tuple[int, ...]:
        """Largest member index per process, 0 where none."""
        out = []
        for i in range(1, len(self.m) + 1):
            hits = np.flatnonzero(self.process_members(i))
            out.append(int(hits[-1]) + 1 if hits.size else 0)
        return tuple(out)


def _members_from_marks(marks: np.ndarray, R: StateMaxIncidence) -> np.ndarray:
    member = np.zeros(R.rows.shape[0], dtype=bool)
    for i, hw in enumerate(marks):
        start = int(R.offsets[i])
        member[start : start + int(hw)] = True
    return member


def reach(R: StateMaxIncidence, F: InitialRejects, workers: int | WorkerPool = 1) -> ReachSet:
    n = R.n
    marks = np.zeros(n, dtype=np.int64)
    lo = marks.copy()
    hi = np.minimum(np.asarray(F.depth, dtype=np.int64), np.asarray(R.m, dtype=np.int64))
    owner = R.owner
    levels = 0
    relaxed = 0
    pool, owned = as_pool(workers)
    try:
        while np.any(hi > lo):
            levels += 1
            marks = np.maximum(marks, hi)
            # frontier = states lo+1..hi on each process
            rows = np.concatenate([
                np.arange(R.offsets[i] + lo[i], R.offsets[i] + hi[i]) for i in range(n)
            ]).astype(np.int64)

            def block(part: range, rows=rows) -> tuple[np.ndarray, int]:
                sel = rows[part.start : part.stop]
                sub = R.rows[sel].copy()
                sub[np.arange(len(sel)), owner[sel]] = 0
                far = sub.max(axis=0) if len(sel) else np.zeros(n, dtype=np.int64)
                return far, int(np.count_nonzero(sub))

            parts = pool.over_blocks(len(rows), block)
            far = marks.copy()
            for reached, count in parts:
                np.maximum(far, reached, out=far)
                relaxed += count
            lo, hi = marks, far
    finally:
        if owned:
            pool.close()
    return ReachSet(_members_from_marks(marks, R), np.asarray(R.offsets), R.m, levels, relaxed)


def reach_oracle(R: StateMaxIncidence, F: InitialRejects) -> ReachSet:
    """Sequential reference: 0-1 BFS where cross edges cost one level and the
    implicit program-order edge ``(i, j) -> (i, j-1)`` costs none."""
    dist: dict[tuple[int, int], int] = {}
    queue: deque[tuple[int, int]] = deque()
    for src in F.sources():
        dist[src] = 0
        queue.append(src)
    relaxed = 0
    done: set[tuple[int, int]] = set()
    while queue:
        node = queue.popleft()
        if node in done:
            continue
        done.add(node)
        d = dist[node]
        i, j = node
        if j > 1:
            prev = (i, j - 1)
            if dist.get(prev, d + 1) > d:
                dist[prev] = d
                queue.appendleft(prev)
        nbrs = neighbors(R, node)
        relaxed += len(nbrs)
        for nxt in sorted(nbrs):
            if dist.get(nxt, d + 2) > d + 1:
                dist[nxt] = d + 1
                queue.append(nxt)
    member = np.zeros(R.rows.shape[0], dtype=bool)
    for i, j in dist:
        member[R.offsets[i - 1] + j - 1] = True
    levels = max(dist.values()) + 1 if dist else 0
    return ReachSet(member, np.asarray(R.offsets), R.m, levels, relaxed)
