"""Brute-force references: consistent-cut enumeration and rejection closure.

Everything here compares full original clocks (no filtered-clock or
max-edge shortcuts) so it stays independent of the detectors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import InvariantError, OracleTooLarge
from .metrics import DetectResult, Metrics
from .model import Cut, FilteredComputation, happened_before_full

MAX_TUPLES = 1 << 20


def _original_clocks(fc: FilteredComputation) -> list[np.ndarray]:
    return [np.array([s.clock for s in seq], dtype=np.int64).reshape(len(seq), fc.n)
            for seq in fc.states]


def consistent_mask(fc: FilteredComputation) -> tuple[np.ndarray, np.ndarray]:
    """All index tuples (0-based, lexicographic) and which are consistent."""
    m = fc.m
    if prod(m) > MAX_TUPLES:
        raise OracleTooLarge(f"{prod(m)} candidate cuts exceeds the {MAX_TUPLES} guard")
    if 0 in m:
        return np.zeros((0, fc.n), dtype=np.int64), np.zeros(0, dtype=bool)
    tuples = np.indices(m).reshape(fc.n, -1).T
    clocks = _original_clocks(fc)
    ok = np.ones(len(tuples), dtype=bool)
    for a in range(fc.n):
        ca = clocks[a][tuples[:, a]]
        for b in range(a + 1, fc.n):
            cb = clocks[b][tuples[:, b]]
            le = np.all(ca <= cb, axis=1)
            ge = np.all(ca >= cb, axis=1)
            same = le & ge
            ok &= ~((le & ~same) | (ge & ~same))
    return tuples, ok


def enumerate_consistent_cuts(fc: FilteredComputation) -> list[Cut]:
    tuples, ok = consistent_mask(fc)
    return [Cut(tuple(int(x) + 1 for x in t)) for t in tuples[ok]]


def brute_min_cut(fc: FilteredComputation) -> Cut | None:
    tuples, ok = consistent_mask(fc)
    cuts = tuples[ok]
    if len(cuts) == 0:
        return None
    low = cuts.min(axis=0)
    if not np.any(np.all(cuts == low, axis=1)):
        raise InvariantError(f"componentwise minimum {low + 1} is not a consistent cut")
    return Cut(tuple(int(x) + 1 for x in low))


def brute_detect(fc: FilteredComputation, workers: int = 1) -> DetectResult:
    metrics = Metrics()
    with metrics.timed():
        cut = brute_min_cut(fc)
    # every candidate tuple is tested in both directions for every pair
    metrics.comparisons = prod(fc.m) * fc.n * (fc.n - 1)
    return DetectResult(cut, metrics)


@dataclass(frozen=True)
class ClosureSet:
    rejected: frozenset[tuple[int, int]]
    failed: tuple[bool, ...]

    def max_index(self, n: int) -> tuple[int, ...]:
        top = [0] * n
        for i, j in self.rejected:
            top[i - 1] = max(top[i - 1], j)
        return tuple(top)


def rejection_closure(fc: FilteredComputation) -> ClosureSet:
    """Least fixpoint of the rejection rules, by sequential worklist.

    Seeds: every state that happened-before some initial state of another
    process. Rule: if ``(i, j)`` is rejected and ``j < m_i``, every state
    that happened-before ``(i, j+1)`` is rejected; if ``j == m_i`` the
    process has failed.
    """
    n, m = fc.n, fc.m
    every = [(i + 1, j + 1, s) for i, seq in enumerate(fc.states) for j, s in enumerate(seq)]
    rejected: set[tuple[int, int]] = set()
    work: deque[tuple[int, int]] = deque()
    for k in range(n):
        if m[k] == 0:
            continue
        first = fc.states[k][0]
        for i, j, s in every:
            if i != k + 1 and (i, j) not in rejected and happened_before_full(s, first):
                rejected.add((i, j))
                work.append((i, j))
    failed = [False] * n
    while work:
        i, j = work.popleft()
        if j == m[i - 1]:
            failed[i - 1] = True
            continue
        succ = fc.states[i - 1][j]
        for k, l, s in every:
            if (k, l) not in rejected and happened_before_full(s, succ):
                rejected.add((k, l))
                work.append((k, l))
    return ClosureSet(frozenset(rejected), tuple(failed))
