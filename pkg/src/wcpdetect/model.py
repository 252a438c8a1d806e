"""Causal data model: local states, vector clocks, computations and cuts.

Processes and state indices are 1-based throughout, matching the trace
file format. A state's clock entry for its own process equals its index
on that process, and for any other process ``k`` the entry ``c`` means
state ``(k, c)`` is the latest state of ``k`` that happened-before it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import ModelError

VectorClock = tuple[int, ...]


@dataclass(frozen=True)
class LocalState:
    process: int
    index: int
    pred: bool
    clock: VectorClock

    @property
    def key(self) -> tuple[int, int]:
        return (self.process, self.index)


@dataclass(frozen=True)
class Computation:
    """``n`` processes, each a sequence of local states in program order."""

    n: int
    traces: tuple[tuple[LocalState, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ModelError("n >= 1 required")
        if len(self.traces) != self.n:
            raise ModelError(f"expected {self.n} process traces, got {len(self.traces)}")

    def state(self, process: int, index: int) -> LocalState:
        trace = self.traces[process - 1]
        if not 1 <= index <= len(trace):
            raise ModelError(f"no state ({process},{index})")
        return trace[index - 1]

    def states(self) -> Iterator[LocalState]:
        for trace in self.traces:
            yield from trace

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.traces)


def happened_before_full(s: LocalState, t: LocalState) -> bool:
    """Componentwise-strict clock comparison: ``s.clock <= t.clock`` and not equal."""
    if len(s.clock) != len(t.clock):
        raise ModelError(f"clock length mismatch: {len(s.clock)} vs {len(t.clock)}")
    return all(a <= b for a, b in zip(s.clock, t.clock)) and s.clock != t.clock


def happened_before_fast(s: LocalState, t: LocalState) -> bool:
    """O(1) test, valid for distinct states of one well-formed computation."""
    if s.key == t.key:
        raise ModelError(f"happened_before_fast needs distinct states, got {s.key} twice")
    p = s.process - 1
    return s.clock[p] <= t.clock[p]


def concurrent(s: LocalState, t: LocalState) -> bool:
    if s.key == t.key:
        return False
    return not happened_before_full(s, t) and not happened_before_full(t, s)


@dataclass(frozen=True)
class Cut:
    """One filtered-state index (1-based) per process."""

    indices: tuple[int, ...]

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return " ".join(str(j) for j in self.indices)


@dataclass(frozen=True, eq=False)
class FilteredComputation:
    """Predicate-true states only, re-indexed per process.

    ``fclock`` is an ``(sum(m), n)`` integer array stacked process by
    process (rows of process ``i`` start at ``offsets[i-1]``). Entry
    ``fclock[x, k-1]`` counts the filtered states on process ``k`` whose
    original index is at most the original clock of ``x`` at ``k``; for a
    state's own process it is its filtered index.
    """

    n: int
    states: tuple[tuple[LocalState, ...], ...]
    fclock: np.ndarray
    offsets: np.ndarray
    original: Computation | None = field(default=None, repr=False)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.states)

    @property
    def total(self) -> int:
        return int(self.fclock.shape[0])

    @property
    def empty_processes(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, s in enumerate(self.states) if not s)

    def state(self, process: int, j: int) -> LocalState:
        seq = self.states[process - 1]
        if not 1 <= j <= len(seq):
            raise ModelError(f"filtered index ({process},{j}) out of range 1..{len(seq)}")
        return seq[j - 1]

    def row(self, process: int, j: int) -> np.ndarray:
        return self.fclock[self.offsets[process - 1] + j - 1]

    def process_fclock(self, process: int) -> np.ndarray:
        start = self.offsets[process - 1]
        return self.fclock[start : start + len(self.states[process - 1])]

    def precedes(self, i: int, j: int, k: int, l: int) -> bool:
        """Filtered happened-before: does ``(i,j)`` happen before ``(k,l)``?"""
        if i == k:
            return j < l
        return j <= int(self.row(k, l)[i - 1])


def filter_computation(comp: Computation) -> FilteredComputation:
    """Keep predicate-true states and compute their filtered clocks."""
    n = comp.n
    kept = tuple(tuple(s for s in trace if s.pred) for trace in comp.traces)
    orig_idx = [np.array([s.index for s in seq], dtype=np.int64) for seq in kept]
    lengths = [len(seq) for seq in kept]
    offsets = np.zeros(n, dtype=np.int64)
    if n > 1:
        offsets[1:] = np.cumsum(lengths)[:-1]
    total = sum(lengths)
    clocks = np.zeros((total, n), dtype=np.int64)
    pos = 0
    for seq in kept:
        for s in seq:
            clocks[pos] = s.clock
            pos += 1
    fclock = np.empty_like(clocks)
    for k in range(n):
        fclock[:, k] = np.searchsorted(orig_idx[k], clocks[:, k], side="right")
    fclock.setflags(write=False)
    offsets.setflags(write=False)
    return FilteredComputation(n=n, states=kept, fclock=fclock, offsets=offsets, original=comp)


def is_consistent_cut(fc: FilteredComputation, cut: Cut) -> bool:
    if len(cut) != fc.n:
        raise ModelError(f"cut has {len(cut)} entries, expected {fc.n}")
    chosen = [fc.state(i + 1, j) for i, j in enumerate(cut.indices)]
    return all(concurrent(a, b) for a, b in combinations(chosen, 2))
