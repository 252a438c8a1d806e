"""Run counters and detector results."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import astuple, dataclass, fields

from .model import Cut


@dataclass
class Metrics:
    """Operation counts used as proxies for the work/time bounds.

    ``rounds`` means advance rounds for the cut-advancing detectors and BFS
    levels for the rejection-graph detector.
    """

    rounds: int = 0
    comparisons: int = 0
    states_advanced: int = 0
    edges_relaxed: int = 0
    wall_nanos: int = 0

    def non_timing(self) -> tuple[int, int, int, int]:
        return astuple(self)[:4]

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @contextmanager
    def timed(self):
        start = time.perf_counter_ns()
        try:
            yield self
        finally:
            self.wall_nanos += time.perf_counter_ns() - start


@dataclass(frozen=True)
class DetectResult:
    """``cut`` is ``None`` when no consistent cut satisfies the predicate."""

    cut: Cut | None
    metrics: Metrics

    @property
    def found(self) -> bool:
        return self.cut is not None

    @property
    def outcome(self) -> str:
        return f"cut {self.cut}" if self.cut is not None else "no-cut"
