"""Minimal worker pool used by the detectors' parallel loops.

Every parallel step in the package is written as "split the processes
into contiguous blocks, compute each block independently, combine the
block results in block order". The combine step only uses associative,
commutative operations (max, or, sum, concatenation in order), so the
result does not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def blocks(count: int, workers: int) -> list[range]:
    """Split ``range(count)`` into at most ``workers`` contiguous blocks."""
    if count <= 0:
        return []
    workers = max(1, min(workers, count))
    size, extra = divmod(count, workers)
    out = []
    start = 0
    for w in range(workers):
        stop = start + size + (1 if w < extra else 0)
        out.append(range(start, stop))
        start = stop
    return out


class WorkerPool:
    """Order-preserving map over a thread pool; serial when ``workers == 1``."""

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.workers = workers
        self._executor: ThreadPoolExecutor | None = None
        if workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=workers)

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        if self._executor is None:
            return [fn(item) for item in items]
        return list(self._executor.map(fn, items))

    def over_blocks(self, count: int, fn: Callable[[range], R]) -> list[R]:
        return self.map(fn, blocks(count, self.workers))

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def as_pool(workers: "int | WorkerPool") -> tuple[WorkerPool, bool]:
    """Return ``(pool, owned)``; ``owned`` pools must be closed by the caller."""
    if isinstance(workers, WorkerPool):
        return workers, False
    return WorkerPool(int(workers)), True


def concat(parts: Sequence[list]) -> list:
    out: list = []
    for part in parts:
        out.extend(part)
    return out
