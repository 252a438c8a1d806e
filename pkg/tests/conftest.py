from __future__ import annotations

import itertools

import pytest

from wcpdetect.model import Computation, LocalState, filter_computation
from wcpdetect.traceio import GenParams, generate


def make_comp(spec: dict[int, list[tuple[list[int], int]]]) -> Computation:
    """Build a computation from ``{process: [(clock, pred), ...]}``."""
    n = len(spec)
    traces = tuple(
        tuple(LocalState(p, j, bool(pred), tuple(clock))
              for j, (clock, pred) in enumerate(spec[p], start=1))
        for p in range(1, n + 1)
    )
    return Computation(n, traces)


T1 = make_comp({1: [([1, 0], 1), ([2, 0], 1)], 2: [([0, 1], 1), ([1, 2], 1)]})
T2 = make_comp({1: [([1, 0], 1), ([2, 0], 1)], 2: [([1, 1], 1), ([1, 2], 1)]})
T3 = make_comp({1: [([1, 0], 1)], 2: [([1, 1], 1)]})


@pytest.fixture
def t1():
    return T1


@pytest.fixture
def t2():
    return T2


@pytest.fixture
def t3():
    return T3


def small_params(count: int = 1000, seed0: int = 0) -> list[GenParams]:
    """Cycle through n in 2..5, m in 1..8, send_prob in {0, .3, .8}, density in {.5, 1}."""
    grid = list(itertools.product(range(2, 6), range(1, 9), (0.0, 0.3, 0.8), (0.5, 1.0)))
    return [
        GenParams(n, m, sp, 0.5, pd, seed0 + k)
        for k, (n, m, sp, pd) in zip(range(count), itertools.cycle(grid))
    ]


def medium_params(count: int = 100, seed0: int = 10_000) -> list[GenParams]:
    grid = list(itertools.product((8, 32), (100, 1000), (0.3, 0.8), (1.0, 0.5, 0.1)))
    return [
        GenParams(n, m, sp, 0.9, pd, seed0 + k)
        for k, (n, m, sp, pd) in zip(range(count), itertools.cycle(grid))
    ]


def filtered(params: GenParams):
    return filter_computation(generate(params))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
