"""Benchmark harness: run detectors over inputs and emit one CSV row per run."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Iterable, TextIO

from .jlsdetect import jls_detect
from .metrics import DetectResult
from .model import FilteredComputation
from .oracle import brute_detect
from .optdetect import opt_detect, seq_detect

DETECTORS: dict[str, Callable[..., DetectResult]] = {
    "seq": seq_detect,
    "opt": opt_detect,
    "jls": jls_detect,
    "brute": brute_detect,
}

COLUMNS = ["algo", "n", "m_total", "outcome", "rounds", "comparisons",
           "edges_relaxed", "states_advanced", "wall_nanos", "repeat"]


@dataclass(frozen=True)
class BenchRecord:
    algo: str
    n: int
    m: tuple[int, ...]
    outcome: str
    rounds: int
    comparisons: int
    edges_relaxed: int
    states_advanced: int
    wall_nanos: int
    repeat: int

    @property
    def m_total(self) -> int:
        return sum(self.m)

    def row(self) -> list:
        return [getattr(self, c) for c in COLUMNS]


def detect(fc: FilteredComputation, algo: str, workers: int = 1) -> DetectResult:
    try:
        fn = DETECTORS[algo]
    except KeyError:
        raise ValueError(f"unknown algo {algo!r}; choose from {', '.join(DETECTORS)}") from None
    return fn(fc, workers=workers)


def run_bench(inputs: Iterable[FilteredComputation], algos: list[str],
              repeat: int = 1, workers: int = 1) -> list[BenchRecord]:
    records = []
    for fc in inputs:
        for algo in algos:
            for r in range(repeat):
                res = detect(fc, algo, workers)
                mt = res.metrics
                records.append(BenchRecord(
                    algo, fc.n, fc.m, res.outcome, mt.rounds, mt.comparisons,
                    mt.edges_relaxed, mt.states_advanced, mt.wall_nanos, r))
    return records


def write_csv(records: list[BenchRecord], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(rec.row())
