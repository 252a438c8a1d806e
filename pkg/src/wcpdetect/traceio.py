"""Trace file format, validation, and the seeded computation generator.

Format (UTF-8, LF line endings)::

    trace <n>
    state <process> <index> <pred:0|1> <v1> ... <vn>
    ...

States are listed by process, then index. Lines starting with ``#`` and
blank lines are ignored.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ModelError, TraceFormatError
from .model import Computation, LocalState

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Violation:
    process: int
    index: int
    invariant: str
    message: str

    def __str__(self) -> str:
        return f"state ({self.process},{self.index}): {self.invariant}: {self.message}"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise TraceFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse(text: str | bytes, check: bool = True) -> Computation:
    """Parse a trace. With ``check`` the clock invariants are enforced too."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TraceFormatError(f"not UTF-8: {exc}") from None
    n = None
    traces: list[list[LocalState]] = []
    lines: dict[tuple[int, int], int] = {}
    last = (0, 0)
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if tokens[0] != "trace" or len(tokens) != 2:
                raise TraceFormatError("expected header 'trace <n>'", lineno)
            (n,) = _ints(tokens[1:], lineno)
            if n < 1:
                raise TraceFormatError("n >= 1 required", lineno)
            traces = [[] for _ in range(n)]
            continue
        if tokens[0] != "state":
            raise TraceFormatError(f"unknown record {tokens[0]!r}", lineno)
        if len(tokens) < 4:
            raise TraceFormatError("state line needs process, index and pred", lineno)
        process, index, pred = _ints(tokens[1:4], lineno)
        clock = tuple(_ints(tokens[4:], lineno))
        if not 1 <= process <= n:
            raise TraceFormatError(f"process {process} outside 1..{n}", lineno)
        if pred not in (0, 1):
            raise TraceFormatError(f"pred must be 0 or 1, got {pred}", lineno)
        if len(clock) != n:
            raise TraceFormatError(f"clock length {len(clock)} != n={n}", lineno)
        if (process, index) in lines:
            raise TraceFormatError(
                f"duplicate state ({process},{index}), first on line {lines[(process, index)]}",
                lineno,
            )
        if (process, index) < last:
            raise TraceFormatError("states must be ordered by process, then index", lineno)
        expected = len(traces[process - 1]) + 1
        if index != expected:
            raise TraceFormatError(
                f"index gap on process {process}: expected {expected}, got {index}", lineno
            )
        lines[(process, index)] = lineno
        last = (process, index)
        traces[process - 1].append(LocalState(process, index, bool(pred), clock))
    if n is None:
        raise TraceFormatError("empty trace: missing 'trace <n>' header")
    comp = Computation(n, tuple(tuple(t) for t in traces))
    if check:
        problems = validate(comp)
        if problems:
            v = problems[0]
            raise TraceFormatError(str(v), lines.get((v.process, v.index)))
    return comp


def serialize(comp: Computation) -> bytes:
    out = [f"trace {comp.n}"]
    for s in comp.states():
        out.append(
            f"state {s.process} {s.index} {int(s.pred)} " + " ".join(str(v) for v in s.clock)
        )
    return ("\n".join(out) + "\n").encode("utf-8")


def validate(comp: Computation) -> list[Violation]:
    """Check every Computation invariant; violations are returned, not raised."""
    n = comp.n
    found: list[Violation] = []
    for trace in comp.traces:
        for s in trace:
            if len(s.clock) != n:
                found.append(Violation(s.process, s.index, "clock-length",
                                       f"{len(s.clock)} entries, expected {n}"))
    if found:
        return found

    clocks = [np.array([s.clock for s in t], dtype=np.int64).reshape(len(t), n)
              for t in comp.traces]
    for p, (trace, cl) in enumerate(zip(comp.traces, clocks)):
        if not trace:
            continue
        for r, c in zip(*np.nonzero(cl < 0)):
            found.append(Violation(p + 1, int(r) + 1, "non-negative",
                                   f"entry {int(c) + 1} is {int(cl[r, c])}"))
        own = cl[:, p]
        for r in np.flatnonzero(own != np.arange(1, len(trace) + 1)):
            found.append(Violation(p + 1, int(r) + 1, "own-component",
                                   f"clock[{p + 1}]={int(own[r])}, expected {int(r) + 1}"))
        if len(trace) > 1:
            drops = np.any(cl[1:] < cl[:-1], axis=1)
            for r in np.flatnonzero(drops):
                found.append(Violation(p + 1, int(r) + 2, "monotonicity",
                                       "clock decreases along the process"))

    lengths = comp.lengths
    for p, cl in enumerate(clocks):
        for k in range(n):
            if k == p or cl.shape[0] == 0:
                continue
            ref = cl[:, k]
            bad_range = ref > lengths[k]
            for r in np.flatnonzero(bad_range):
                found.append(Violation(p + 1, int(r) + 1, "realizability",
                                       f"references missing state ({k + 1},{int(ref[r])})"))
            ok = (ref >= 1) & ~bad_range
            rows = np.flatnonzero(ok)
            if rows.size == 0:
                continue
            cited = clocks[k][ref[rows] - 1]
            # strict: equal clocks would mean the two states cite each other
            dominated = np.all(cited <= cl[rows], axis=1) & np.any(cited < cl[rows], axis=1)
            for r in rows[~dominated]:
                found.append(Violation(
                    p + 1, int(r) + 1, "realizability",
                    f"clock of ({k + 1},{int(ref[r])}) is not strictly below this clock"))
    found.sort(key=lambda v: (v.process, v.index))
    return found


class SplitMix64:
    """splitmix64 generator (Steele, Lea and Flood constants)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


@dataclass(frozen=True)
class GenParams:
    n: int
    m: int
    send_prob: float = 0.3
    recv_prob: float = 0.5
    pred_density: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ModelError("n >= 1 required")
        if self.m < 1:
            raise ModelError("m >= 1 required")
        for name in ("send_prob", "recv_prob", "pred_density"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ModelError(f"{name} must be in [0, 1], got {value}")
        if not 0 <= self.seed <= MASK64:
            raise ModelError("seed must be a 64-bit unsigned integer")


def generate(p: GenParams) -> Computation:
    """Simulate a message-passing run and record every local state.

    Processes take turns in rounds ``1..m``, process 1 first. Each turn,
    drawing from one splitmix64 stream seeded with ``p.seed``:

    1. if the mailbox is non-empty, draw ``u``; when ``u < recv_prob`` pop the
       oldest message and merge its clock (componentwise max);
    2. increment the own clock entry; this is the new state's clock;
    3. draw ``u``; the state's pred bit is ``u < pred_density``;
    4. if ``n > 1``, draw ``u``; when ``u < send_prob`` draw ``r`` as a u64 and
       send the clock to the ``r mod (n-1)``-th other process, in ascending
       order of process id.

    Floats use the top 53 bits of a u64 draw.
    """
    rng = SplitMix64(p.seed)
    n = p.n
    clocks = [[0] * n for _ in range(n)]
    mailboxes: list[deque] = [deque() for _ in range(n)]
    traces: list[list[LocalState]] = [[] for _ in range(n)]
    for _ in range(p.m):
        for i in range(n):
            clock = clocks[i]
            box = mailboxes[i]
            if box and rng.next_float() < p.recv_prob:
                msg = box.popleft()
                for k in range(n):
                    if msg[k] > clock[k]:
                        clock[k] = msg[k]
            clock[i] += 1
            snapshot = tuple(clock)
            pred = rng.next_float() < p.pred_density
            traces[i].append(LocalState(i + 1, clock[i], pred, snapshot))
            if n > 1 and rng.next_float() < p.send_prob:
                r = rng.next_u64() % (n - 1)
                target = r if r < i else r + 1
                mailboxes[target].append(snapshot)
    return Computation(n, tuple(tuple(t) for t in traces))
