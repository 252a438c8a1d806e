"""Brute-force happened-before from explicit edges, no clock comparisons."""

from __future__ import annotations


def causal_closure(comp) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """All pairs ``(s, t)`` with ``s -> t``.

    Direct edges: program order ``(k, c) -> (k, c+1)`` and, for every state
    ``t`` whose clock names ``(k, c)`` with ``k != t.process`` and ``c >= 1``,
    ``(k, c) -> t``. The closure is a DFS from every node.
    """
    succ: dict[tuple[int, int], set] = {s.key: set() for s in comp.states()}
    for s in comp.states():
        if s.index > 1:
            succ[(s.process, s.index - 1)].add(s.key)
        for k, c in enumerate(s.clock, start=1):
            if k != s.process and c >= 1:
                succ[(k, c)].add(s.key)
    pairs = set()
    for start in succ:
        stack = list(succ[start])
        seen = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(succ[x])
        pairs.update((start, x) for x in seen)
    return pairs
