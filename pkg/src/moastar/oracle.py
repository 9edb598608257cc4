"""Brute-force Pareto ground truth, independent of the search engines.

Both oracles avoid everything the engines rely on: no heuristic, no
truncation, no ordering tricks, no shared bounds. They exist to check the
engines, so they stay deliberately naive.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .graph import ProblemInstance

ENUMERATION_LIMIT = 12


class OracleRefused(ValueError):
    """Instance too large for exhaustive enumeration."""


def _weakly_dominates(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def pareto_filter(costs: Iterable[tuple]) -> tuple[tuple, ...]:
    """Lexicographically sorted, cost-unique, non-dominated subset."""
    unique = sorted(set(costs))
    kept: list[tuple] = []
    for cand in unique:
        # any dominator sorts lexicographically before cand, so checking
        # the survivors so far is enough
        if not any(_weakly_dominates(prev, cand) for prev in kept):
            kept.append(cand)
    return tuple(kept)


def label_correcting_pareto(instance: ProblemInstance) -> tuple[tuple, ...]:
    """Fixpoint relaxation keeping every non-dominated g-vector per state.

    Terminates for non-negative integer costs: each per-state set is an
    antichain, and weak-dominance rejection never re-admits an equal or
    worse vector.
    """
    graph = instance.graph
    edges = graph.edges
    fronts: list[list[tuple]] = [[] for _ in range(graph.num_states)]
    zero = (0,) * graph.k
    fronts[instance.start].append(zero)
    queue = deque([(instance.start, zero)])
    while queue:
        u, vec = queue.popleft()
        if vec not in fronts[u]:  # superseded since it was queued
            continue
        for v, cost in edges[u]:
            cand = tuple(a + b for a, b in zip(vec, cost))
            front = fronts[v]
            if any(_weakly_dominates(existing, cand) for existing in front):
                continue
            fronts[v] = [x for x in front if not _weakly_dominates(cand, x)]
            fronts[v].append(cand)
            queue.append((v, cand))
    return tuple(sorted(fronts[instance.goal]))


def enumerate_paths_pareto(instance: ProblemInstance,
                           max_states: int = ENUMERATION_LIMIT) -> tuple[tuple, ...]:
    """Exhaustive simple-path enumeration; the oracle for the oracle."""
    graph = instance.graph
    if graph.num_states > max_states:
        raise OracleRefused(
            f"{graph.num_states} states exceeds enumeration limit {max_states}")
    goal = instance.goal
    edges = graph.edges
    zero = (0,) * graph.k
    costs: list[tuple] = []

    def walk(u: int, acc: tuple, visited: set) -> None:
        if u == goal:
            costs.append(acc)
            return
        for v, cost in edges[u]:
            if v in visited:
                continue
            visited.add(v)
            walk(v, tuple(a + b for a, b in zip(acc, cost)), visited)
            visited.remove(v)

    walk(instance.start, zero, {instance.start})
    return pareto_filter(costs)


def format_frontier(costs: Sequence[tuple]) -> str:
    """One cost vector per line, space-separated, lexicographically sorted."""
    return "".join(" ".join(map(str, vec)) + "\n" for vec in sorted(costs))


def parse_frontier(text: str) -> tuple[tuple, ...]:
    costs = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            costs.append(tuple(int(t) for t in line.split()))
    return tuple(costs)
