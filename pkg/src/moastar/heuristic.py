"""Per-objective lower bounds to the goal via reverse Dijkstra passes.

One single-objective Dijkstra per cost dimension runs over the reversed
graph, giving the ideal-point heuristic: consistent and admissible for
every objective independently. States that cannot reach the goal get no
entry and are skipped by the searches.
"""

from __future__ import annotations

import time
from heapq import heappop, heappush
from typing import Optional, Sequence

from .graph import Graph


class HeuristicTable:
    """Lower-bound vectors to one goal; ``values[s]`` is None if s cannot
    reach the goal."""

    __slots__ = ("goal", "values", "seconds")

    def __init__(self, goal: int, values: list, seconds: float = 0.0):
        self.goal = goal
        self.values = values
        self.seconds = seconds

    def __getitem__(self, state: int):
        return self.values[state]

    def permuted(self, order: Sequence[int]) -> list:
        """Fresh table with each vector reordered to ``order``."""
        out = []
        for vec in self.values:
            out.append(None if vec is None else tuple(vec[i] for i in order))
        return out


def _reverse_dijkstra(graph: Graph, goal: int, objective: int) -> list:
    dist: list = [None] * graph.num_states
    heap = [(0, goal)]
    reverse_edges = graph.reverse_edges
    while heap:
        d, u = heappop(heap)
        if dist[u] is not None:
            continue
        dist[u] = d
        for v, cost in reverse_edges[u]:
            if dist[v] is None:
                heappush(heap, (d + cost[objective], v))
    return dist


def compute_heuristic(graph: Graph, goal: int) -> HeuristicTable:
    """Ideal-point heuristic: k independent reverse shortest-path passes."""
    started = time.perf_counter()
    per_objective = [_reverse_dijkstra(graph, goal, i) for i in range(graph.k)]
    values: list = []
    for state in range(graph.num_states):
        # reachability is purely topological, so one unreachable dimension
        # means all of them are
        if per_objective[0][state] is None:
            values.append(None)
        else:
            values.append(tuple(per_objective[i][state] for i in range(graph.k)))
    return HeuristicTable(goal, values, time.perf_counter() - started)


def save_cache(table: HeuristicTable, graph: Graph, path: str) -> None:
    """Persist the table keyed by graph content hash and goal."""
    with open(path, "w", encoding="ascii") as f:
        f.write(f"{graph.signature()} {table.goal}\n")
        for vec in table.values:
            f.write("inf\n" if vec is None else " ".join(map(str, vec)) + "\n")


def load_cache(path: str, graph: Graph, goal: int) -> Optional[HeuristicTable]:
    """Load a cached table; None if the key does not match this query."""
    try:
        with open(path, encoding="ascii") as f:
            header = f.readline().split()
            if header != [graph.signature(), str(goal)]:
                return None
            values: list = []
            for line in f:
                line = line.strip()
                values.append(None if line == "inf" else tuple(int(t) for t in line.split()))
    except OSError:
        return None
    if len(values) != graph.num_states:
        return None
    return HeuristicTable(goal, values)
