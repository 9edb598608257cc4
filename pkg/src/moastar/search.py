"""Sequential multi-objective A* with pluggable LTMOA/NWMOA behaviour.

The two strategies share one loop and differ in three knobs:

* queue order: full lexicographic cost (ltmoa) vs primary cost only (nwmoa);
* per-state truncated-vector storage: unordered append with linear scans
  (ltmoa) vs lexicographically sorted with prefix-bounded scans (nwmoa);
* quick pruning: nwmoa first tests the most recently stored vector before
  falling back to the full scan.

Dominance checks run lazily by default (only on extraction); eager timing
additionally screens successors before they enter the queue.
"""

from __future__ import annotations

import time
from bisect import insort
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Optional

from .core import Label
from .graph import ProblemInstance
from .heuristic import HeuristicTable, compute_heuristic

LTMOA = "ltmoa"
NWMOA = "nwmoa"
LAZY = "lazy"
EAGER = "eager"

STRATEGIES = (LTMOA, NWMOA)
TIMINGS = (LAZY, EAGER)


class SearchTimeout(Exception):
    """Deadline expired; carries the stats gathered so far."""

    def __init__(self, stats: "SearchStats"):
        super().__init__("search timed out")
        self.stats = stats


@dataclass
class SearchStats:
    """Monotone counters for one search run."""

    extracted: int = 0
    expansions: int = 0
    generations: int = 0
    pruned_by_gtr: int = 0
    pruned_by_solutions: int = 0
    quick_prune_hits: int = 0
    queue_peak: int = 0
    solutions: int = 0
    elapsed: float = 0.0
    early_terminated: bool = False


class OpenQueue:
    """Best-first queue over labels.

    Lexicographic mode keys on the full f-vector; primary-only mode keys on
    the first entry with arbitrary (insertion-order) tie handling.
    """

    __slots__ = ("_heap", "_count", "primary_only")

    def __init__(self, primary_only: bool = False):
        self._heap: list = []
        self._count = 0
        self.primary_only = primary_only

    def push(self, label: Label) -> None:
        key = label.f[0] if self.primary_only else label.f
        self._count += 1
        heappush(self._heap, (key, self._count, label))

    def pop(self) -> Label:
        return heappop(self._heap)[2]

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)


class TruncStore:
    """Non-dominated truncated cost vectors attached to one state.

    Insertion assumes the caller already established that the new vector is
    not weakly dominated by any stored one. ``stats`` (optional) receives
    quick-prune hit counts.
    """

    __slots__ = ("vectors", "lex_sorted", "use_cache", "cache", "stats")

    def __init__(self, lex_sorted: bool = False, use_cache: bool = False,
                 stats: Optional[SearchStats] = None):
        self.vectors: list[tuple] = []
        self.lex_sorted = lex_sorted
        self.use_cache = use_cache
        self.cache: Optional[tuple] = None
        self.stats = stats

    def is_dominated(self, v: tuple) -> bool:
        """True iff some stored vector weakly dominates ``v``."""
        cache = self.cache
        if cache is not None:
            for a, b in zip(cache, v):
                if a > b:
                    break
            else:
                if self.stats is not None:
                    self.stats.quick_prune_hits += 1
                return True
        if self.lex_sorted:
            v0 = v[0]
            for u in self.vectors:
                if u[0] > v0:
                    break
                for a, b in zip(u, v):
                    if a > b:
                        break
                else:
                    return True
            return False
        for u in self.vectors:
            for a, b in zip(u, v):
                if a > b:
                    break
            else:
                return True
        return False

    def insert(self, v: tuple) -> None:
        """Drop stored vectors weakly dominated by ``v``, then store it."""
        kept = []
        for u in self.vectors:
            for a, b in zip(v, u):
                if a > b:
                    kept.append(u)
                    break
        self.vectors = kept
        if self.lex_sorted:
            insort(kept, v)
        else:
            kept.append(v)
        if self.use_cache:
            self.cache = v

    def remove_first_leq(self, bound: int) -> list[tuple]:
        """Remove and return all vectors whose first entry is <= bound."""
        moved = []
        kept = []
        for u in self.vectors:
            (moved if u[0] <= bound else kept).append(u)
        if moved:
            self.vectors = kept
            if self.cache is not None and self.cache[0] <= bound:
                self.cache = None
        return moved

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class Solution:
    cost: tuple
    path: Optional[tuple] = None


@dataclass
class SearchResult:
    solutions: list[Solution]
    stats: SearchStats
    timed_out: bool = False
    frontier: tuple = field(init=False)

    def __post_init__(self):
        self.frontier = tuple(sorted(sol.cost for sol in self.solutions))


def make_store(strategy: str, stats: Optional[SearchStats] = None) -> TruncStore:
    if strategy == NWMOA:
        return TruncStore(lex_sorted=True, use_cache=True, stats=stats)
    return TruncStore()


def drop_dominated_ties(solutions: list[Label]) -> list[Label]:
    """Remove solutions dominated by another with the same primary value.

    Extraction keys are non-decreasing in the primary cost, so a solution
    can only be dominated by one discovered under an equal primary value
    (possible under primary-only ordering with arbitrary ties). Groups are
    contiguous because solutions are appended in extraction order.
    """
    out: list[Label] = []
    i = 0
    n = len(solutions)
    while i < n:
        j = i + 1
        primary = solutions[i].f[0]
        while j < n and solutions[j].f[0] == primary:
            j += 1
        if j == i + 1:
            out.append(solutions[i])
        else:
            group = solutions[i:j]
            for a in group:
                fa = a.f
                if not any(b.f != fa and all(x <= y for x, y in zip(b.f, fa))
                           for b in group):
                    out.append(a)
        i = j
    return out


def moa_star(instance: ProblemInstance, heuristic: Optional[HeuristicTable] = None,
             *, strategy: str = LTMOA, timing: str = LAZY,
             timeout: Optional[float] = None, collect_paths: bool = True,
             debug_checks: bool = False) -> SearchResult:
    """Exact Pareto frontier search from start to goal.

    Returns every cost-unique Pareto-optimal solution; an unreachable goal
    yields an empty result. Raises SearchTimeout when ``timeout`` (seconds)
    elapses, checked once per extraction.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if timing not in TIMINGS:
        raise ValueError(f"unknown dominance timing {timing!r}")
    graph = instance.graph
    goal = instance.goal
    if heuristic is None:
        heuristic = compute_heuristic(graph, goal)
    started = time.perf_counter()
    deadline = None if timeout is None else started + timeout
    stats = SearchStats()
    h = heuristic.values
    h_start = h[instance.start]
    if h_start is None:
        stats.elapsed = time.perf_counter() - started
        return SearchResult([], stats)

    edges = graph.edges
    stores: list[Optional[TruncStore]] = [None] * graph.num_states
    goal_store = make_store(strategy, stats)
    stores[goal] = goal_store
    open_queue = OpenQueue(primary_only=(strategy == NWMOA))
    zero = (0,) * graph.k
    open_queue.push(Label(instance.start, zero, h_start))
    stats.queue_peak = 1
    eager = timing == EAGER
    sol_labels: list[Label] = []
    last_key = None
    now = time.perf_counter

    while open_queue:
        if deadline is not None and now() > deadline:
            stats.elapsed = now() - started
            raise SearchTimeout(stats)
        x = open_queue.pop()
        stats.extracted += 1
        if debug_checks:
            key = x.f[0] if open_queue.primary_only else x.f
            assert last_key is None or key >= last_key, "extraction order regressed"
            last_key = key
        u = x.state
        at_goal = u == goal
        store = stores[u]
        trunc_g = x.g[1:]
        if store is not None and store.is_dominated(trunc_g):
            if at_goal:
                stats.pruned_by_solutions += 1
            else:
                stats.pruned_by_gtr += 1
            continue
        if not at_goal and goal_store.vectors and goal_store.is_dominated(x.f[1:]):
            stats.pruned_by_solutions += 1
            continue
        if store is None:
            store = stores[u] = make_store(strategy, stats)
        store.insert(trunc_g)
        if debug_checks:
            _assert_non_dominated(store.vectors)
        if at_goal:
            sol_labels.append(x)
            stats.solutions += 1
            continue
        stats.expansions += 1
        gx = x.g
        parent = x if collect_paths else None
        for v, cost in edges[u]:
            hv = h[v]
            if hv is None:
                continue
            gy = tuple(a + b for a, b in zip(gx, cost))
            fy = tuple(a + b for a, b in zip(gy, hv))
            stats.generations += 1
            if eager:
                target_store = stores[v]
                if target_store is not None and target_store.is_dominated(gy[1:]):
                    stats.pruned_by_gtr += 1
                    continue
                if goal_store.vectors and goal_store.is_dominated(fy[1:]):
                    stats.pruned_by_solutions += 1
                    continue
            open_queue.push(Label(v, gy, fy, parent))
            if len(open_queue) > stats.queue_peak:
                stats.queue_peak = len(open_queue)

    sol_labels = drop_dominated_ties(sol_labels)
    stats.solutions = len(sol_labels)
    solutions = [Solution(x.g, x.path() if collect_paths else None)
                 for x in sol_labels]
    stats.elapsed = time.perf_counter() - started
    return SearchResult(solutions, stats)


def _assert_non_dominated(vectors: list[tuple]) -> None:
    for i, a in enumerate(vectors):
        for j, b in enumerate(vectors):
            if i != j:
                assert not all(x <= y for x, y in zip(a, b)), \
                    f"store holds dominated pair {a} <= {b}"
