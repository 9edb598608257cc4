"""Directed multi-cost graphs: DIMACS ingestion, composition, generators.

On-disk formats:

* plain DIMACS ``.gr``: ``c`` comments, one ``p sp <n> <m>`` problem line,
  arcs ``a <u> <v> <w>`` with 1-based vertex ids and a single weight.
* extended ``.gr``: same shape with ``p mosp <n> <m> <k>`` and arcs carrying
  k weights, ``a <u> <v> <w1> ... <wk>``. This is the canonical format for
  composed multi-cost graphs. A comment ``c start <s> goal <g>`` (1-based)
  optionally embeds a query pair.
"""

from __future__ import annotations

import hashlib
import random
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, NamedTuple, Optional, Sequence

from .core import MAX_OBJECTIVES, MIN_OBJECTIVES

SYNTHETIC_KINDS = ("outdegree", "unit")


class GrParseError(ValueError):
    """Malformed .gr input; message carries the offending line number."""


class CompositionError(ValueError):
    """Input .gr files do not share an identical topology."""


class GenerationError(RuntimeError):
    """Random instance generation could not produce a usable instance."""


class Graph:
    """Immutable directed graph with a k-dimensional cost on every arc.

    ``edges[u]`` lists outgoing ``(v, cost)`` pairs in input order;
    ``reverse_edges`` is the exact transpose and drives the heuristics.
    Parallel arcs are allowed.
    """

    __slots__ = ("num_states", "k", "edges", "reverse_edges", "num_arcs")

    def __init__(self, num_states: int, k: int,
                 arcs: Iterable[tuple[int, int, tuple[int, ...]]]):
        if num_states < 1:
            raise ValueError("graph needs at least one state")
        if not MIN_OBJECTIVES <= k <= MAX_OBJECTIVES:
            raise ValueError(
                f"objective count must be in [{MIN_OBJECTIVES}, {MAX_OBJECTIVES}], got {k}")
        edges: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(num_states)]
        reverse: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(num_states)]
        count = 0
        for u, v, cost in arcs:
            if not (0 <= u < num_states and 0 <= v < num_states):
                raise ValueError(f"arc ({u}, {v}) out of range for {num_states} states")
            if len(cost) != k:
                raise ValueError(f"arc ({u}, {v}) has {len(cost)} costs, expected {k}")
            if any(c < 0 for c in cost):
                raise ValueError(f"arc ({u}, {v}) has a negative cost entry")
            cost = tuple(cost)
            edges[u].append((v, cost))
            reverse[v].append((u, cost))
            count += 1
        self.num_states = num_states
        self.k = k
        self.edges = edges
        self.reverse_edges = reverse
        self.num_arcs = count

    def arcs(self) -> Iterator[tuple[int, int, tuple[int, ...]]]:
        """All arcs as (u, v, cost), grouped by source state."""
        for u, out in enumerate(self.edges):
            for v, cost in out:
                yield u, v, cost

    def out_degree(self, u: int) -> int:
        return len(self.edges[u])

    def signature(self) -> str:
        """Stable content hash used to key heuristic cache files."""
        digest = hashlib.sha256()
        digest.update(f"{self.num_states} {self.k}\n".encode())
        for u, v, cost in self.arcs():
            digest.update(f"{u} {v} {' '.join(map(str, cost))}\n".encode())
        return digest.hexdigest()


@dataclass(frozen=True)
class ProblemInstance:
    graph: Graph
    start: int
    goal: int

    def __post_init__(self):
        n = self.graph.num_states
        if not (0 <= self.start < n and 0 <= self.goal < n):
            raise ValueError(f"start/goal out of range for {n} states")


class ParsedGr(NamedTuple):
    num_states: int
    k: int
    arcs: list[tuple[int, int, tuple[int, ...]]]
    start: Optional[int]  # 0-based, from the optional metadata comment
    goal: Optional[int]


def parse_gr(text: str) -> ParsedGr:
    """Parse plain (``p sp``) or extended (``p mosp``) .gr content."""
    num_states = None
    num_arcs = None
    k = None
    start = None
    goal = None
    arcs: list[tuple[int, int, tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "c":
            if len(fields) == 5 and fields[1] == "start" and fields[3] == "goal":
                try:
                    start = int(fields[2]) - 1
                    goal = int(fields[4]) - 1
                except ValueError:
                    pass
            continue
        if tag == "p":
            if num_states is not None:
                raise GrParseError(f"line {lineno}: duplicate problem line")
            if len(fields) == 4 and fields[1] == "sp":
                k = 1
            elif len(fields) == 5 and fields[1] == "mosp":
                k = _parse_int(fields[4], lineno, "objective count")
                if not MIN_OBJECTIVES <= k <= MAX_OBJECTIVES:
                    raise GrParseError(
                        f"line {lineno}: objective count {k} outside "
                        f"[{MIN_OBJECTIVES}, {MAX_OBJECTIVES}]")
            else:
                raise GrParseError(f"line {lineno}: unrecognized problem line {line!r}")
            num_states = _parse_int(fields[2], lineno, "state count")
            num_arcs = _parse_int(fields[3], lineno, "arc count")
            if num_states < 1:
                raise GrParseError(f"line {lineno}: state count must be positive")
            continue
        if tag == "a":
            if num_states is None:
                raise GrParseError(f"line {lineno}: arc before problem line")
            if len(fields) != 3 + k:
                raise GrParseError(
                    f"line {lineno}: expected {k} weight(s), got {len(fields) - 3}")
            u = _parse_int(fields[1], lineno, "tail vertex")
            v = _parse_int(fields[2], lineno, "head vertex")
            if not (1 <= u <= num_states and 1 <= v <= num_states):
                raise GrParseError(f"line {lineno}: vertex id out of range [1, {num_states}]")
            weights = tuple(_parse_int(w, lineno, "weight") for w in fields[3:])
            if any(w < 0 for w in weights):
                raise GrParseError(f"line {lineno}: negative weight")
            arcs.append((u - 1, v - 1, weights))
            continue
        raise GrParseError(f"line {lineno}: unrecognized line {line!r}")
    if num_states is None:
        raise GrParseError("missing problem line")
    if len(arcs) != num_arcs:
        raise GrParseError(
            f"problem line declares {num_arcs} arcs but file has {len(arcs)}")
    return ParsedGr(num_states, k, arcs, start, goal)


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GrParseError(f"line {lineno}: non-integer {what}: {token!r}") from None


def parse_dimacs_gr(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    """Parse a single-weight DIMACS .gr file into (num_states, arcs)."""
    parsed = parse_gr(text)
    if parsed.k != 1:
        raise GrParseError("expected a single-weight 'p sp' file")
    return parsed.num_states, [(u, v, w[0]) for u, v, w in parsed.arcs]


def compose_multi_cost(parsed_files: Sequence[ParsedGr],
                       synthetic: Sequence[str] = ()) -> Graph:
    """Concatenate per-arc weights from topology-identical files.

    Synthetic dimensions are appended after the file weights: ``unit`` is the
    constant 1, ``outdegree`` is the mean of the endpoint out-degrees rounded
    to nearest with ties up. Out-degrees count parallel arcs.
    """
    if not parsed_files:
        raise CompositionError("no input files")
    for kind in synthetic:
        if kind not in SYNTHETIC_KINDS:
            raise ValueError(f"unknown synthetic cost kind: {kind!r}")
    base = parsed_files[0]
    for idx, other in enumerate(parsed_files[1:], start=2):
        if other.num_states != base.num_states:
            raise CompositionError(
                f"file {idx} has {other.num_states} states, expected {base.num_states}")
        if len(other.arcs) != len(base.arcs):
            raise CompositionError(
                f"file {idx} has {len(other.arcs)} arcs, expected {len(base.arcs)}")
        for pos, ((u1, v1, _), (u2, v2, _)) in enumerate(zip(base.arcs, other.arcs)):
            if (u1, v1) != (u2, v2):
                raise CompositionError(
                    f"file {idx} arc #{pos + 1} is ({u2 + 1}, {v2 + 1}), "
                    f"expected ({u1 + 1}, {v1 + 1})")
    file_dims = sum(p.k for p in parsed_files)
    k = file_dims + len(synthetic)
    if not MIN_OBJECTIVES <= k <= MAX_OBJECTIVES:
        raise CompositionError(
            f"composed objective count {k} outside [{MIN_OBJECTIVES}, {MAX_OBJECTIVES}]")
    out_degree = [0] * base.num_states
    for u, _, _ in base.arcs:
        out_degree[u] += 1
    arcs = []
    for pos in range(len(base.arcs)):
        u, v, _ = base.arcs[pos]
        weights: list[int] = []
        for parsed in parsed_files:
            weights.extend(parsed.arcs[pos][2])
        for kind in synthetic:
            if kind == "unit":
                weights.append(1)
            else:
                weights.append((out_degree[u] + out_degree[v] + 1) // 2)
        arcs.append((u, v, tuple(weights)))
    return Graph(base.num_states, k, arcs)


def write_extended_gr(stream: IO[str], graph: Graph,
                      start: Optional[int] = None, goal: Optional[int] = None) -> None:
    """Write a graph in the extended multi-weight format (1-based ids)."""
    if start is not None and goal is not None:
        stream.write(f"c start {start + 1} goal {goal + 1}\n")
    stream.write(f"p mosp {graph.num_states} {graph.num_arcs} {graph.k}\n")
    for u, v, cost in graph.arcs():
        stream.write(f"a {u + 1} {v + 1} {' '.join(map(str, cost))}\n")


def load_instance(texts: Sequence[str], synthetic: Sequence[str] = (),
                  start: Optional[int] = None, goal: Optional[int] = None) -> ProblemInstance:
    """Build an instance from one extended file or several plain files."""
    parsed = [parse_gr(text) for text in texts]
    if len(parsed) == 1 and parsed[0].k >= MIN_OBJECTIVES and not synthetic:
        graph = Graph(parsed[0].num_states, parsed[0].k, parsed[0].arcs)
    else:
        graph = compose_multi_cost(parsed, synthetic)
    if start is None:
        start = parsed[0].start
    if goal is None:
        goal = parsed[0].goal
    if start is None or goal is None:
        raise ValueError("start and goal are required (flag or embedded comment)")
    return ProblemInstance(graph, start, goal)


def is_reachable(graph: Graph, start: int, goal: int) -> bool:
    if start == goal:
        return True
    seen = bytearray(graph.num_states)
    seen[start] = 1
    queue = deque([start])
    edges = graph.edges
    while queue:
        u = queue.popleft()
        for v, _ in edges[u]:
            if v == goal:
                return True
            if not seen[v]:
                seen[v] = 1
                queue.append(v)
    return False


_MAX_GRAPH_ATTEMPTS = 20
_MAX_PAIR_ATTEMPTS = 10


def generate_random(num_states: int, avg_out_degree: int, k: int,
                    max_cost: int, seed: int) -> ProblemInstance:
    """Uniform random multigraph with a reachable start/goal pair.

    Deterministic per seed: arcs, costs and the start/goal pair all come
    from one seeded generator, including any regeneration retries.
    """
    if num_states < 2:
        raise ValueError("need at least two states")
    if avg_out_degree < 1 or max_cost < 1:
        raise ValueError("avg_out_degree and max_cost must be >= 1")
    rng = random.Random(seed)
    num_arcs = num_states * avg_out_degree
    for _ in range(_MAX_GRAPH_ATTEMPTS):
        arcs = []
        for _ in range(num_arcs):
            u = rng.randrange(num_states)
            v = rng.randrange(num_states - 1)
            if v >= u:
                v += 1
            cost = tuple(rng.randint(1, max_cost) for _ in range(k))
            arcs.append((u, v, cost))
        graph = Graph(num_states, k, arcs)
        for _ in range(_MAX_PAIR_ATTEMPTS):
            start = rng.randrange(num_states)
            goal = rng.randrange(num_states - 1)
            if goal >= start:
                goal += 1
            if is_reachable(graph, start, goal):
                return ProblemInstance(graph, start, goal)
    raise GenerationError(
        f"no reachable start/goal pair after {_MAX_GRAPH_ATTEMPTS} graphs "
        f"(n={num_states}, d={avg_out_degree})")


def generate_grid(width: int, height: int, k: int,
                  max_cost: int, seed: int) -> ProblemInstance:
    """4-connected grid digraph (both arc directions per adjacency).

    States are row-major; start is the top-left corner, goal the
    bottom-right. Every directed arc draws its own random cost vector.
    """
    if width < 1 or height < 1 or width * height < 2:
        raise ValueError("grid needs at least two states")
    if max_cost < 1:
        raise ValueError("max_cost must be >= 1")
    rng = random.Random(seed)
    num_states = width * height
    arcs = []
    for row in range(height):
        for col in range(width):
            u = row * width + col
            for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                r, c = row + dr, col + dc
                if 0 <= r < height and 0 <= c < width:
                    cost = tuple(rng.randint(1, max_cost) for _ in range(k))
                    arcs.append((u, r * width + c, cost))
    graph = Graph(num_states, k, arcs)
    return ProblemInstance(graph, 0, num_states - 1)
