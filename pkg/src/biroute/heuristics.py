"""Admissible per-criterion lower bounds via backward Dijkstra.

For a fixed goal vertex the table holds, per vertex and per cost
component, the exact cheapest cost-to-goal when each criterion is
minimized on its own. Both components are computed independently on the
reverse adjacency, so the bounds are admissible and consistent for the
bi-criteria searches. Vertices that cannot reach the goal get an
UNREACHABLE sentinel that compares greater than any finite cost.
"""

from __future__ import annotations

import hashlib
import heapq
import pickle
from dataclasses import dataclass

from .graph import BiGraph

UNREACHABLE = float("inf")

_CACHE_VERSION = 1


@dataclass
class HeuristicTable:
    """Cost-to-goal lower bounds for one goal vertex.

    ``h1[v]`` and ``h2[v]`` are exact single-criterion distances from ``v``
    to ``goal``, or UNREACHABLE. Both arrays assign 0 to the goal itself.
    """

    goal: int
    h1: list[int | float]
    h2: list[int | float]

    def reachable(self, v: int) -> bool:
        return self.h1[v] != UNREACHABLE


def _backward_dijkstra(g: BiGraph, goal: int, component: int) -> list[int | float]:
    dist: list[int | float] = [UNREACHABLE] * g.vertex_count
    dist[goal] = 0
    heap: list[tuple[int, int]] = [(0, goal)]
    reverse_edges = g.reverse_edges
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for source, cost in reverse_edges[v]:
            nd = d + (cost.c1 if component == 1 else cost.c2)
            if nd < dist[source]:
                dist[source] = nd
                heapq.heappush(heap, (nd, source))
    return dist


def compute_heuristics(g: BiGraph, goal: int) -> HeuristicTable:
    """Run the two backward Dijkstras for ``goal`` and return the table."""
    if not (0 <= goal < g.vertex_count):
        raise ValueError(f"goal {goal} outside [0, {g.vertex_count})")
    return HeuristicTable(
        goal=goal,
        h1=_backward_dijkstra(g, goal, 1),
        h2=_backward_dijkstra(g, goal, 2),
    )


def graph_digest(g: BiGraph) -> str:
    """Content hash of a BiGraph, stable across processes."""
    hasher = hashlib.sha256()
    hasher.update(f"n={g.vertex_count}".encode())
    for u in range(g.vertex_count):
        for target, cost in g.edges[u]:
            hasher.update(f";{u},{target},{cost.c1},{cost.c2}".encode())
    return hasher.hexdigest()


def load_or_compute_heuristics(
    g: BiGraph, goal: int, cache_dir: str | None = None
) -> HeuristicTable:
    """compute_heuristics with an optional binary cache.

    Cache entries are keyed by (graph content hash, goal), so a stale file
    from a different graph can never be returned for this one.
    """
    if cache_dir is None:
        return compute_heuristics(g, goal)
    from pathlib import Path

    key = f"{graph_digest(g)}-{goal}-v{_CACHE_VERSION}"
    cache_path = Path(cache_dir) / f"h-{key}.pkl"
    if cache_path.exists():
        with open(cache_path, "rb") as fh:
            table = pickle.load(fh)
        if isinstance(table, HeuristicTable) and table.goal == goal:
            return table
    table = compute_heuristics(g, goal)
    cache_path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = cache_path.with_suffix(".tmp")
    with open(tmp_path, "wb") as fh:
        pickle.dump(table, fh)
    tmp_path.replace(cache_path)
    return table
