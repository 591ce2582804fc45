"""Best-first bi-criteria search over path pairs.

Instead of one OPEN entry per candidate path, this engine keeps one entry
per *path pair*: two same-vertex paths whose costs bracket a contiguous
slice of candidate frontier costs. A pair is only ever stored while its
spread stays within the per-criterion slack (eps1 on the first cost, eps2
on the second), so each of its two paths is a certified stand-in for
everything the pair brackets. Whenever a new pair lands at a vertex whose
bucket already holds a pair it can absorb within the slack, the two are
merged in place of being queued separately, which is what makes the OPEN
list and the returned solution set shrink as the slack grows.

Ordering is lexicographic by the pair's apex f-value: (f1 of the
top-left path, f2 of the bottom-right path), FIFO on ties. Pruning
mirrors the single-path engine with the bottom-right path standing in for
the pair: a pair is dropped when f2 of its bottom-right path, relaxed by
(1 + eps2), cannot beat the smallest second-cost expanded at the goal, or
when that path's g2 is no better than the record at the pair's vertex.

Projection to returned paths: each stored solution pair contributes its
bottom-right path. The bottom-right cost is within the slack of every
cost its pair brackets, and pruning is justified against bottom-right
costs, so the bottom-right projection preserves the coverage guarantee at
exactly (eps1, eps2); the top-left projection can miss it by a compounded
factor when a pruned path is covered through a pair whose top-left sits
at the edge of its own spread. Because bottom-right costs of distinct
pairs can occasionally dominate one another, the projected set is reduced
to its non-dominated subset before being returned; dropping a dominated
member never weakens coverage.
"""

from __future__ import annotations

import heapq
from typing import Iterator

from .graph import BiGraph
from .heuristics import UNREACHABLE, HeuristicTable
from .pareto import (
    EXACT,
    ApproxFactor,
    PathArena,
    PathPair,
    SearchResult,
    SearchStats,
    extend,
    is_bounded,
    merge,
    pareto_filter,
    trivial_pair,
)

_INF = float("inf")


class _Entry:
    """One OPEN slot; ``live`` flips off on extraction or merge removal."""

    __slots__ = ("pair", "f1", "f2", "seq", "live")

    def __init__(self, pair: PathPair, f1: int, f2: int, seq: int):
        self.pair = pair
        self.f1 = f1
        self.f2 = f2
        self.seq = seq
        self.live = True


class OpenQueue:
    """Lazy-deletion heap of path pairs keyed by apex f, lexicographic.

    Alongside the heap, live entries are indexed by vertex so merge
    candidates are found by scanning one bucket in insertion order rather
    than the whole queue; merging is defined only between same-vertex
    pairs, so the restriction loses nothing. Removal just clears the live
    flag and the bucket slot; the heap forgets the entry when popped.
    """

    def __init__(self, h: HeuristicTable):
        self._h1 = h.h1
        self._h2 = h.h2
        self._heap: list[tuple[int, int, int, _Entry]] = []
        self._buckets: dict[int, dict[int, _Entry]] = {}
        self._seq = 0
        self.n_live = 0

    def __len__(self) -> int:
        return self.n_live

    def push(self, pair: PathPair) -> _Entry:
        v = pair.vertex
        f1 = pair.tl_cost.c1 + self._h1[v]
        f2 = pair.br_cost.c2 + self._h2[v]
        entry = _Entry(pair, f1, f2, self._seq)
        self._seq += 1
        heapq.heappush(self._heap, (f1, f2, entry.seq, entry))
        self._buckets.setdefault(v, {})[entry.seq] = entry
        self.n_live += 1
        return entry

    def pop(self) -> _Entry | None:
        """Extract the lexicographically smallest live entry, if any."""
        while self._heap:
            _, _, _, entry = heapq.heappop(self._heap)
            if entry.live:
                self.remove(entry)
                return entry
        return None

    def remove(self, entry: _Entry) -> None:
        entry.live = False
        bucket = self._buckets.get(entry.pair.vertex)
        if bucket is not None:
            bucket.pop(entry.seq, None)
        self.n_live -= 1

    def bucket(self, vertex: int) -> Iterator[_Entry]:
        """Live entries at ``vertex`` in insertion order."""
        return iter(tuple(self._buckets.get(vertex, {}).values()))


def pair_is_dominated(
    pair: PathPair,
    g2min: list,
    goal: int,
    h2: list,
    eps: ApproxFactor,
) -> bool:
    """The pruning test applied at both generation and extraction.

    True when the bottom-right path's f2, relaxed by (1 + eps2), is no
    better than the smallest second-cost already expanded at the goal, or
    when its g2 is no better than the record at the pair's own vertex.
    """
    f2 = pair.br_cost.c2 + h2[pair.vertex]
    if f2 + eps.eps2 * f2 >= g2min[goal]:
        return True
    return pair.br_cost.c2 >= g2min[pair.vertex]


def insert_pair(
    queue: OpenQueue, pair: PathPair, eps: ApproxFactor, stats: SearchStats
) -> None:
    """Queue ``pair``, first-fit merging into its vertex bucket.

    The bucket is scanned in insertion order; the first existing pair
    whose merge with ``pair`` stays within the slack is replaced by that
    merged pair (re-keyed by its apex) and the scan stops. Otherwise
    ``pair`` is queued as-is. At most one merge happens per insertion.
    """
    if __debug__:
        assert is_bounded(pair, eps), "attempted to queue an out-of-slack pair"
    for entry in queue.bucket(pair.vertex):
        merged = merge(entry.pair, pair)
        if is_bounded(merged, eps):
            queue.remove(entry)
            queue.push(merged)
            stats.n_merges += 1
            return
    queue.push(pair)


def merge_into_solutions(
    solutions: list[PathPair], pair: PathPair, eps: ApproxFactor, stats: SearchStats
) -> None:
    """Add a goal pair to the solution set, first-fit merging like OPEN."""
    if __debug__:
        assert is_bounded(pair, eps), "attempted to store an out-of-slack solution"
    for i, existing in enumerate(solutions):
        merged = merge(existing, pair)
        if is_bounded(merged, eps):
            solutions.pop(i)
            solutions.append(merged)
            stats.n_merges += 1
            return
    solutions.append(pair)


def ppa_search(
    g: BiGraph,
    h: HeuristicTable,
    start: int,
    goal: int,
    eps: ApproxFactor = EXACT,
) -> SearchResult:
    """Compute an (eps1, eps2)-approximate Pareto frontier via path pairs.

    ``h`` must be the heuristic table computed for ``goal``. The result's
    ``pairs`` field keeps the stored solution pairs; ``solutions`` holds
    the projected paths described in the module docstring. With zero slack
    the returned costs are exactly the Pareto-optimal ones.
    """
    _validate(g, h, start, goal)
    arena = PathArena()
    stats = SearchStats()
    result = SearchResult(arena=arena, solutions=[], stats=stats)
    h1, h2 = h.h1, h.h2
    if h1[start] == UNREACHABLE:
        return result
    edges = g.edges
    g2min: list = [_INF] * g.vertex_count
    queue = OpenQueue(h)
    queue.push(trivial_pair(arena, start))
    stats.n_generated = 1
    solution_pairs: list[PathPair] = []
    if __debug__:
        last_f1 = 0
        last_f2_at: dict[int, int] = {}

    while True:
        entry = queue.pop()
        if entry is None:
            break
        pair = entry.pair
        if pair_is_dominated(pair, g2min, goal, h2, eps):
            continue
        stats.n_expanded += 1
        u = pair.vertex
        if __debug__:
            assert entry.f1 >= last_f1, "extraction order broke apex f1 monotonicity"
            last_f1 = entry.f1
            prev_f2 = last_f2_at.get(u)
            assert prev_f2 is None or entry.f2 < prev_f2, (
                "expansions at a vertex broke strict apex f2 descent"
            )
            last_f2_at[u] = entry.f2
        g2min[u] = pair.br_cost.c2
        if u == goal:
            merge_into_solutions(solution_pairs, pair, eps, stats)
            continue
        for edge in edges[u]:
            if h1[edge.target] == UNREACHABLE:
                continue
            child = extend(pair, edge, arena)
            if pair_is_dominated(child, g2min, goal, h2, eps):
                continue
            stats.n_generated += 1
            insert_pair(queue, child, eps, stats)

    result.pairs = solution_pairs
    kept_costs = set(pareto_filter(p.br_cost for p in solution_pairs))
    for p in solution_pairs:
        if p.br_cost in kept_costs:
            result.solutions.append(p.br)
            kept_costs.discard(p.br_cost)
    return result


def _validate(g: BiGraph, h: HeuristicTable, start: int, goal: int) -> None:
    n = g.vertex_count
    if not (0 <= start < n and 0 <= goal < n):
        raise ValueError(f"endpoints ({start}, {goal}) outside [0, {n})")
    if h.goal != goal:
        raise ValueError(f"heuristic table was built for goal {h.goal}, not {goal}")
    if len(h.h1) != n or len(h.h2) != n:
        raise ValueError("heuristic table size does not match the graph")
