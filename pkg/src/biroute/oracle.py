"""Reference frontier computation, frontier checking, and instance generation.

The oracle is an intentionally plain label-correcting search with full
per-vertex dominance filtering: no heuristic, no pruning against the goal,
no approximation. It is slow but easy to trust, which makes it the
independent referee for both search engines on instances small enough to
enumerate.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .graph import BiGraph, CostVec, bigraph_from_arcs
from .pareto import ApproxFactor, approx_dominates, pareto_filter, weakly_dominates


class LabelBudgetError(RuntimeError):
    """Raised when the label-correcting search outgrows its label budget."""


class GenerationError(RuntimeError):
    """Raised when a random instance cannot produce a reachable query."""


@dataclass(frozen=True)
class FrontierSet:
    """An exact Pareto frontier: cost vectors ascending in c1, descending in c2."""

    costs: tuple[CostVec, ...]

    @classmethod
    def from_costs(cls, costs) -> "FrontierSet":
        return cls(tuple(pareto_filter(costs)))

    def __len__(self) -> int:
        return len(self.costs)

    def __iter__(self):
        return iter(self.costs)

    def __contains__(self, cost) -> bool:
        return CostVec(*cost) in self.costs


def exact_frontier(
    g: BiGraph, start: int, goal: int, label_budget: int = 100_000
) -> FrontierSet:
    """Every Pareto-optimal cost vector from start to goal.

    Label-correcting over per-vertex non-dominated label sets; a label is
    re-queued whenever it survives insertion. The budget caps total labels
    ever inserted so oversized instances fail fast instead of thrashing.
    """
    n = g.vertex_count
    if not (0 <= start < n and 0 <= goal < n):
        raise ValueError(f"endpoints ({start}, {goal}) outside [0, {n})")
    labels: list[list[CostVec]] = [[] for _ in range(n)]
    origin = CostVec(0, 0)
    labels[start].append(origin)
    inserted = 1
    queue: deque[tuple[int, CostVec]] = deque([(start, origin)])
    while queue:
        u, cost = queue.popleft()
        if cost not in labels[u]:
            continue
        for target, edge_cost in g.edges[u]:
            candidate = cost + edge_cost
            bucket = labels[target]
            if any(weakly_dominates(old, candidate) for old in bucket):
                continue
            bucket[:] = [old for old in bucket if not weakly_dominates(candidate, old)]
            bucket.append(candidate)
            inserted += 1
            if inserted > label_budget:
                raise LabelBudgetError(
                    f"label budget of {label_budget} exceeded; instance too large"
                )
            queue.append((target, candidate))
    return FrontierSet.from_costs(labels[goal])


@dataclass
class ApproxCheckReport:
    """Outcome of validating a candidate set against an exact frontier.

    ``coverage_ok`` and ``non_dominated_ok`` are the hard conditions;
    whether each candidate is itself a member of the exact frontier is
    reported but not judged, since approximate engines may legitimately
    return non-frontier paths.
    """

    eps: ApproxFactor
    coverage_ok: bool
    uncovered: tuple[CostVec, ...]
    non_dominated_ok: bool
    dominated_pairs: tuple[tuple[CostVec, CostVec], ...]
    n_candidates: int
    n_members: int
    non_members: tuple[CostVec, ...]

    @property
    def ok(self) -> bool:
        return self.coverage_ok and self.non_dominated_ok


def check_approx_frontier(
    candidate_costs, exact: FrontierSet, eps: ApproxFactor
) -> ApproxCheckReport:
    """Judge a candidate cost set as an (eps1, eps2)-approximate frontier.

    Hard conditions: every exact frontier cost must be approximately
    dominated by some candidate, and no candidate may weakly dominate
    another. Candidates are deduplicated before checking. An empty
    candidate set passes only against an empty frontier.
    """
    candidates = sorted(set(CostVec(*c) for c in candidate_costs))
    uncovered = tuple(
        p for p in exact.costs
        if not any(approx_dominates(c, p, eps) for c in candidates)
    )
    dominated = tuple(
        (victim, other)
        for victim in candidates
        for other in candidates
        if victim != other and weakly_dominates(other, victim)
    )
    non_members = tuple(c for c in candidates if c not in exact)
    return ApproxCheckReport(
        eps=eps,
        coverage_ok=not uncovered,
        uncovered=uncovered,
        non_dominated_ok=not dominated,
        dominated_pairs=dominated,
        n_candidates=len(candidates),
        n_members=len(candidates) - len(non_members),
        non_members=non_members,
    )


def random_instance(
    seed: int,
    n_max: int = 50,
    out_degree_max: int = 4,
    cost_max: int = 10,
    retry_budget: int = 200,
) -> tuple[BiGraph, int, int]:
    """A seeded random digraph plus a reachable (start, goal) query.

    The same seed always yields the same instance. Vertex count is drawn
    from [1, n_max]; each vertex gets up to out_degree_max arcs to uniform
    targets (self loops and parallel arcs allowed) with costs in
    [1, cost_max]. Endpoints are re-drawn until the goal is reachable from
    the start, raising GenerationError once the retry budget is spent.
    """
    if n_max < 1 or out_degree_max < 0 or cost_max < 1:
        raise ValueError("n_max and cost_max must be >= 1, out_degree_max >= 0")
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    arcs = []
    for u in range(n):
        for _ in range(rng.randint(0, out_degree_max)):
            arcs.append(
                (u, rng.randrange(n), rng.randint(1, cost_max), rng.randint(1, cost_max))
            )
    g = bigraph_from_arcs(n, arcs)
    for _ in range(retry_budget):
        start = rng.randrange(n)
        goal = rng.randrange(n)
        if _reaches(g, start, goal):
            return g, start, goal
    raise GenerationError(
        f"no reachable (start, goal) pair found in {retry_budget} draws (seed {seed})"
    )


def _reaches(g: BiGraph, start: int, goal: int) -> bool:
    if start == goal:
        return True
    seen = {start}
    frontier = [start]
    while frontier:
        u = frontier.pop()
        for target, _ in g.edges[u]:
            if target == goal:
                return True
            if target not in seen:
                seen.add(target)
                frontier.append(target)
    return False
