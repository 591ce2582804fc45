"""Path-pair search: queue mechanics, merging, and output soundness."""

import random

import pytest

from biroute import (
    EXACT,
    ApproxFactor,
    CostVec,
    OpenQueue,
    PathArena,
    PathPair,
    SearchStats,
    UNREACHABLE,
    approx_dominates,
    bigraph_from_arcs,
    boa_search,
    check_approx_frontier,
    compute_heuristics,
    exact_frontier,
    insert_pair,
    merge_into_solutions,
    pair_is_dominated,
    ppa_search,
    random_instance,
    weakly_dominates,
)
from biroute.oracle import FrontierSet


def make_pair(arena, vertex, tl_cost, br_cost):
    tl = arena.add(vertex, CostVec(*tl_cost), None)
    br = tl if tl_cost == br_cost else arena.add(vertex, CostVec(*br_cost), None)
    return PathPair(vertex, tl, br, arena[tl].g, arena[br].g)


def h_for(g, goal):
    return compute_heuristics(g, goal)


class TestHandGraph:
    def test_exact_frontier_and_degenerate_pairs(self, g1):
        res = ppa_search(g1, h_for(g1, 3), 0, 3)
        assert res.solution_costs() == [CostVec(2, 8), CostVec(8, 2)]
        # With zero slack every surviving pair has tl cost == br cost.
        for pp in res.pairs:
            assert pp.tl_cost == pp.br_cost

    def test_relaxed_run_merges_goal_pairs(self, g1):
        res = ppa_search(g1, h_for(g1, 3), 0, 3, ApproxFactor(3, 3))
        assert res.solution_costs() == [CostVec(2, 8)]
        # The direct (9,9) route sits in the goal bucket when the cheaper
        # (2,8) route arrives and absorbs it; the mirror route is pruned
        # against the goal record afterwards.
        assert len(res.pairs) == 1
        assert res.pairs[0].tl_cost == CostVec(2, 8)
        assert res.pairs[0].br_cost == CostVec(2, 8)
        assert res.stats.n_merges >= 1

    def test_relaxed_run_stats(self, g1):
        res = ppa_search(g1, h_for(g1, 3), 0, 3, ApproxFactor(3, 3))
        assert res.stats.n_expanded == 3
        assert res.stats.n_generated == 5
        assert res.stats.n_merges == 1

    def test_solution_paths(self, g1):
        res = ppa_search(g1, h_for(g1, 3), 0, 3)
        assert res.solution_vertices(0) == [0, 1, 3]
        assert res.solution_vertices(1) == [0, 2, 3]


class TestPruning:
    def test_goal_bound_respects_slack(self):
        g = bigraph_from_arcs(4, [(0, 3, 2, 8)])
        h = h_for(g, 3)
        arena = PathArena()
        pp = make_pair(arena, 3, (8, 2), (8, 2))
        g2min = [UNREACHABLE] * 4
        g2min[3] = 8
        # f2 = 2; with slack 3 the relaxed bound (1+3)*2 = 8 >= 8 prunes it.
        assert pair_is_dominated(pp, g2min, 3, h.h2, ApproxFactor(3, 3))
        assert not pair_is_dominated(pp, g2min, 3, h.h2, EXACT)

    def test_no_bounds_means_no_pruning(self):
        g = bigraph_from_arcs(4, [(0, 3, 2, 8)])
        h = h_for(g, 3)
        arena = PathArena()
        pp = make_pair(arena, 0, (1, 1), (1, 1))
        g2min = [UNREACHABLE] * 4
        assert not pair_is_dominated(pp, g2min, 3, h.h2, EXACT)

    def test_per_vertex_bound_is_non_strict(self):
        g = bigraph_from_arcs(4, [(0, 3, 2, 8)])
        h = h_for(g, 3)
        arena = PathArena()
        pp = make_pair(arena, 0, (3, 5), (3, 5))
        g2min = [UNREACHABLE] * 4
        g2min[0] = 5
        assert pair_is_dominated(pp, g2min, 3, h.h2, EXACT)
        g2min[0] = 6
        assert not pair_is_dominated(pp, g2min, 3, h.h2, EXACT)


class TestQueueAndMerging:
    def test_insert_into_empty_bucket(self):
        g = bigraph_from_arcs(2, [(0, 1, 1, 1)])
        q = OpenQueue(h_for(g, 1))
        arena = PathArena()
        stats = SearchStats()
        insert_pair(q, make_pair(arena, 0, (2, 2), (2, 2)), EXACT, stats)
        assert len(q) == 1
        assert stats.n_merges == 0

    def test_mergeable_insert_keeps_bucket_size(self):
        g = bigraph_from_arcs(2, [(0, 1, 1, 1)])
        q = OpenQueue(h_for(g, 1))
        arena = PathArena()
        stats = SearchStats()
        insert_pair(q, make_pair(arena, 0, (4, 9), (4, 9)), ApproxFactor(1, 1), stats)
        insert_pair(q, make_pair(arena, 0, (6, 5), (6, 5)), ApproxFactor(1, 1), stats)
        # (4,9) and (6,5) merge into tl (4,9), br (6,5): bounded at slack 1.
        assert stats.n_merges == 1
        assert len(q) == 1
        merged = q.pop().pair
        assert merged.tl_cost == CostVec(4, 9)
        assert merged.br_cost == CostVec(6, 5)

    def test_unmergeable_insert_grows_bucket(self):
        g = bigraph_from_arcs(2, [(0, 1, 1, 1)])
        q = OpenQueue(h_for(g, 1))
        arena = PathArena()
        stats = SearchStats()
        insert_pair(q, make_pair(arena, 0, (2, 9), (2, 9)), EXACT, stats)
        insert_pair(q, make_pair(arena, 0, (9, 2), (9, 2)), EXACT, stats)
        assert stats.n_merges == 0
        assert len(q) == 2

    def test_first_fit_stops_at_first_bounded_merge(self):
        g = bigraph_from_arcs(2, [(0, 1, 1, 1)])
        q = OpenQueue(h_for(g, 1))
        arena = PathArena()
        stats = SearchStats()
        # Both residents could absorb the incoming pair; only the first
        # (in insertion order) does.
        insert_pair(q, make_pair(arena, 0, (10, 12), (10, 12)), ApproxFactor(1, 1), stats)
        insert_pair(q, make_pair(arena, 0, (30, 11), (30, 11)), ApproxFactor(1, 1), stats)
        assert stats.n_merges == 0 and len(q) == 2
        insert_pair(q, make_pair(arena, 0, (11, 11), (11, 11)), ApproxFactor(1, 1), stats)
        assert stats.n_merges == 1 and len(q) == 2
        costs = sorted((e.pair.tl_cost, e.pair.br_cost) for e in q.bucket(0))
        assert (CostVec(10, 12), CostVec(11, 11)) in costs
        assert (CostVec(30, 11), CostVec(30, 11)) in costs

    def test_merge_into_solutions_replaces_in_place(self):
        arena = PathArena()
        stats = SearchStats()
        sols = [make_pair(arena, 1, (4, 9), (4, 9))]
        merge_into_solutions(sols, make_pair(arena, 1, (6, 5), (6, 5)),
                             ApproxFactor(1, 1), stats)
        assert len(sols) == 1
        assert sols[0].tl_cost == CostVec(4, 9)
        assert sols[0].br_cost == CostVec(6, 5)
        assert stats.n_merges == 1

    def test_merge_into_solutions_appends_when_unbounded(self):
        arena = PathArena()
        stats = SearchStats()
        sols = [make_pair(arena, 1, (2, 9), (2, 9))]
        merge_into_solutions(sols, make_pair(arena, 1, (9, 2), (9, 2)), EXACT, stats)
        assert len(sols) == 2
        assert stats.n_merges == 0

    def test_pop_orders_by_apex_f(self):
        g = bigraph_from_arcs(2, [(0, 1, 1, 1)])
        q = OpenQueue(h_for(g, 1))
        arena = PathArena()
        stats = SearchStats()
        insert_pair(q, make_pair(arena, 0, (5, 1), (5, 1)), EXACT, stats)
        insert_pair(q, make_pair(arena, 0, (1, 5), (1, 5)), EXACT, stats)
        assert q.pop().pair.tl_cost == CostVec(1, 5)
        assert q.pop().pair.tl_cost == CostVec(5, 1)


class TestEdgeCases:
    def test_start_equals_goal(self, g1):
        res = ppa_search(g1, h_for(g1, 3), 3, 3)
        assert res.solution_costs() == [CostVec(0, 0)]

    def test_unreachable_goal(self):
        g = bigraph_from_arcs(3, [(1, 0, 1, 1)])
        res = ppa_search(g, h_for(g, 2), 0, 2)
        assert res.solution_costs() == []
        assert res.pairs == []

    def test_zero_cost_cycle_terminates(self):
        g = bigraph_from_arcs(2, [(0, 0, 0, 0), (0, 1, 1, 1)])
        res = ppa_search(g, h_for(g, 1), 0, 1)
        assert res.solution_costs() == [CostVec(1, 1)]

    def test_endpoint_validation(self, g1):
        with pytest.raises(ValueError):
            ppa_search(g1, h_for(g1, 3), 0, 2)


class TestProjectionAdversaries:
    """Two tiny graphs where the choice of returned path per pair matters."""

    def test_tl_projection_would_undercover(self):
        # Parallel arcs (5,22), (10,12), (10,10) at slack (1,1): the search
        # stores one goal pair tl=(5,22), br=(10,12) and prunes (10,10).
        # The tl cost alone cannot cover the frontier member (10,10) at
        # slack 1 on the second axis (22 > 2*10); the br cost can.
        g = bigraph_from_arcs(2, [(0, 1, 5, 22), (0, 1, 10, 12), (0, 1, 10, 10)])
        eps = ApproxFactor(1, 1)
        res = ppa_search(g, h_for(g, 1), 0, 1, eps)
        assert [(p.tl_cost, p.br_cost) for p in res.pairs] == [
            (CostVec(5, 22), CostVec(10, 12))
        ]
        exact = exact_frontier(g, 0, 1)
        assert CostVec(10, 10) in exact
        tl_covers = all(
            approx_dominates(res.pairs[0].tl_cost, c, eps) for c in exact
        )
        assert not tl_covers
        report = check_approx_frontier(res.solution_costs(), exact, eps)
        assert report.ok

    def test_raw_br_costs_would_self_dominate(self):
        # Parallel arcs (10,46), (20,24), (11,20), (12,10) at slack (1,1):
        # two goal pairs survive with br costs (20,24) and (12,10), and
        # (12,10) dominates (20,24).  The returned set must not contain
        # a member dominated by another member, so (20,24) is dropped.
        g = bigraph_from_arcs(
            2, [(0, 1, 10, 46), (0, 1, 20, 24), (0, 1, 11, 20), (0, 1, 12, 10)]
        )
        eps = ApproxFactor(1, 1)
        res = ppa_search(g, h_for(g, 1), 0, 1, eps)
        raw_br = [p.br_cost for p in res.pairs]
        assert CostVec(20, 24) in raw_br and CostVec(12, 10) in raw_br
        assert res.solution_costs() == [CostVec(12, 10)]
        report = check_approx_frontier(
            res.solution_costs(), exact_frontier(g, 0, 1), eps
        )
        assert report.ok

    def test_returned_costs_are_br_projections(self, g1):
        res = ppa_search(g1, h_for(g1, 3), 0, 3, ApproxFactor(3, 3))
        returned = set(res.solution_costs())
        assert returned <= {p.br_cost for p in res.pairs}


class TestRandomInstances:
    def test_exact_matches_oracle_and_boa(self):
        for seed in range(60):
            g, s, t = random_instance(seed, n_max=25)
            h = h_for(g, t)
            got = ppa_search(g, h, s, t).solution_costs()
            assert got == boa_search(g, h, s, t).solution_costs()
            assert got == list(exact_frontier(g, s, t))

    def test_relaxed_output_covers_and_stays_clean(self):
        rng = random.Random(5)
        for _ in range(40):
            seed = rng.randrange(10_000)
            eps = ApproxFactor(
                rng.choice([0.0, 0.05, 0.5, 1.0]), rng.choice([0.0, 0.05, 0.5, 1.0])
            )
            g, s, t = random_instance(seed, n_max=60, out_degree_max=5, cost_max=60)
            res = ppa_search(g, h_for(g, t), s, t, eps)
            exact = exact_frontier(g, s, t)
            report = check_approx_frontier(res.solution_costs(), exact, eps)
            assert report.ok, report

    def test_every_stored_pair_is_bounded(self):
        from biroute.pareto import is_bounded

        eps = ApproxFactor(0.25, 0.25)
        for seed in range(30):
            g, s, t = random_instance(seed, n_max=40, cost_max=30)
            res = ppa_search(g, h_for(g, t), s, t, eps)
            for pp in res.pairs:
                assert is_bounded(pp, eps)

    def test_frontier_set_helper(self):
        fs = FrontierSet.from_costs([CostVec(2, 8), CostVec(9, 9), CostVec(8, 2)])
        assert list(fs) == [CostVec(2, 8), CostVec(8, 2)]
        assert CostVec(2, 8) in fs and CostVec(9, 9) not in fs
