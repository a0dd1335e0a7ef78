import itertools

import numpy as np
import pytest

from balance import (
    SeedAssignment,
    SetCoverInstance,
    brute_force_opt,
    check_cover_ratio,
    check_halving_lemma,
    check_hedge_common_ratio,
    exact_phi,
    load_set_cover,
    make_graph,
    reduction_from_set_cover,
    set_cover_exists,
    zero_imbalance_matches_coverability,
)

from conftest import random_digraph, random_seed_sets


class TestBruteForce:
    def test_g1_k1(self, g1):
        report = brute_force_opt(g1, "correlated", {0}, {2}, 1)
        assert report.opt_value == pytest.approx(3.0, abs=1e-12)
        assert (frozenset(), frozenset({0})) in report.opt_assignments
        assert report.instances_checked == 7   # (0,0) + 3+3 singles

    def test_k0_is_empty_value(self, g1):
        report = brute_force_opt(g1, "correlated", {0}, {2}, 0)
        assert report.opt_value == pytest.approx(1.0)
        assert report.opt_assignments == ((frozenset(), frozenset()),)

    def test_g3_k2(self, g3):
        report = brute_force_opt(g3, "correlated", {0}, {1}, 2)
        assert report.opt_value == pytest.approx(3.0)
        assert (frozenset({1}), frozenset({0})) in report.opt_assignments

    def test_opt_at_least_empty(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            g = random_digraph(rng, equal_probs=True)
            i1, i2 = random_seed_sets(rng, g.n)
            empty = exact_phi(g, "correlated", SeedAssignment(i1, i2, k=0))
            report = brute_force_opt(g, "correlated", i1, i2, 2)
            assert report.opt_value >= empty - 1e-12

    def test_size_guard(self):
        g = make_graph([(i, i + 1, 1.0, 1.0) for i in range(60)])
        with pytest.raises(ValueError, match="too large"):
            brute_force_opt(g, "correlated", {0}, {0}, 10)


class TestCoverRatio:
    def test_g1_k1(self, g1):
        assert check_cover_ratio(g1, "correlated", {0}, {2}, 1)

    def test_g3_k1(self, g3):
        assert check_cover_ratio(g3, "correlated", {0}, {1}, 1)

    def test_k0(self, g1):
        assert check_cover_ratio(g1, "correlated", {0}, {2}, 0)

    def test_heterogeneous_model(self, g2):
        assert check_cover_ratio(g2, "heterogeneous", {0}, {0}, 2)


class TestHedgeCommonRatio:
    def test_g1_k2(self, g1):
        assert check_hedge_common_ratio(g1, {0}, {2}, 2)

    def test_single_vertex_graph(self):
        g = make_graph([], names=["v"])
        assert check_hedge_common_ratio(g, {0}, {0}, 2)

    def test_odd_budget_rejected(self, g1):
        with pytest.raises(ValueError, match="even"):
            check_hedge_common_ratio(g1, {0}, {2}, 3)


class TestHalvingLemma:
    def test_g1_pair(self, g1):
        assert check_halving_lemma(g1, {0}, {2}, {2}, {0})

    def test_empty_assignment_vacuous(self, g1):
        assert check_halving_lemma(g1, {0}, {2}, set(), set())

    def test_odd_total_rejected(self, g1):
        with pytest.raises(ValueError, match="even"):
            check_halving_lemma(g1, {0}, {2}, {1}, set())

    def test_random_budget2_assignments(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            g = random_digraph(rng, n_max=5, m_max=6, equal_probs=True)
            i1, i2 = random_seed_sets(rng, g.n)
            for v1, v2 in itertools.product(range(g.n), repeat=2):
                assert check_halving_lemma(g, i1, i2, {v1}, {v2})


class TestSetCover:
    def test_instance_validation(self):
        with pytest.raises(ValueError):
            SetCoverInstance(2, (), 1)
        with pytest.raises(ValueError):
            SetCoverInstance(2, (frozenset(),), 1)
        with pytest.raises(ValueError):
            SetCoverInstance(2, (frozenset({5}),), 1)

    def test_exists(self):
        inst = SetCoverInstance(3, ({0, 1}, {2}), 2)
        assert set_cover_exists(inst)
        assert not set_cover_exists(SetCoverInstance(3, ({0, 1}, {1, 2}), 1))

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "sc.txt"
        path.write_text("3 2\n0 1\n2\n", encoding="utf-8")
        inst = load_set_cover(path)
        assert inst.universe_size == 3 and inst.k == 2
        assert inst.sets == (frozenset({0, 1}), frozenset({2}))


class TestReduction:
    def test_shape_for_fixture(self):
        inst = SetCoverInstance(2, ({0}, {1}, {0, 1}), 1)
        g, i1, i2, budget = reduction_from_set_cover(inst)
        assert g.n == 6                 # 2 universe + 3 set copies + 1 collector
        assert budget == 2
        assert i1 == frozenset()
        assert i2 == frozenset({0, 1, 5})
        assert np.all(g.p1 == 1.0) and np.all(g.p2 == 1.0)

    def test_coverable_instance_reaches_zero_imbalance(self):
        inst = SetCoverInstance(2, ({0}, {1}, {0, 1}), 1)
        g, i1, i2, budget = reduction_from_set_cover(inst)
        report = brute_force_opt(g, "correlated", i1, i2, budget)
        assert report.opt_value == pytest.approx(g.n)

    def test_uncoverable_instance_stays_imbalanced(self):
        inst = SetCoverInstance(2, ({0}, {1}), 1)
        g, i1, i2, budget = reduction_from_set_cover(inst)
        report = brute_force_opt(g, "correlated", i1, i2, budget)
        assert report.opt_value < g.n - 1e-9

    def test_equivalence_helper(self):
        assert zero_imbalance_matches_coverability(
            SetCoverInstance(2, ({0}, {1}, {0, 1}), 1))
        assert zero_imbalance_matches_coverability(
            SetCoverInstance(2, ({0}, {1}), 1))

    def test_uncoverable_element_rejected(self):
        # with element 1 in no subset, zero imbalance is reachable by seeding
        # it directly, so the construction refuses the instance
        inst = SetCoverInstance(2, ({0},), 2)
        with pytest.raises(ValueError, match="no subset"):
            reduction_from_set_cover(inst)
