import numpy as np
import pytest

from balance import (
    SeedAssignment,
    build_ensemble,
    estimate_omega,
    estimate_phi,
    estimate_psi,
    exact_phi,
    make_graph,
)
from balance.objective import ExactEvaluator

from conftest import random_digraph, random_seed_sets


def assign(i1, i2, s1=(), s2=(), k=None):
    s1, s2 = frozenset(s1), frozenset(s2)
    if k is None:
        k = len(s1) + len(s2)
    return SeedAssignment(frozenset(i1), frozenset(i2), s1, s2, k)


class TestEstimatePhi:
    def test_g1_no_added_seeds(self, g1):
        ens = build_ensemble(g1, "correlated", 4, rng_seed=0)
        bd = estimate_phi(ens, assign({0}, {2}))
        assert bd.phi == 1.0          # only the far endpoint sees both
        assert bd.omega == 1.0 and bd.psi == 0.0
        assert (bd.a, bd.b, bd.c) == (1.0, 0.0, 0.0)
        assert bd.std_err == 0.0

    def test_g1_balancing_seed(self, g1):
        ens = build_ensemble(g1, "correlated", 4, rng_seed=0)
        bd = estimate_phi(ens, assign({0}, {2}, s2={0}))
        assert bd.phi == 3.0
        assert bd.omega == 3.0
        assert (bd.a, bd.b) == (1.0, 2.0)

    def test_g3_untouched_vertex(self, g3):
        ens = build_ensemble(g3, "correlated", 4, rng_seed=0)
        bd = estimate_phi(ens, assign({0}, {1}))
        assert bd.phi == 1.0
        assert bd.psi == 1.0 and bd.omega == 0.0

    def test_single_world_matches_on_deterministic_graph(self, g1):
        one = build_ensemble(g1, "correlated", 1, rng_seed=5)
        many = build_ensemble(g1, "correlated", 1000, rng_seed=5)
        a = assign({0}, {2}, s2={0})
        assert estimate_phi(one, a).phi == estimate_phi(many, a).phi
        assert estimate_phi(one, a).std_err == 0.0


class TestOmegaPsi:
    def test_g1_values(self, g1):
        ens = build_ensemble(g1, "correlated", 4, rng_seed=0)
        assert estimate_omega(ens, assign({0}, {2})) == 1.0
        assert estimate_omega(ens, assign({0}, {2}, s2={0})) == 3.0

    def test_same_initial_sets_reduce_to_intersection(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            g = random_digraph(rng)
            ens = build_ensemble(g, "heterogeneous", 50, rng_seed=int(rng.integers(1 << 30)))
            i1, _ = random_seed_sets(rng, g.n)
            got = estimate_omega(ens, assign(i1, i1))
            from balance import reach
            want = np.mean([
                len(reach(w, 1, i1) & reach(w, 2, i1)) for w in ens.worlds
            ])
            assert got == pytest.approx(want, abs=1e-12)

    def test_psi_examples(self, g1, g3):
        ens1 = build_ensemble(g1, "correlated", 4, rng_seed=0)
        assert estimate_psi(ens1, assign({0}, {2}, s2={0})) == 0.0
        ens3 = build_ensemble(g3, "correlated", 4, rng_seed=0)
        assert estimate_psi(ens3, assign({0}, {1})) == 1.0
        assert estimate_psi(ens3, assign({0}, {1}, s1={2}, k=1)) == 0.0

    def test_decomposition_identity_randomized(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            g = random_digraph(rng, equal_probs=False)
            ens = build_ensemble(g, "heterogeneous", 60,
                                 rng_seed=int(rng.integers(1 << 30)))
            i1, i2 = random_seed_sets(rng, g.n)
            s1, s2 = random_seed_sets(rng, g.n)
            a = assign(i1, i2, s1, s2)
            bd = estimate_phi(ens, a)
            assert bd.phi == pytest.approx(bd.omega + bd.psi, rel=1e-9)
            assert bd.omega == pytest.approx(bd.a + bd.b + bd.c, rel=1e-9)
            assert bd.omega == pytest.approx(estimate_omega(ens, a), rel=1e-12)
            assert bd.psi == pytest.approx(estimate_psi(ens, a), rel=1e-12)
            assert 0.0 <= bd.phi <= g.n


class TestExactPhi:
    def test_g2_heterogeneous(self, g2):
        # one independent coin per campaign: imbalanced iff exactly one lands
        a = assign({0}, {0})
        assert exact_phi(g2, "heterogeneous", a) == pytest.approx(1.5, abs=1e-12)

    def test_g2_correlated(self, g2):
        a = assign({0}, {0})
        assert exact_phi(g2, "correlated", a) == pytest.approx(2.0, abs=1e-12)

    def test_g1_deterministic(self, g1):
        assert exact_phi(g1, "correlated", assign({0}, {2})) == pytest.approx(1.0)
        assert exact_phi(g1, "heterogeneous", assign({0}, {2}, s2={0})) == \
            pytest.approx(3.0, abs=1e-12)

    def test_g3(self, g3):
        assert exact_phi(g3, "correlated", assign({0}, {1})) == pytest.approx(1.0)

    def test_uncertain_edge_cap_correlated(self):
        edges = [(i, i + 1, 0.5, 0.5) for i in range(21)]
        g = make_graph(edges)
        with pytest.raises(ValueError, match="uncertain"):
            exact_phi(g, "correlated", assign({0}, {0}))

    def test_uncertain_edge_cap_heterogeneous(self):
        edges = [(i, i + 1, 0.5, 0.5) for i in range(11)]
        g = make_graph(edges)
        with pytest.raises(ValueError, match="uncertain"):
            exact_phi(g, "heterogeneous", assign({0}, {0}))

    def test_certain_edges_do_not_count_against_cap(self):
        edges = [(i, i + 1, 1.0, 1.0) for i in range(30)]
        g = make_graph(edges)
        a = assign({0}, {0})
        assert exact_phi(g, "correlated", a) == pytest.approx(31.0)

    def test_models_differ_on_g2(self, g2):
        a = assign({0}, {0})
        het = exact_phi(g2, "heterogeneous", a)
        corr = exact_phi(g2, "correlated", a)
        assert het == pytest.approx(1.5) and corr == pytest.approx(2.0)

    def test_matches_joint_enumeration_heterogeneous(self):
        # cross-check the per-campaign factorization against a tiny joint sum
        rng = np.random.default_rng(7)
        for _ in range(10):
            g = random_digraph(rng, n_max=4, m_max=4, equal_probs=False)
            i1, i2 = random_seed_sets(rng, g.n)
            a = assign(i1, i2)
            want = _joint_phi(g, a)
            got = exact_phi(g, "heterogeneous", a)
            assert got == pytest.approx(want, abs=1e-12)

    def test_exact_omega_matches_mc_on_deterministic(self, g1):
        ens = build_ensemble(g1, "correlated", 3, rng_seed=0)
        ev = ExactEvaluator(g1, "correlated")
        a = assign({0}, {2}, s2={0})
        assert ev.omega(a) == pytest.approx(estimate_omega(ens, a), abs=1e-12)


def _joint_phi(g, a):
    """Brute-force reference: enumerate both campaigns' realizations jointly."""
    import itertools

    edges = list(g.edges())
    n = g.n
    total = 0.0
    for live1 in itertools.product((0, 1), repeat=len(edges)):
        p1 = 1.0
        for bit, (_, _, pa, _) in zip(live1, edges):
            p1 *= pa if bit else 1 - pa
        if p1 == 0.0:
            continue
        r1 = _reach_py(edges, live1, a.i1 | a.s1, n)
        for live2 in itertools.product((0, 1), repeat=len(edges)):
            p2 = 1.0
            for bit, (_, _, _, pb) in zip(live2, edges):
                p2 *= pb if bit else 1 - pb
            if p2 == 0.0:
                continue
            r2 = _reach_py(edges, live2, a.i2 | a.s2, n)
            balanced = sum((x in r1) == (x in r2) for x in range(n))
            total += p1 * p2 * balanced
    return total


def _reach_py(edges, live, seeds, n):
    adj = {}
    for bit, (s, d, _, _) in zip(live, edges):
        if bit:
            adj.setdefault(s, []).append(d)
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


class TestMonteCarloConsistency:
    def test_three_sigma_band(self, g2):
        a = assign({0}, {0})
        want = exact_phi(g2, "heterogeneous", a)
        ens = build_ensemble(g2, "heterogeneous", 1000, rng_seed=17)
        bd = estimate_phi(ens, a)
        assert abs(bd.phi - want) <= 3 * bd.std_err
