"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The randomized sweeps
use fixed seeds, so the suite is deterministic.
"""

import itertools
import resource
import time

import numpy as np
import pytest

import balance as B
from balance.objective import ExactEvaluator, SeedAssignment

from conftest import random_digraph, random_seed_sets

RATIO = (1.0 - 1.0 / np.e) / 2.0


def _verdict(num, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:2d} [{label}]: {status} {detail}".rstrip())
    assert ok, f"criterion {num} ({label}) failed: {detail}"


def _assign(i1, i2, s1=(), s2=()):
    s1, s2 = frozenset(s1), frozenset(s2)
    return SeedAssignment(frozenset(i1), frozenset(i2), s1, s2,
                          k=len(s1) + len(s2))


def test_criterion_1_exact_fixtures(g1, g2, g3):
    tol = 1e-12
    checks = [
        (B.exact_phi(g1, "correlated", _assign({0}, {2})), 1.0),
        (B.exact_phi(g1, "correlated", _assign({0}, {2}, s2={0})), 3.0),
        (B.exact_phi(g1, "heterogeneous", _assign({0}, {2}, s2={0})), 3.0),
        (B.exact_phi(g2, "heterogeneous", _assign({0}, {0})), 1.5),
        (B.exact_phi(g2, "correlated", _assign({0}, {0})), 2.0),
        (B.exact_phi(g3, "correlated", _assign({0}, {1})), 1.0),
        # seeding the isolated vertex makes every vertex one-sided
        (B.exact_phi(g3, "correlated", _assign({0}, {1}, s1={2})), 0.0),
    ]
    bad = [(got, want) for got, want in checks if abs(got - want) > tol]
    _verdict(1, "exact fixtures", not bad, f"mismatches={bad}")


def test_criterion_2_submodular_part_monotone_submodular():
    started = time.perf_counter()
    rng = np.random.default_rng(20_001)
    tol = 1e-9
    violations = 0
    submodular_checks = 0
    for gi in range(100):
        g = random_digraph(rng, n_max=8, m_max=10, equal_probs=False)
        ens = B.build_ensemble(g, "heterogeneous", 30, rng_seed=gi)
        i1, i2 = random_seed_sets(rng, g.n)
        base_s1, base_s2 = random_seed_sets(rng, g.n)

        def omega(s1, s2):
            return B.estimate_omega(ens, _assign(i1, i2, s1, s2))

        base = omega(base_s1, base_s2)
        for v in range(g.n):   # every single-element extension of the base
            if omega(base_s1 | {v}, base_s2) < base - tol:
                violations += 1
            if omega(base_s1, base_s2 | {v}) < base - tol:
                violations += 1
        for _ in range(10):
            t1, t2 = random_seed_sets(rng, g.n)
            s1 = frozenset(v for v in t1 if rng.random() < 0.5)
            s2 = frozenset(v for v in t2 if rng.random() < 0.5)
            side = int(rng.integers(1, 3))
            pool = [v for v in range(g.n) if v not in (t1 if side == 1 else t2)]
            if not pool:
                continue
            x = int(rng.choice(pool))
            if side == 1:
                gain_small = omega(s1 | {x}, s2) - omega(s1, s2)
                gain_big = omega(t1 | {x}, t2) - omega(t1, t2)
            else:
                gain_small = omega(s1, s2 | {x}) - omega(s1, s2)
                gain_big = omega(t1, t2 | {x}) - omega(t1, t2)
            submodular_checks += 1
            if gain_small < gain_big - tol:
                violations += 1
    elapsed = time.perf_counter() - started
    ok = violations == 0 and submodular_checks >= 900 and elapsed < 60
    _verdict(2, "monotone/submodular suite", ok,
             f"violations={violations} submodular_checks={submodular_checks} "
             f"time={elapsed:.1f}s")


def test_criterion_3_cover_ratio_sweep():
    started = time.perf_counter()
    rng = np.random.default_rng(30_001)
    failures = 0
    for i in range(50):
        equal = bool(i % 2)
        g = random_digraph(rng, n_max=6, m_max=8, equal_probs=equal)
        i1, i2 = random_seed_sets(rng, g.n)
        k = int(rng.integers(1, 5))
        model = "correlated" if equal else "heterogeneous"
        if not B.check_cover_ratio(g, model, i1, i2, k):
            failures += 1
    elapsed = time.perf_counter() - started
    ok = failures == 0 and elapsed < 300
    _verdict(3, "cover approximation sweep", ok,
             f"failures={failures} time={elapsed:.1f}s")


def test_criterion_4_hedge_common_ratio_sweep():
    started = time.perf_counter()
    rng = np.random.default_rng(40_001)
    failures = 0
    for _ in range(50):
        g = random_digraph(rng, n_max=6, m_max=8, equal_probs=True)
        i1, i2 = random_seed_sets(rng, g.n)
        k = int(rng.choice((2, 4)))
        if not B.check_hedge_common_ratio(g, i1, i2, k):
            failures += 1
    elapsed = time.perf_counter() - started
    ok = failures == 0 and elapsed < 300
    _verdict(4, "hedge/common approximation sweep", ok,
             f"failures={failures} time={elapsed:.1f}s")


def test_criterion_5_halving_sweep():
    started = time.perf_counter()
    rng = np.random.default_rng(50_001)
    failures = 0
    checked = 0
    for _ in range(30):
        g = random_digraph(rng, n_max=5, m_max=6, equal_probs=True)
        i1, i2 = random_seed_sets(rng, g.n)
        ev = ExactEvaluator(g, "correlated")
        for total in (2, 4):
            for size1 in range(total + 1):
                size2 = total - size1
                for s1 in itertools.combinations(range(g.n), size1):
                    for s2 in itertools.combinations(range(g.n), size2):
                        checked += 1
                        if not B.check_halving_lemma(g, i1, i2, set(s1),
                                                     set(s2), evaluator=ev):
                            failures += 1
    elapsed = time.perf_counter() - started
    ok = failures == 0 and elapsed < 300
    _verdict(5, "halving property sweep", ok,
             f"failures={failures} assignments={checked} time={elapsed:.1f}s")


def _all_set_cover_instances(max_universe=3, max_sets=3, max_k=2):
    """Every instance whose subsets jointly cover the universe (the
    reduction's precondition)."""
    for u in range(1, max_universe + 1):
        elements = list(range(u))
        subsets = []
        for size in range(1, u + 1):
            subsets.extend(frozenset(c) for c in
                           itertools.combinations(elements, size))
        for count in range(1, max_sets + 1):
            for family in itertools.combinations(subsets, count):
                if set().union(*family) != set(elements):
                    continue
                for k in range(1, max_k + 1):
                    yield B.SetCoverInstance(u, family, k)


def test_criterion_6_reduction_equivalence():
    instances = list(_all_set_cover_instances())
    mismatches = sum(
        not B.zero_imbalance_matches_coverability(inst) for inst in instances
    )
    _verdict(6, "set-cover reduction equivalence", mismatches == 0,
             f"instances={len(instances)} mismatches={mismatches}")


def test_criterion_7_monte_carlo_consistency(g2):
    cases = [(g2, "heterogeneous"), (g2, "correlated")]
    rng = np.random.default_rng(70_001)
    for _ in range(5):
        cases.append((random_digraph(rng, n_max=5, m_max=7, equal_probs=False),
                      "heterogeneous"))
    for _ in range(5):
        cases.append((random_digraph(rng, n_max=5, m_max=7, equal_probs=True),
                      "correlated"))
    worst = 100
    details = []
    for ci, (g, model) in enumerate(cases):
        i1, i2 = ({0}, {0}) if g is g2 else random_seed_sets(rng, g.n)
        a = _assign(i1, i2)
        want = B.exact_phi(g, model, a)
        passed = 0
        for seed in range(100):
            ens = B.build_ensemble(g, model, 1000, rng_seed=70_100 + seed)
            bd = B.estimate_phi(ens, a)
            if abs(bd.phi - want) <= 3 * bd.std_err:
                passed += 1
        details.append(passed)
        worst = min(worst, passed)
    _verdict(7, "Monte Carlo consistency", worst >= 99,
             f"per-case passes (of 100)={details}")


def test_criterion_8_qualitative_ranking():
    k = 20
    satisfied = 0
    rows = []
    for seed in range(5):
        g, i1, i2 = B.two_community(2000, rng_seed=seed, intra_degree=5,
                                    cross_rate=0.1, p_intra=0.2, p_cross=0.05,
                                    n_initial=40)
        ens = B.build_ensemble(g, "correlated", 200, rng_seed=800 + seed)
        sd = {}
        sd["hedge"] = g.n - B.run_hedge(ens, g, i1, i2, k).final.phi
        sd["greedy"] = g.n - B.run_greedy_phi(ens, g, i1, i2, k).final.phi
        sd["cover"] = g.n - B.run_cover(ens, g, i1, i2, k).final.phi
        sd["random"] = g.n - B.run_random(g, k, seed, ens, i1, i2).final.phi
        sd["highdegree"] = g.n - B.run_high_degree(g, k, ens, i1, i2).final.phi
        rows.append({n: round(v, 1) for n, v in sd.items()})
        ordered = (
            sd["hedge"] <= sd["cover"] + 1e-9
            and sd["greedy"] <= sd["cover"] + 1e-9
            and sd["hedge"] < sd["random"]
            and sd["hedge"] < sd["highdegree"]
            and sd["greedy"] < sd["random"]
            and sd["greedy"] < sd["highdegree"]
        )
        satisfied += ordered
    _verdict(8, "qualitative ranking", satisfied >= 3,
             f"satisfied on {satisfied}/5 seeds; symm_diff={rows}")


def test_criterion_9_scalability_smoke():
    g, i1, i2 = B.two_community(20000, rng_seed=0, intra_degree=5,
                                cross_rate=0.1, p_intra=0.1, p_cross=0.05,
                                n_initial=40)
    assert g.m >= 100_000
    started = time.perf_counter()
    ens = B.build_ensemble(g, "correlated", 100, rng_seed=7)
    res = B.run_hedge(ens, g, i1, i2, 20)
    elapsed = time.perf_counter() - started
    peak_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / (1024 ** 2)
    ok = elapsed < 300 and peak_gb < 2.0 and res.seeds_used() <= 20
    _verdict(9, "scalability smoke", ok,
             f"edges={g.m} time={elapsed:.1f}s peak={peak_gb:.2f}GB")


def test_criterion_10_cli_determinism(tmp_path):
    from balance.cli import main

    g, i1, i2 = B.two_community(200, rng_seed=3, intra_degree=4,
                                cross_rate=0.2, p_intra=0.3, p_cross=0.1,
                                n_initial=5)
    B.write_edge_list(g, tmp_path / "graph.tsv")
    B.write_seeds(tmp_path / "seeds.json", g, i1, i2)
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        f"graph = {tmp_path / 'graph.tsv'}\n"
        f"seeds = {tmp_path / 'seeds.json'}\n"
        "model = correlated\n"
        "algorithms = cover common hedge greedy bblo union intersection "
        "highdegree random\n"
        "budgets = 5 10\n"
        "n_worlds = 100\n"
        "rng_seed = 11\n",
        encoding="utf-8",
    )
    assert main(["run", "--config", str(cfg),
                 "--output-dir", str(tmp_path / "a")]) == 0
    assert main(["run", "--config", str(cfg),
                 "--output-dir", str(tmp_path / "b")]) == 0

    def strip_wall(text):
        return "\n".join(",".join(ln.split(",")[:-1])
                         for ln in text.strip().splitlines())

    a = (tmp_path / "a" / "results.csv").read_text()
    b = (tmp_path / "b" / "results.csv").read_text()
    same = strip_wall(a) == strip_wall(b) and len(a.strip().splitlines()) == 19
    meta_a = (tmp_path / "a" / "metadata.json").read_text()
    meta_b = (tmp_path / "b" / "metadata.json").read_text()
    _verdict(10, "end-to-end determinism", same and meta_a == meta_b,
             "CSV identical up to wall time; metadata identical")
