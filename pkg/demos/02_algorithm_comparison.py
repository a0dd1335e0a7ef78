#!/usr/bin/env python3
"""Compare every selection algorithm on a polarized two-community graph.

Campaign 1's initial supporters sit in one community, campaign 2's in the
other, and cross-community edges are sparse: the textbook echo-chamber
setup.  Lower "one-sided" numbers are better.
"""

import time

import balance as B

N = 600
K = 10

g, i1, i2 = B.two_community(N, rng_seed=1, intra_degree=5, cross_rate=0.1,
                            p_intra=0.2, p_cross=0.05, n_initial=15)
ens = B.build_ensemble(g, "correlated", n_worlds=200, rng_seed=7)

baseline = B.estimate_phi(ens, B.SeedAssignment(i1, i2, k=0))
print(f"graph: {g.n} vertices, {g.m} edges; budget {K}")
print(f"no intervention: {g.n - baseline.phi:.1f} one-sided vertices\n")

runners = {
    "cover": lambda: B.run_cover(ens, g, i1, i2, K),
    "common": lambda: B.run_common(ens, g, i1, i2, K),
    "hedge": lambda: B.run_hedge(ens, g, i1, i2, K),
    "greedy": lambda: B.run_greedy_phi(ens, g, i1, i2, K),
    "bblo": lambda: B.run_bblo(ens, g, i1, i2, K),
    "union": lambda: B.run_union(ens, g, i1, i2, K),
    "intersection": lambda: B.run_intersection(ens, g, i1, i2, K),
    "highdegree": lambda: B.run_high_degree(g, K, ens, i1, i2),
    "random": lambda: B.run_random(g, K, 5, ens, i1, i2),
}

print(f"{'algorithm':<14} {'one-sided':>10} {'seeds':>6} {'time':>8}")
for name, run in runners.items():
    started = time.perf_counter()
    res = run()
    elapsed = time.perf_counter() - started
    print(f"{name:<14} {g.n - res.final.phi:>10.1f} "
          f"{res.seeds_used():>6} {elapsed:>7.2f}s")

print("\nhedge trace (what it added, score after each step):")
res = B.run_hedge(ens, g, i1, i2, K)
for step in res.trace:
    print(f"  step {step.iteration}: {step.option:<6} "
          f"+s1={list(step.added1)} +s2={list(step.added2)} "
          f"score={step.value:.1f}")
