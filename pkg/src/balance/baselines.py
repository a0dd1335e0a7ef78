"""Comparison methods: alternating selfish greedy (bblo), single-campaign
influence greedy combined by union/intersection, degree ranking, and random
assignment."""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .objective import EnsembleState, ReachState, SeedAssignment, estimate_phi
from .selection import (
    OPTION_CROSS_INTO_1,
    OPTION_CROSS_INTO_2,
    SelectionResult,
    TraceStep,
    _argbest,
    _pool,
)
from .worlds import WorldEnsemble


def default_pool_length(k: int) -> int:
    """Discovery-list length for union/intersection; much larger than k."""
    return max(2 * k, 50)


def run_bblo(ens: WorldEnsemble, g: Graph, i1, i2, k: int) -> SelectionResult:
    """Alternating rounds of selfish greedy on the shared objective: each
    campaign in turn adds its best vertex, unconditionally, until campaign 1
    holds ceil(k/2) seeds and campaign 2 floor(k/2).

    The objective is not monotone, so a round can lower the score; the step
    is still taken and the drop shows in the trace.
    """
    state = EnsembleState(ens, i1, i2)
    quota1 = (k + 1) // 2
    quota2 = k // 2
    trace = []
    iteration = 0
    while len(state.s1) < quota1 or len(state.s2) < quota2:
        iteration += 1
        if len(state.s1) < quota1:
            pool = _pool(range(state.n), state.s1)
            got = _argbest(state.phi_sums_single(1, pool), pool)
            if got is None:
                break
            _, v = got
            state.accept(v, None)
            trace.append(TraceStep(iteration, OPTION_CROSS_INTO_1, (v,), (),
                                   state.phi_sum / state.nw))
        if len(state.s2) < quota2:
            pool = _pool(range(state.n), state.s2)
            got = _argbest(state.phi_sums_single(2, pool), pool)
            if got is None:
                break
            _, v = got
            state.accept(None, v)
            trace.append(TraceStep(iteration, OPTION_CROSS_INTO_2, (), (v,),
                                   state.phi_sum / state.nw))
    assign = state.assignment(k)
    return SelectionResult(s1=assign.s1, s2=assign.s2, trace=tuple(trace),
                           final=estimate_phi(ens, assign))


def infmax_greedy(ens: WorldEnsemble, g: Graph, campaign: int, initial, l: int) -> list[int]:
    """Classic influence-maximization greedy for one campaign: l vertices in
    discovery order, each maximizing the expected-reach gain on top of the
    initial set.  Zero-gain picks are allowed so the list always has l
    entries (graph size permitting); ties go to the lowest id."""
    if l < 1:
        raise ValueError("l must be >= 1")
    state = ReachState(ens, campaign, initial)
    picked: list[int] = []
    for _ in range(min(l, g.n)):
        pool = _pool(range(g.n), picked)
        got = _argbest(state.reach_gains(pool), pool)
        if got is None:
            break
        _, v = got
        state.accept(v)
        picked.append(v)
    return picked


def interleave_distinct(list1, list2) -> list[int]:
    """a1, b1, a2, b2, ... with duplicates dropped (campaign 1 first)."""
    out = []
    seen = set()
    for pair in zip(list1, list2):
        for v in pair:
            if v not in seen:
                seen.add(v)
                out.append(v)
    longer = list1[len(list2):] if len(list1) > len(list2) else list2[len(list1):]
    for v in longer:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def intersection_in_discovery_order(list1, list2) -> list[int]:
    """Vertices in both lists, ordered by campaign 1's discovery time."""
    in2 = set(list2)
    return [v for v in list1 if v in in2]


def _common_seed_result(ens, i1, i2, k, chosen) -> SelectionResult:
    s = frozenset(chosen)
    assign = SeedAssignment(frozenset(int(v) for v in i1),
                            frozenset(int(v) for v in i2), s, s, k)
    return SelectionResult(s1=s, s2=s, trace=(), final=estimate_phi(ens, assign))


def run_union(ens: WorldEnsemble, g: Graph, i1, i2, k: int,
              l: int | None = None) -> SelectionResult:
    """Shared seeds: the first floor(k/2) distinct vertices of the two
    interleaved influence-greedy discovery lists."""
    l = default_pool_length(k) if l is None else l
    if l < k:
        raise ValueError("l must be >= k")
    half = k // 2
    if half == 0:
        return _common_seed_result(ens, i1, i2, k, ())
    list1 = infmax_greedy(ens, g, 1, i1, l)
    list2 = infmax_greedy(ens, g, 2, i2, l)
    merged = interleave_distinct(list1, list2)
    return _common_seed_result(ens, i1, i2, k, merged[:half])


def run_intersection(ens: WorldEnsemble, g: Graph, i1, i2, k: int,
                     l: int | None = None) -> SelectionResult:
    """Shared seeds: the first floor(k/2) vertices found by both campaigns'
    influence greedies; deficits are padded from the union order."""
    l = default_pool_length(k) if l is None else l
    if l < k:
        raise ValueError("l must be >= k")
    half = k // 2
    if half == 0:
        return _common_seed_result(ens, i1, i2, k, ())
    list1 = infmax_greedy(ens, g, 1, i1, l)
    list2 = infmax_greedy(ens, g, 2, i2, l)
    chosen = intersection_in_discovery_order(list1, list2)[:half]
    if len(chosen) < half:
        have = set(chosen)
        for v in interleave_distinct(list1, list2):
            if v not in have:
                chosen.append(v)
                have.add(v)
            if len(chosen) == half:
                break
    return _common_seed_result(ens, i1, i2, k, chosen)


def run_high_degree(g: Graph, k: int,
                    ens: WorldEnsemble | None = None,
                    i1=(), i2=()) -> SelectionResult:
    """Vertices with the most followers (out-degree), assigned alternately
    to the two campaigns starting with campaign 1."""
    deg = g.out_degree()
    order = np.lexsort((np.arange(g.n), -deg))
    picked = order[: min(k, g.n)]
    s1 = frozenset(int(v) for v in picked[0::2])
    s2 = frozenset(int(v) for v in picked[1::2])
    final = None
    if ens is not None:
        assign = SeedAssignment(frozenset(int(v) for v in i1),
                                frozenset(int(v) for v in i2), s1, s2, k)
        final = estimate_phi(ens, assign)
    return SelectionResult(s1=s1, s2=s2, trace=(), final=final)


def run_random(g: Graph, k: int, rng_seed: int,
               ens: WorldEnsemble | None = None,
               i1=(), i2=()) -> SelectionResult:
    """floor(k/2) distinct uniform seeds per campaign, drawn independently
    for each side from one seeded stream."""
    if k > 2 * g.n:
        raise ValueError("budget exceeds twice the vertex count")
    half = k // 2
    rng = np.random.default_rng(rng_seed)
    s1 = frozenset(int(v) for v in rng.choice(g.n, size=min(half, g.n), replace=False)) \
        if half else frozenset()
    s2 = frozenset(int(v) for v in rng.choice(g.n, size=min(half, g.n), replace=False)) \
        if half else frozenset()
    final = None
    if ens is not None:
        assign = SeedAssignment(frozenset(int(v) for v in i1),
                                frozenset(int(v) for v in i2), s1, s2, k)
        final = estimate_phi(ens, assign)
    return SelectionResult(s1=s1, s2=s2, trace=(), final=final)
