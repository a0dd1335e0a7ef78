"""Greedy seed-selection algorithms for balancing exposure.

Four strategies over a shared world ensemble:

* ``run_cover``   - greedy on the monotone submodular part of the objective
                    (ignores newly created imbalance), with a fallback to the
                    empty solution under the full objective.
* ``run_common``  - adds either a seed shared by both campaigns or a seed
                    drawn from the opposing campaign's initial supporters,
                    so no new imbalance is ever introduced (correlated model).
* ``run_hedge``   - like common, but candidate seeds are unrestricted and a
                    two-seed combination of the best singles is also allowed.
* ``run_greedy_phi`` - plain greedy on the full objective.

Every argmax breaks ties toward the lowest vertex id, then campaign 1; among
equal-valued option kinds the order is common > cross-into-2 > cross-into-1 >
pair.  With a fixed ensemble the outcome is fully deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .objective import (
    CoverState,
    EnsembleState,
    ObjectiveBreakdown,
    SeedAssignment,
    estimate_phi,
)
from .worlds import HETEROGENEOUS, WorldEnsemble

OPTION_COMMON = "common"
OPTION_CROSS_INTO_2 = "s1"    # seed added to campaign 2's set
OPTION_CROSS_INTO_1 = "s2"    # seed added to campaign 1's set
OPTION_PAIR = "pair"
_PRIORITY = {OPTION_COMMON: 0, OPTION_CROSS_INTO_2: 1, OPTION_CROSS_INTO_1: 2,
             OPTION_PAIR: 3}


@dataclass(frozen=True)
class TraceStep:
    """One accepted greedy step: what was added and the score after it.

    `best_common` records the score the best shared-seed option would have
    achieved at this iteration (None when that option was not evaluated).
    """

    iteration: int
    option: str
    added1: tuple
    added2: tuple
    value: float
    best_common: float | None = None


@dataclass(frozen=True)
class CandidatePool:
    """Eligible vertices per option role."""

    common: tuple
    into_set2: tuple
    into_set1: tuple


@dataclass(frozen=True)
class SelectionResult:
    s1: frozenset
    s2: frozenset
    trace: tuple
    final: ObjectiveBreakdown | None = None
    notes: tuple = ()

    def seeds_used(self) -> int:
        return len(self.s1) + len(self.s2)


def _pool(universe, exclude) -> np.ndarray:
    items = sorted(set(universe) - set(exclude))
    return np.fromiter(items, dtype=np.int32) if items else np.empty(0, np.int32)


def _argbest(values: np.ndarray, cands: np.ndarray):
    """Best (value, vertex) with ties to the lowest vertex id; None if empty."""
    if len(cands) == 0:
        return None
    i = int(np.argmax(values))
    return values[i], int(cands[i])


def _mean(value, nw: int) -> float:
    return float(value) / nw


def cover_core(state, k: int):
    """Lazy greedy on the submodular part: repeatedly add the (vertex,
    campaign) element with the largest marginal gain until the budget fills.

    Stale heap bounds stay valid because gains only shrink as the solution
    grows, so an element re-evaluated at the top of the heap is a true argmax.
    """
    trace = []
    n = state.n
    if k <= 0 or n == 0:
        return trace
    all_v = np.arange(n, dtype=np.int32)
    heap = []
    for side in (1, 2):
        gains = state.omega_gains_single(side, all_v)
        for v in range(n):
            heapq.heappush(heap, (-float(gains[v]), v, side, 0))
    iteration = 0
    while iteration < k and heap:
        neg_gain, v, side, stamp = heapq.heappop(heap)
        if stamp != iteration + 1:
            fresh = float(state.omega_gains_single(side, np.array([v], np.int32))[0])
            heapq.heappush(heap, (-fresh, v, side, iteration + 1))
            continue
        iteration += 1
        state.accept_side(v, side)
        option = OPTION_CROSS_INTO_1 if side == 1 else OPTION_CROSS_INTO_2
        trace.append(TraceStep(
            iteration, option,
            (v,) if side == 1 else (), (v,) if side == 2 else (),
            state.omega_mean(),
        ))
    return trace


def run_cover(ens: WorldEnsemble, g: Graph, i1, i2, k: int) -> SelectionResult:
    """Greedy on the initially-reached-region score, then keep the better of
    the greedy solution and the empty one under the full objective."""
    if ens.graph is not g:
        raise ValueError("ensemble was built for a different graph")
    state = CoverState(ens, i1, i2)
    trace = cover_core(state, k)
    chosen = (frozenset(state.s1), frozenset(state.s2))
    full = estimate_phi(ens, SeedAssignment(state.i1, state.i2, *chosen, k=k))
    empty = estimate_phi(ens, SeedAssignment(state.i1, state.i2, k=k))
    notes = ()
    if empty.phi > full.phi:
        chosen, full = (frozenset(), frozenset()), empty
        notes = ("empty solution preferred under the full objective",)
    return SelectionResult(s1=chosen[0], s2=chosen[1], trace=tuple(trace),
                           final=full, notes=notes)


def _evaluate_options(state, pools: CandidatePool, remaining: int,
                      with_pair: bool):
    """Score each feasible option kind; returns a list of
    (value, priority, v1, v2, option, cost) plus the best common value."""
    options = []
    best_common = None
    if remaining >= 2 and len(pools.common):
        got = _argbest(state.phi_sums_common(np.asarray(pools.common, np.int32)),
                       pools.common)
        if got:
            value, v = got
            best_common = value
            options.append((value, _PRIORITY[OPTION_COMMON], v, v, OPTION_COMMON, 2))
    got1 = None
    if len(pools.into_set2):
        got1 = _argbest(state.phi_sums_single(2, np.asarray(pools.into_set2, np.int32)),
                        pools.into_set2)
        if got1:
            value, v = got1
            options.append((value, _PRIORITY[OPTION_CROSS_INTO_2], None, v,
                            OPTION_CROSS_INTO_2, 1))
    got2 = None
    if len(pools.into_set1):
        got2 = _argbest(state.phi_sums_single(1, np.asarray(pools.into_set1, np.int32)),
                        pools.into_set1)
        if got2:
            value, v = got2
            options.append((value, _PRIORITY[OPTION_CROSS_INTO_1], v, None,
                            OPTION_CROSS_INTO_1, 1))
    if with_pair and remaining >= 2 and got1 and got2:
        v_into_2 = got1[1]
        v_into_1 = got2[1]
        value = state.phi_sum_pair(v_into_1, v_into_2)
        options.append((value, _PRIORITY[OPTION_PAIR], v_into_1, v_into_2,
                        OPTION_PAIR, 2))
    return options, best_common


def _common_hedge_loop(state, k: int, pool_fn, with_pair: bool):
    """Shared accept loop: take the highest-scoring feasible option while it
    strictly improves the current score."""
    trace = []
    used = 0
    iteration = 0
    nw = state.nw
    while k - used >= 1:
        iteration += 1
        options, best_common = _evaluate_options(state, pool_fn(state),
                                                 k - used, with_pair)
        if not options:
            break
        value, _, v1, v2, option, cost = min(
            options, key=lambda o: (-o[0], o[1]))
        if not value > state.phi_sum:
            break
        state.accept(v1, v2)
        used += cost
        trace.append(TraceStep(
            iteration, option,
            () if v1 is None else (v1,), () if v2 is None else (v2,),
            _mean(state.phi_sum, nw),
            None if best_common is None else _mean(best_common, nw),
        ))
    return trace


def common_pools(state) -> CandidatePool:
    universe = range(state.n)
    return CandidatePool(
        common=tuple(_pool(universe, state.s1 | state.s2)),
        into_set2=tuple(_pool(state.i1, state.s2)),
        into_set1=tuple(_pool(state.i2, state.s1)),
    )


def hedge_pools(state) -> CandidatePool:
    universe = range(state.n)
    return CandidatePool(
        common=tuple(_pool(universe, state.s1 | state.s2)),
        into_set2=tuple(_pool(universe, state.s2)),
        into_set1=tuple(_pool(universe, state.s1)),
    )


def run_common(ens: WorldEnsemble, g: Graph, i1, i2, k: int) -> SelectionResult:
    """Greedy restricted to steps that cannot create new imbalance in the
    correlated model: shared seeds, or seeds taken from the opposing
    campaign's initial supporters."""
    if ens.graph is not g:
        raise ValueError("ensemble was built for a different graph")
    state = EnsembleState(ens, i1, i2)
    trace = _common_hedge_loop(state, k, common_pools, with_pair=False)
    notes = ()
    if ens.model == HETEROGENEOUS:
        notes = ("common on the heterogeneous model is a heuristic without "
                 "an approximation guarantee",)
    return _finish(ens, state, trace, k, notes)


def run_hedge(ens: WorldEnsemble, g: Graph, i1, i2, k: int) -> SelectionResult:
    """Greedy where every accepted step scores at least as well as the best
    shared-seed step; candidates are unrestricted and the two best single
    seeds may be taken together."""
    if ens.graph is not g:
        raise ValueError("ensemble was built for a different graph")
    state = EnsembleState(ens, i1, i2)
    trace = _common_hedge_loop(state, k, hedge_pools, with_pair=True)
    notes = ()
    if ens.model == HETEROGENEOUS:
        notes = ("hedge on the heterogeneous model is a heuristic without "
                 "an approximation guarantee",)
    return _finish(ens, state, trace, k, notes)


def greedy_core(state, k: int):
    """Add the single (vertex, campaign) element with the best resulting
    score; stop as soon as no element strictly improves it."""
    trace = []
    nw = state.nw
    for iteration in range(1, k + 1):
        pool1 = _pool(range(state.n), state.s1)
        pool2 = _pool(range(state.n), state.s2)
        got1 = _argbest(state.phi_sums_single(1, pool1), pool1)
        got2 = _argbest(state.phi_sums_single(2, pool2), pool2)
        best = None
        for side, got in ((1, got1), (2, got2)):
            if got is None:
                continue
            value, v = got
            key = (-value, v, side)
            if best is None or key < best[0]:
                best = (key, value, v, side)
        if best is None or not best[1] > state.phi_sum:
            break
        _, value, v, side = best
        state.accept(v if side == 1 else None, v if side == 2 else None)
        option = OPTION_CROSS_INTO_1 if side == 1 else OPTION_CROSS_INTO_2
        trace.append(TraceStep(
            iteration, option,
            (v,) if side == 1 else (), (v,) if side == 2 else (),
            _mean(state.phi_sum, nw),
        ))
    return trace


def run_greedy_phi(ens: WorldEnsemble, g: Graph, i1, i2, k: int) -> SelectionResult:
    """Plain greedy on the full objective."""
    if ens.graph is not g:
        raise ValueError("ensemble was built for a different graph")
    state = EnsembleState(ens, i1, i2)
    trace = greedy_core(state, k)
    return _finish(ens, state, trace, k)


def _finish(ens, state, trace, k, notes=()) -> SelectionResult:
    assign = SeedAssignment(state.i1, state.i2,
                            frozenset(state.s1), frozenset(state.s2), k)
    return SelectionResult(
        s1=assign.s1, s2=assign.s2, trace=tuple(trace),
        final=estimate_phi(ens, assign), notes=tuple(notes),
    )
