"""Exhaustive ground truth on tiny instances.

Everything here evaluates with exact realization enumeration on both sides
of every comparison, so the approximation-guarantee checks carry no Monte
Carlo slack.  The set-cover reduction doubles as a hard-instance generator:
a reduced instance admits zero expected imbalance exactly when the original
instance is coverable within its budget.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graph import Graph, make_graph
from .objective import ExactEvaluator, ExactState, SeedAssignment
from .selection import cover_core, _common_hedge_loop, common_pools, hedge_pools
from .worlds import CORRELATED

APPROX_RATIO = (1.0 - 1.0 / math.e) / 2.0
MAX_BRUTE_FORCE_ASSIGNMENTS = 1_000_000
_TIE_TOL = 1e-12
_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class SetCoverInstance:
    """A universe of `universe_size` elements, candidate subsets, and the
    number of subsets that may be picked."""

    universe_size: int
    sets: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if self.universe_size < 1 or self.k < 1:
            raise ValueError("universe size and k must be >= 1")
        for s in self.sets:
            if not s:
                raise ValueError("empty subsets are not allowed")
            if any(not (0 <= e < self.universe_size) for e in s):
                raise ValueError("subset element outside the universe")
        if not self.sets:
            raise ValueError("at least one subset is required")


def load_set_cover(path) -> SetCoverInstance:
    """Parse an instance file: first line ``|U| k``, then one line of
    whitespace-separated element ids per set."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty set-cover instance file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be '|U| k'")
    universe_size, k = int(head[0]), int(head[1])
    sets = [frozenset(int(tok) for tok in ln.split()) for ln in lines[1:]]
    return SetCoverInstance(universe_size, tuple(sets), k)


def set_cover_exists(inst: SetCoverInstance) -> bool:
    """Direct enumeration: is some family of at most k subsets a cover?"""
    universe = frozenset(range(inst.universe_size))
    for r in range(1, min(inst.k, len(inst.sets)) + 1):
        for combo in itertools.combinations(inst.sets, r):
            if frozenset().union(*combo) >= universe:
                return True
    return False


def reduction_from_set_cover(inst: SetCoverInstance):
    """Build the hard instance: universe vertices, k copies of one vertex per
    subset, and k collector vertices; every edge is certain (probability 1).
    Campaign 2 initially reaches the universe and the collectors; balancing
    everything within budget 2k forces the chosen copies to encode a cover.

    The construction presumes every element lies in at least one subset;
    otherwise an element can be seeded directly and zero imbalance no longer
    certifies a cover.

    Returns (graph, i1, i2, budget).
    """
    u, sets, k = inst.universe_size, inst.sets, inst.k
    uncovered = set(range(u)) - set().union(*sets)
    if uncovered:
        raise ValueError(
            f"elements {sorted(uncovered)} belong to no subset; the reduction "
            "requires every element to be coverable"
        )
    ell = len(sets)
    names = [f"e{x}" for x in range(u)]
    names += [f"c{j}_s{i}" for j in range(k) for i in range(ell)]
    names += [f"b{j}" for j in range(k)]

    def set_vertex(j, i):
        return u + j * ell + i

    def collector(j):
        return u + k * ell + j

    edges = []
    for j in range(k):
        for i, subset in enumerate(sets):
            sv = set_vertex(j, i)
            for e in sorted(subset):
                edges.append((sv, e, 1.0, 1.0))
            edges.append((sv, collector(j), 1.0, 1.0))
    g = make_graph(edges, names=names)
    i1 = frozenset()
    i2 = frozenset(range(u)) | frozenset(collector(j) for j in range(k))
    return g, i1, i2, 2 * k


@dataclass(frozen=True)
class OracleReport:
    """Exact optimum over every budget-feasible assignment."""

    opt_value: float
    opt_assignments: tuple
    instances_checked: int


def _assignments(n: int, k: int):
    vertices = range(n)
    for size1 in range(min(k, n) + 1):
        for s1 in itertools.combinations(vertices, size1):
            for size2 in range(min(k - size1, n) + 1):
                for s2 in itertools.combinations(vertices, size2):
                    yield frozenset(s1), frozenset(s2)


def _count_assignments(n: int, k: int) -> int:
    per_size = [math.comb(n, a) for a in range(min(k, n) + 1)]
    total = 0
    for a, ca in enumerate(per_size):
        total += ca * sum(per_size[: min(k - a, n) + 1])
    return total


def brute_force_opt(g: Graph, model: str, i1, i2, k: int,
                    evaluator: ExactEvaluator | None = None) -> OracleReport:
    """Exact optimum by enumerating every (s1, s2) with |s1|+|s2| <= k."""
    if _count_assignments(g.n, k) > MAX_BRUTE_FORCE_ASSIGNMENTS:
        raise ValueError("instance too large for brute-force enumeration")
    ev = evaluator if evaluator is not None else ExactEvaluator(g, model)
    i1 = frozenset(int(v) for v in i1)
    i2 = frozenset(int(v) for v in i2)
    best = -1.0
    best_assignments = []
    checked = 0
    for s1, s2 in _assignments(g.n, k):
        checked += 1
        value = ev.phi(SeedAssignment(i1, i2, s1, s2, k))
        if value > best + _TIE_TOL:
            best = value
            best_assignments = [(s1, s2)]
        elif value >= best - _TIE_TOL:
            best_assignments.append((s1, s2))
    return OracleReport(opt_value=best,
                        opt_assignments=tuple(best_assignments),
                        instances_checked=checked)


def check_cover_ratio(g: Graph, model: str, i1, i2, k: int) -> bool:
    """Does the cover greedy (with its empty fallback) achieve at least
    (1 - 1/e)/2 of the exact optimum?  Both sides evaluated exactly."""
    ev = ExactEvaluator(g, model)
    opt = brute_force_opt(g, model, i1, i2, k, evaluator=ev).opt_value
    state = ExactState(g, model, i1, i2, evaluator=ev)
    cover_core(state, k)
    achieved = max(
        ev.phi(state.assignment(k)),
        ev.phi(SeedAssignment(state.i1, state.i2, k=k)),
    )
    return achieved >= APPROX_RATIO * opt - _CHECK_TOL


def check_hedge_common_ratio(g: Graph, i1, i2, k: int) -> bool:
    """Correlated model, even budget: do both the shared-seed greedy and the
    hedged greedy achieve at least (1 - 1/e)/2 of the exact optimum?"""
    if k % 2 != 0:
        raise ValueError("the guarantee applies to even budgets only")
    ev = ExactEvaluator(g, CORRELATED)
    opt = brute_force_opt(g, CORRELATED, i1, i2, k, evaluator=ev).opt_value
    bound = APPROX_RATIO * opt - _CHECK_TOL
    state = ExactState(g, CORRELATED, i1, i2, evaluator=ev)
    _common_hedge_loop(state, k, common_pools, with_pair=False)
    if not ev.phi(state.assignment(k)) >= bound:
        return False
    state = ExactState(g, CORRELATED, i1, i2, evaluator=ev)
    _common_hedge_loop(state, k, hedge_pools, with_pair=True)
    return ev.phi(state.assignment(k)) >= bound


def check_halving_lemma(g: Graph, i1, i2, s1, s2,
                        evaluator: ExactEvaluator | None = None) -> bool:
    """Correlated model: some shared set of half the assignment's size,
    drawn from s1 ∪ s2, scores at least half the assignment's exact value."""
    s1 = frozenset(int(v) for v in s1)
    s2 = frozenset(int(v) for v in s2)
    total = len(s1) + len(s2)
    if total % 2 != 0:
        raise ValueError("the halving property applies to even totals only")
    ev = evaluator if evaluator is not None else ExactEvaluator(g, CORRELATED)
    i1 = frozenset(int(v) for v in i1)
    i2 = frozenset(int(v) for v in i2)
    k = max(total, 1)
    target = ev.phi(SeedAssignment(i1, i2, s1, s2, total)) / 2.0
    half = total // 2
    for combo in itertools.combinations(sorted(s1 | s2), half):
        shared = frozenset(combo)
        if ev.phi(SeedAssignment(i1, i2, shared, shared, total)) >= target - _CHECK_TOL:
            return True
    return False


def zero_imbalance_matches_coverability(inst: SetCoverInstance) -> bool:
    """Cross-check the reduction: exact optimum touches the vertex count on
    the reduced instance exactly when a k-cover exists."""
    g, i1, i2, budget = reduction_from_set_cover(inst)
    report = brute_force_opt(g, CORRELATED, i1, i2, budget)
    achieves_zero = report.opt_value >= g.n - _CHECK_TOL
    return achieves_zero == set_cover_exists(inst)
