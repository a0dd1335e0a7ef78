"""The balance objective: expected number of vertices reached by both
campaigns or by neither.

`estimate_*` evaluate over a pre-sampled world ensemble.  The score splits,
per world, into the part inside the region the initial seeds reach (monotone
and submodular in the added seeds) and the untouched remainder; the breakdown
reports both plus the three balanced groups of the first part.

`exact_phi` / `ExactEvaluator` compute the same quantities exactly on tiny
graphs by enumerating live-edge realizations, and serve as the ground truth
the Monte Carlo path is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph, validate_correlated
from .worlds import CORRELATED, MODELS, ModelError, WorldEnsemble

MAX_UNCERTAIN_CORRELATED = 20
MAX_UNCERTAIN_HETEROGENEOUS = 10
# Precompute per-realization reach closures only while the table stays small.
_CLOSURE_CELL_LIMIT = 1 << 22


@dataclass(frozen=True)
class SeedAssignment:
    """Initial seeds (i1, i2), added seeds (s1, s2) and the budget k."""

    i1: frozenset
    i2: frozenset
    s1: frozenset = frozenset()
    s2: frozenset = frozenset()
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "i1", frozenset(self.i1))
        object.__setattr__(self, "i2", frozenset(self.i2))
        object.__setattr__(self, "s1", frozenset(self.s1))
        object.__setattr__(self, "s2", frozenset(self.s2))
        if len(self.s1) + len(self.s2) > self.k:
            raise ValueError("added seeds exceed the budget")

    def with_added(self, s1, s2, k=None) -> "SeedAssignment":
        k = self.k if k is None else k
        return SeedAssignment(self.i1, self.i2, frozenset(s1), frozenset(s2), k)


@dataclass(frozen=True)
class ObjectiveBreakdown:
    """Estimated objective with its decomposition.

    phi = omega + psi holds exactly per world; omega = a + b + c where the
    groups are: reached by both initial seed sets, initial-1-only vertices
    balanced by the added seeds of campaign 2, and the mirror group.
    """

    phi: float
    omega: float
    psi: float
    a: float
    b: float
    c: float
    std_err: float


def _sets_to_arrays(assign: SeedAssignment):
    to_arr = lambda s: np.fromiter(sorted(s), dtype=np.int32) if s else np.empty(0, np.int32)
    return to_arr(assign.i1), to_arr(assign.i2), to_arr(assign.s1), to_arr(assign.s2)


def _per_world_breakdown(ens: WorldEnsemble, assign: SeedAssignment):
    g = ens.graph
    i1, i2, s1, s2 = _sets_to_arrays(assign)
    for arr in (i1, i2, s1, s2):
        if arr.size and (arr.min() < 0 or arr.max() >= g.n):
            raise ValueError("seed vertex out of range")
    nw = ens.n_worlds
    phi = np.empty(nw, dtype=np.int64)
    a = np.empty(nw, dtype=np.int64)
    b = np.empty(nw, dtype=np.int64)
    c = np.empty(nw, dtype=np.int64)
    for w_idx, w in enumerate(ens.worlds):
        ip1, d1 = w.live_csr(1)
        ip2, d2 = w.live_csr(2)
        phi[w_idx], a[w_idx], b[w_idx], c[w_idx] = _kernels.world_breakdown(
            ip1, d1, ip2, d2, g.n, i1, i2, s1, s2
        )
    return phi, a, b, c


def estimate_phi(ens: WorldEnsemble, assign: SeedAssignment) -> ObjectiveBreakdown:
    """Monte Carlo estimate of the balanced-vertex count with its breakdown
    and the standard error of the mean."""
    phi, a, b, c = _per_world_breakdown(ens, assign)
    nw = len(phi)
    omega = a + b + c
    psi = phi - omega
    std_err = 0.0
    if nw > 1:
        std_err = float(np.std(phi, ddof=1) / math.sqrt(nw))
    return ObjectiveBreakdown(
        phi=float(phi.sum() / nw),
        omega=float(omega.sum() / nw),
        psi=float(psi.sum() / nw),
        a=float(a.sum() / nw),
        b=float(b.sum() / nw),
        c=float(c.sum() / nw),
        std_err=std_err,
    )


def estimate_omega(ens: WorldEnsemble, assign: SeedAssignment) -> float:
    """Expected balanced count within the region the initial seeds reach."""
    _, a, b, c = _per_world_breakdown(ens, assign)
    return float((a + b + c).sum() / len(a))


def estimate_psi(ens: WorldEnsemble, assign: SeedAssignment) -> float:
    """Expected balanced count outside the region the initial seeds reach."""
    phi, a, b, c = _per_world_breakdown(ens, assign)
    return float((phi - a - b - c).sum() / len(phi))


# ---------------------------------------------------------------------------
# Exact evaluation by realization enumeration
# ---------------------------------------------------------------------------


def _bitset(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << int(v)
    return out


def _reach_bits(adj, seeds_bits: int) -> int:
    """Transitive reach over adjacency bitsets, starting from a seed bitset."""
    r = seeds_bits
    frontier = seeds_bits
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~r
        r |= frontier
    return r


class _CampaignTable:
    """Enumeration of one campaign's live-edge realizations.

    Edges with probability 1 are always live, probability 0 never; only the
    remaining "uncertain" edges are enumerated (2^u realizations).  For small
    tables a per-realization single-vertex reach closure is precomputed.
    """

    def __init__(self, g: Graph, p: np.ndarray, limit: int, what: str):
        self.n = g.n
        base_adj = [0] * g.n
        unc = []
        for i in range(g.m):
            s, d = int(g.src[i]), int(g.dst[i])
            if p[i] >= 1.0:
                base_adj[s] |= 1 << d
            elif p[i] > 0.0:
                unc.append((s, d, float(p[i])))
        if len(unc) > limit:
            raise ValueError(
                f"{what}: {len(unc)} uncertain edges exceed the exact "
                f"enumeration limit of {limit}"
            )
        self.base_adj = base_adj
        self.unc = unc
        self.u = len(unc)
        self.probs = np.empty(1 << self.u, dtype=np.float64)
        for mask in range(1 << self.u):
            pr = 1.0
            for j, (_, _, pe) in enumerate(unc):
                pr *= pe if (mask >> j) & 1 else 1.0 - pe
            self.probs[mask] = pr
        self.closures = None
        if (1 << self.u) * max(g.n, 1) <= _CLOSURE_CELL_LIMIT:
            self.closures = [
                [_reach_bits(adj, 1 << v) for v in range(g.n)]
                for adj in self._adjacencies()
            ]

    def _adjacency(self, mask: int):
        adj = list(self.base_adj)
        for j, (s, d, _) in enumerate(self.unc):
            if (mask >> j) & 1:
                adj[s] |= 1 << d
        return adj

    def _adjacencies(self):
        for mask in range(1 << self.u):
            yield self._adjacency(mask)

    def reach(self, mask: int, seeds_bits: int) -> int:
        if self.closures is not None:
            r = seeds_bits
            closure = self.closures[mask]
            s = seeds_bits
            while s:
                low = s & -s
                r |= closure[low.bit_length() - 1]
                s ^= low
            return r
        return _reach_bits(self._adjacency(mask), seeds_bits)

    def event_probs(self, seed_bit_sets):
        """For each realization-independent seed bitset, the per-vertex
        probability of being reached.  Returns one float list per input."""
        terms = [[[] for _ in range(self.n)] for _ in seed_bit_sets]
        for mask in range(1 << self.u):
            pr = self.probs[mask]
            for si, bits in enumerate(seed_bit_sets):
                r = self.reach(mask, bits)
                while r:
                    low = r & -r
                    terms[si][low.bit_length() - 1].append(pr)
                    r ^= low
        return [[math.fsum(col) for col in rows] for rows in terms]


class ExactEvaluator:
    """Exact objective values by full enumeration of live-edge realizations.

    Correlated: one enumeration with a shared coin per edge.  Heterogeneous:
    the two campaigns' realizations are independent, so each campaign is
    enumerated separately and per-vertex reach probabilities are combined.
    All accumulation uses compensated summation.
    """

    def __init__(self, g: Graph, model: str):
        if model not in MODELS:
            raise ModelError(f"unknown model '{model}'")
        self.graph = g
        self.model = model
        if model == CORRELATED:
            if not validate_correlated(g):
                raise ModelError("correlated model requires p1 == p2 on every edge")
            self._t = _CampaignTable(g, g.p1, MAX_UNCERTAIN_CORRELATED, "correlated")
        else:
            self._t1 = _CampaignTable(g, g.p1, MAX_UNCERTAIN_HETEROGENEOUS, "campaign 1")
            self._t2 = _CampaignTable(g, g.p2, MAX_UNCERTAIN_HETEROGENEOUS, "campaign 2")

    def phi(self, assign: SeedAssignment) -> float:
        n = self.graph.n
        full = (1 << n) - 1
        bi1, bi2 = _bitset(assign.i1), _bitset(assign.i2)
        bs1, bs2 = _bitset(assign.s1), _bitset(assign.s2)
        if self.model == CORRELATED:
            t = self._t
            terms = (
                t.probs[mask]
                * (full & ~(t.reach(mask, bi1 | bs1) ^ t.reach(mask, bi2 | bs2))).bit_count()
                for mask in range(1 << t.u)
            )
            return math.fsum(terms)
        e1 = self._t1.event_probs([bi1 | bs1])[0]
        e2 = self._t2.event_probs([bi2 | bs2])[0]
        return math.fsum(
            e1[x] * e2[x] + (1.0 - e1[x]) * (1.0 - e2[x]) for x in range(n)
        )

    def omega(self, assign: SeedAssignment) -> float:
        n = self.graph.n
        bi1, bi2 = _bitset(assign.i1), _bitset(assign.i2)
        bs1, bs2 = _bitset(assign.s1), _bitset(assign.s2)
        if self.model == CORRELATED:
            t = self._t
            terms = []
            for mask in range(1 << t.u):
                ri1 = t.reach(mask, bi1)
                ri2 = t.reach(mask, bi2)
                rs1 = t.reach(mask, bs1)
                rs2 = t.reach(mask, bs2)
                a = (ri1 & ri2).bit_count()
                b = (ri1 & ~ri2 & rs2).bit_count()
                c = (ri2 & ~ri1 & rs1).bit_count()
                terms.append(t.probs[mask] * (a + b + c))
            return math.fsum(terms)
        # Campaign events: reached-by-initial, and (not initial but added).
        p_i1, p_s1 = self._joint_initial_added(self._t1, bi1, bs1)
        p_i2, p_s2 = self._joint_initial_added(self._t2, bi2, bs2)
        return math.fsum(
            p_i1[x] * p_i2[x] + p_i1[x] * p_s2[x] + p_i2[x] * p_s1[x]
            for x in range(n)
        )

    @staticmethod
    def _joint_initial_added(t: _CampaignTable, bi: int, bs: int):
        """Per-vertex probabilities of (reached by initial seeds) and of
        (missed by initial seeds but reached by added seeds)."""
        pi_terms = [[] for _ in range(t.n)]
        ps_terms = [[] for _ in range(t.n)]
        for mask in range(1 << t.u):
            pr = t.probs[mask]
            ri = t.reach(mask, bi)
            rs = t.reach(mask, bs)
            r = ri
            while r:
                low = r & -r
                pi_terms[low.bit_length() - 1].append(pr)
                r ^= low
            r = rs & ~ri
            while r:
                low = r & -r
                ps_terms[low.bit_length() - 1].append(pr)
                r ^= low
        return (
            [math.fsum(col) for col in pi_terms],
            [math.fsum(col) for col in ps_terms],
        )


def exact_phi(g: Graph, model: str, assign: SeedAssignment) -> float:
    """Exact expected balanced count, by enumerating realizations.

    Only edges with probability strictly between 0 and 1 are enumerated;
    limits: 20 such edges (correlated), 10 per campaign (heterogeneous).
    """
    return ExactEvaluator(g, model).phi(assign)


# ---------------------------------------------------------------------------
# Incremental evaluation state for the greedy selection loops
# ---------------------------------------------------------------------------


class EnsembleState:
    """Mutable selection state over a fixed ensemble.

    Keeps, per world, the live CSR and the reach masks of the current
    (initial ∪ added) seed sets, and evaluates candidate additions by partial
    search from the candidate only.  All scores are integer sums of per-world
    balanced counts, so comparisons and tie-breaks are exact.
    """

    def __init__(self, ens: WorldEnsemble, i1, i2):
        g = ens.graph
        self.ens = ens
        self.graph = g
        self.n = g.n
        self.nw = ens.n_worlds
        self.i1 = frozenset(int(v) for v in i1)
        self.i2 = frozenset(int(v) for v in i2)
        self.s1: set[int] = set()
        self.s2: set[int] = set()
        self._csr1 = [w.live_csr(1) for w in ens.worlds]
        self._csr2 = [w.live_csr(2) for w in ens.worlds]
        self._r1 = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._r2 = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._stack = np.empty(max(g.n, 1), dtype=np.int32)
        self._mark1 = np.zeros(g.n, dtype=np.int64)
        self._mark2 = np.zeros(g.n, dtype=np.int64)
        self._buf1 = np.empty(max(g.n, 1), dtype=np.int32)
        self._buf2 = np.empty(max(g.n, 1), dtype=np.int32)
        self._stamp = 0
        a1 = np.fromiter(sorted(self.i1), dtype=np.int32) if self.i1 else np.empty(0, np.int32)
        a2 = np.fromiter(sorted(self.i2), dtype=np.int32) if self.i2 else np.empty(0, np.int32)
        self.phi_sum = 0
        for w in range(self.nw):
            _kernels.reach_into_mask(*self._csr1[w], a1, self._r1[w], self._stack)
            _kernels.reach_into_mask(*self._csr2[w], a2, self._r2[w], self._stack)
            self.phi_sum += _kernels.balanced_count(self._r1[w], self._r2[w])

    def phi_mean(self) -> float:
        return self.phi_sum / self.nw

    def assignment(self, k: int) -> SeedAssignment:
        return SeedAssignment(self.i1, self.i2, frozenset(self.s1), frozenset(self.s2), k)

    def phi_sums_single(self, side: int, cands: np.ndarray) -> np.ndarray:
        """phi_sum after adding each candidate to the given side (1 or 2)."""
        gains = np.zeros(len(cands), dtype=np.int64)
        if len(cands) == 0:
            return gains
        for w in range(self.nw):
            if side == 1:
                ip, d = self._csr1[w]
                self._stamp = _kernels.gain_phi_single(
                    ip, d, self._r1[w], self._r2[w], cands,
                    self._mark1, self._stack, self._stamp, gains)
            else:
                ip, d = self._csr2[w]
                self._stamp = _kernels.gain_phi_single(
                    ip, d, self._r2[w], self._r1[w], cands,
                    self._mark2, self._stack, self._stamp, gains)
        return gains + self.phi_sum

    def phi_sums_common(self, cands: np.ndarray) -> np.ndarray:
        """phi_sum after adding each candidate to both sides at once."""
        gains = np.zeros(len(cands), dtype=np.int64)
        if len(cands) == 0:
            return gains
        for w in range(self.nw):
            ip1, d1 = self._csr1[w]
            ip2, d2 = self._csr2[w]
            self._stamp = _kernels.gain_phi_common(
                ip1, d1, ip2, d2, self._r1[w], self._r2[w], cands,
                self._mark1, self._mark2, self._stack, self._buf1, self._buf2,
                self._stamp, gains)
        return gains + self.phi_sum

    def phi_sum_pair(self, v1: int, v2: int) -> int:
        """phi_sum after adding v1 to side 1 and v2 to side 2 together."""
        total = 0
        for w in range(self.nw):
            ip1, d1 = self._csr1[w]
            ip2, d2 = self._csr2[w]
            self._stamp += 1
            total += _kernels.gain_phi_pair(
                ip1, d1, ip2, d2, self._r1[w], self._r2[w], v1, v2,
                self._mark1, self._mark2, self._stack, self._buf1, self._buf2,
                self._stamp)
        return total + self.phi_sum

    def accept(self, v1: int | None, v2: int | None) -> None:
        """Add v1 to side 1 and/or v2 to side 2; updates masks and phi_sum."""
        new_sum = self.phi_sum_pair(-1 if v1 is None else v1,
                                    -1 if v2 is None else v2)
        for w in range(self.nw):
            if v1 is not None:
                _kernels.extend_mask(*self._csr1[w], self._r1[w], v1, self._stack)
            if v2 is not None:
                _kernels.extend_mask(*self._csr2[w], self._r2[w], v2, self._stack)
        self.phi_sum = new_sum
        if v1 is not None:
            self.s1.add(int(v1))
        if v2 is not None:
            self.s2.add(int(v2))


class CoverState:
    """Selection state for the greedy on the initially-reached region score.

    Tracks the reaches of the initial sets (fixed) and of the added sets
    alone (growing); candidate gains count newly reached vertices that the
    opposing initial seeds reach exclusively.
    """

    def __init__(self, ens: WorldEnsemble, i1, i2):
        g = ens.graph
        self.ens = ens
        self.graph = g
        self.n = g.n
        self.nw = ens.n_worlds
        self.i1 = frozenset(int(v) for v in i1)
        self.i2 = frozenset(int(v) for v in i2)
        self.s1: set[int] = set()
        self.s2: set[int] = set()
        self._csr1 = [w.live_csr(1) for w in ens.worlds]
        self._csr2 = [w.live_csr(2) for w in ens.worlds]
        self._ri1 = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._ri2 = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._rs1 = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._rs2 = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._stack = np.empty(max(g.n, 1), dtype=np.int32)
        self._mark = np.zeros(g.n, dtype=np.int64)
        self._stamp = 0
        a1 = np.fromiter(sorted(self.i1), dtype=np.int32) if self.i1 else np.empty(0, np.int32)
        a2 = np.fromiter(sorted(self.i2), dtype=np.int32) if self.i2 else np.empty(0, np.int32)
        self.omega_sum = 0
        for w in range(self.nw):
            _kernels.reach_into_mask(*self._csr1[w], a1, self._ri1[w], self._stack)
            _kernels.reach_into_mask(*self._csr2[w], a2, self._ri2[w], self._stack)
            a, b, c = _kernels.counts_abc(self._ri1[w], self._ri2[w],
                                          self._rs1[w], self._rs2[w])
            self.omega_sum += a + b + c

    def omega_mean(self) -> float:
        return self.omega_sum / self.nw

    def omega_gains_single(self, side: int, cands: np.ndarray) -> np.ndarray:
        gains = np.zeros(len(cands), dtype=np.int64)
        if len(cands) == 0:
            return gains
        for w in range(self.nw):
            if side == 1:
                ip, d = self._csr1[w]
                self._stamp = _kernels.gain_omega_single(
                    ip, d, self._rs1[w], self._ri1[w], self._ri2[w], cands,
                    self._mark, self._stack, self._stamp, gains)
            else:
                ip, d = self._csr2[w]
                self._stamp = _kernels.gain_omega_single(
                    ip, d, self._rs2[w], self._ri2[w], self._ri1[w], cands,
                    self._mark, self._stack, self._stamp, gains)
        return gains

    def accept_side(self, v: int, side: int) -> None:
        gain = int(self.omega_gains_single(side, np.array([v], dtype=np.int32))[0])
        rs = self._rs1 if side == 1 else self._rs2
        csr = self._csr1 if side == 1 else self._csr2
        for w in range(self.nw):
            _kernels.extend_mask(*csr[w], rs[w], v, self._stack)
        self.omega_sum += gain
        (self.s1 if side == 1 else self.s2).add(int(v))


class ReachState:
    """Expected-reach state for single-campaign influence greedy."""

    def __init__(self, ens: WorldEnsemble, campaign: int, initial):
        g = ens.graph
        self.graph = g
        self.nw = ens.n_worlds
        self._csr = [w.live_csr(campaign) for w in ens.worlds]
        self._r = np.zeros((self.nw, g.n), dtype=np.uint8)
        self._stack = np.empty(max(g.n, 1), dtype=np.int32)
        self._mark = np.zeros(g.n, dtype=np.int64)
        self._stamp = 0
        init = np.fromiter(sorted(int(v) for v in initial), dtype=np.int32) \
            if initial else np.empty(0, np.int32)
        self.reach_sum = 0
        for w in range(self.nw):
            _kernels.reach_into_mask(*self._csr[w], init, self._r[w], self._stack)
            self.reach_sum += int(self._r[w].sum())

    def reach_gains(self, cands: np.ndarray) -> np.ndarray:
        gains = np.zeros(len(cands), dtype=np.int64)
        if len(cands) == 0:
            return gains
        for w in range(self.nw):
            ip, d = self._csr[w]
            self._stamp = _kernels.gain_reach_single(
                ip, d, self._r[w], cands, self._mark, self._stack,
                self._stamp, gains)
        return gains

    def accept(self, v: int) -> None:
        gain = int(self.reach_gains(np.array([v], dtype=np.int32))[0])
        for w in range(self.nw):
            _kernels.extend_mask(*self._csr[w], self._r[w], v, self._stack)
        self.reach_sum += gain


class ExactState:
    """Drop-in selection state backed by exact enumeration, for the oracle
    checks.  Same interface as EnsembleState/CoverState where needed, with
    float scores scaled by nw=1 semantics (phi_sum is the exact value)."""

    def __init__(self, g: Graph, model: str, i1, i2, evaluator: ExactEvaluator | None = None):
        self.graph = g
        self.n = g.n
        self.nw = 1
        self.ev = evaluator if evaluator is not None else ExactEvaluator(g, model)
        self.i1 = frozenset(int(v) for v in i1)
        self.i2 = frozenset(int(v) for v in i2)
        self.s1: set[int] = set()
        self.s2: set[int] = set()

    def _assign(self, s1, s2) -> SeedAssignment:
        k = len(s1) + len(s2)
        return SeedAssignment(self.i1, self.i2, frozenset(s1), frozenset(s2), k)

    def phi_mean(self) -> float:
        return self.phi_sum

    @property
    def phi_sum(self) -> float:
        return self.ev.phi(self._assign(self.s1, self.s2))

    @property
    def omega_sum(self) -> float:
        return self.ev.omega(self._assign(self.s1, self.s2))

    def omega_mean(self) -> float:
        return self.omega_sum

    def assignment(self, k: int) -> SeedAssignment:
        return SeedAssignment(self.i1, self.i2, frozenset(self.s1), frozenset(self.s2), k)

    def phi_sums_single(self, side: int, cands) -> np.ndarray:
        out = np.empty(len(cands), dtype=np.float64)
        for i, v in enumerate(cands):
            s1 = self.s1 | {int(v)} if side == 1 else self.s1
            s2 = self.s2 | {int(v)} if side == 2 else self.s2
            out[i] = self.ev.phi(self._assign(s1, s2))
        return out

    def phi_sums_common(self, cands) -> np.ndarray:
        out = np.empty(len(cands), dtype=np.float64)
        for i, v in enumerate(cands):
            out[i] = self.ev.phi(self._assign(self.s1 | {int(v)}, self.s2 | {int(v)}))
        return out

    def phi_sum_pair(self, v1: int, v2: int) -> float:
        s1 = self.s1 | {int(v1)} if v1 >= 0 else self.s1
        s2 = self.s2 | {int(v2)} if v2 >= 0 else self.s2
        return self.ev.phi(self._assign(s1, s2))

    def omega_gains_single(self, side: int, cands) -> np.ndarray:
        base = self.omega_sum
        out = np.empty(len(cands), dtype=np.float64)
        for i, v in enumerate(cands):
            s1 = self.s1 | {int(v)} if side == 1 else self.s1
            s2 = self.s2 | {int(v)} if side == 2 else self.s2
            out[i] = self.ev.omega(self._assign(s1, s2)) - base
        return out

    def accept(self, v1, v2) -> None:
        if v1 is not None:
            self.s1.add(int(v1))
        if v2 is not None:
            self.s2.add(int(v2))

    def accept_side(self, v: int, side: int) -> None:
        if side == 1:
            self.accept(v, None)
        else:
            self.accept(None, v)
