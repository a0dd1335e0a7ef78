"""Directed social graph with two per-edge propagation probabilities.

Vertices are dense integers in [0, n); the original string labels from the
input files are kept in ``Graph.names``.  Each edge carries one probability
per campaign.  The graph is immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class EdgeListError(ValueError):
    """Raised for malformed or invalid edge-list / interaction / prior files."""


@dataclass(frozen=True)
class InteractionRecord:
    """Retweet counts for one (u, v) pair: v retweeted u `count_uv` times
    out of `total_v` retweets overall."""

    u: int
    v: int
    count_uv: int
    total_v: int

    def __post_init__(self):
        if self.count_uv < 0 or self.total_v < 0:
            raise ValueError("retweet counts must be non-negative")
        if self.count_uv > self.total_v:
            raise ValueError(
                f"count for ({self.u},{self.v}) exceeds the vertex total"
            )


@dataclass(frozen=True)
class SidePrior:
    """Per-vertex prior probability of reposting each campaign.

    q1 and q2 are independent probabilities; they need not sum to 1.
    """

    v: int
    q1: float
    q2: float

    def __post_init__(self):
        if not (0.0 <= self.q1 <= 1.0 and 0.0 <= self.q2 <= 1.0):
            raise ValueError(f"prior for vertex {self.v} out of [0,1]")


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed graph G = (V, E) with campaign probabilities p1, p2 per edge.

    Edge arrays (`src`, `dst`, `p1`, `p2`) keep the ingestion order; `indptr`,
    `csr_dst` and `csr_eid` hold a CSR out-neighbor index sorted by source
    (ties by destination), where `csr_eid[j]` maps CSR slot j back to the
    original edge id.
    """

    n: int
    names: tuple[str, ...]
    src: np.ndarray
    dst: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    indptr: np.ndarray
    csr_dst: np.ndarray
    csr_eid: np.ndarray
    name_to_id: dict = field(repr=False, default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.src)

    def out_degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self):
        """Iterate (src, dst, p1, p2) tuples in ingestion order."""
        for i in range(self.m):
            yield int(self.src[i]), int(self.dst[i]), float(self.p1[i]), float(self.p2[i])

    def with_probabilities(self, p1: np.ndarray, p2: np.ndarray) -> "Graph":
        """Copy of this graph with the same topology and new probabilities."""
        p1 = np.asarray(p1, dtype=np.float64)
        p2 = np.asarray(p2, dtype=np.float64)
        if p1.shape != self.src.shape or p2.shape != self.src.shape:
            raise ValueError("probability arrays must match the edge count")
        for arr in (p1, p2):
            if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
                raise ValueError("probability out of [0,1]")
        return Graph(
            n=self.n, names=self.names,
            src=self.src, dst=self.dst,
            p1=p1, p2=p2,
            indptr=self.indptr, csr_dst=self.csr_dst, csr_eid=self.csr_eid,
            name_to_id=self.name_to_id,
        )


def make_graph(edge_tuples, names=None) -> Graph:
    """Build a validated Graph from (src, dst, p1, p2) tuples with integer ids.

    `names` defaults to the decimal string of each id.  Isolated vertices are
    allowed by passing more names than the edges mention.
    """
    if edge_tuples:
        max_id = max(max(s, d) for s, d, _, _ in edge_tuples)
    else:
        max_id = -1
    if names is None:
        n = max_id + 1
        names = tuple(str(i) for i in range(n))
    else:
        names = tuple(names)
        n = len(names)
        if max_id >= n:
            raise ValueError("edge endpoint out of range for the given names")
    src = np.array([e[0] for e in edge_tuples], dtype=np.int32)
    dst = np.array([e[1] for e in edge_tuples], dtype=np.int32)
    p1 = np.array([e[2] for e in edge_tuples], dtype=np.float64)
    p2 = np.array([e[3] for e in edge_tuples], dtype=np.float64)
    return _assemble(n, names, src, dst, p1, p2, lines=None)


def _assemble(n, names, src, dst, p1, p2, lines) -> Graph:
    """Validate edges and build the CSR index.  `lines` gives the 1-based
    source line of each edge for error reporting (None outside file loads)."""

    def where(i):
        return f" at line {lines[i]}" if lines is not None else f" (edge {i})"

    m = len(src)
    for i in range(m):
        if src[i] == dst[i]:
            raise EdgeListError(f"self-loop on '{names[src[i]]}'{where(i)}")
        if not (0.0 <= p1[i] <= 1.0 and 0.0 <= p2[i] <= 1.0):
            raise EdgeListError(f"probability out of range{where(i)}")

    order = np.lexsort((dst, src)) if m else np.array([], dtype=np.int64)
    if m > 1:
        ss, dd = src[order], dst[order]
        dup = np.flatnonzero((ss[1:] == ss[:-1]) & (dd[1:] == dd[:-1]))
        if dup.size:
            i = order[dup[0] + 1]
            raise EdgeListError(
                f"duplicate edge '{names[src[i]]}' -> '{names[dst[i]]}'{where(i)}"
            )

    indptr = np.zeros(n + 1, dtype=np.int64)
    if m:
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    csr_eid = order.astype(np.int64)
    csr_dst = dst[order].astype(np.int32) if m else np.array([], dtype=np.int32)
    name_to_id = {name: i for i, name in enumerate(names)}
    return Graph(
        n=n, names=tuple(names),
        src=src.astype(np.int32), dst=dst.astype(np.int32),
        p1=p1.astype(np.float64), p2=p2.astype(np.float64),
        indptr=indptr, csr_dst=csr_dst, csr_eid=csr_eid,
        name_to_id=name_to_id,
    )


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def load_edge_list(path) -> Graph:
    """Load a tab-separated edge list: ``src  dst  p1  p2`` per line.

    External labels are remapped to dense ids in order of first appearance.
    Comment lines start with ``#``.  Malformed lines, probabilities outside
    [0,1], self-loops and duplicate edges raise EdgeListError with the
    offending line number.
    """
    names: list[str] = []
    ids: dict[str, int] = {}
    src, dst, p1, p2, lines = [], [], [], [], []

    def vid(label):
        i = ids.get(label)
        if i is None:
            i = len(names)
            ids[label] = i
            names.append(label)
        return i

    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 4:
            raise EdgeListError(f"malformed line {lineno}: expected 4 fields")
        a, b, sp1, sp2 = parts
        try:
            f1, f2 = float(sp1), float(sp2)
        except ValueError:
            raise EdgeListError(f"malformed line {lineno}: bad probability") from None
        if not (0.0 <= f1 <= 1.0 and 0.0 <= f2 <= 1.0):
            raise EdgeListError(f"probability out of range at line {lineno}")
        src.append(vid(a))
        dst.append(vid(b))
        p1.append(f1)
        p2.append(f2)
        lines.append(lineno)

    return _assemble(
        len(names), names,
        np.array(src, dtype=np.int32), np.array(dst, dtype=np.int32),
        np.array(p1, dtype=np.float64), np.array(p2, dtype=np.float64),
        lines,
    )


def write_edge_list(g: Graph, path) -> None:
    """Write `g` in the edge-list format; reloading reproduces the graph
    bit-exactly (floats are emitted with repr round-tripping)."""
    with open(path, "w", encoding="utf-8") as fh:
        for s, d, a, b in g.edges():
            fh.write(f"{g.names[s]}\t{g.names[d]}\t{a!r}\t{b!r}\n")


def load_interactions(path, g: Graph) -> list[InteractionRecord]:
    """Load ``u  v  count_uv  total_v`` records, labels resolved against `g`."""
    out = []
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 4:
            raise EdgeListError(f"malformed line {lineno}: expected 4 fields")
        try:
            u = g.name_to_id[parts[0]]
            v = g.name_to_id[parts[1]]
        except KeyError as exc:
            raise EdgeListError(f"unknown vertex {exc} at line {lineno}") from None
        try:
            rec = InteractionRecord(u, v, int(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise EdgeListError(f"line {lineno}: {exc}") from None
        out.append(rec)
    return out


def load_priors(path, g: Graph) -> list[SidePrior]:
    """Load ``v  q1  q2`` prior records, labels resolved against `g`."""
    out = []
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 3:
            raise EdgeListError(f"malformed line {lineno}: expected 3 fields")
        try:
            v = g.name_to_id[parts[0]]
        except KeyError as exc:
            raise EdgeListError(f"unknown vertex {exc} at line {lineno}") from None
        try:
            rec = SidePrior(v, float(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise EdgeListError(f"line {lineno}: {exc}") from None
        out.append(rec)
    return out


def validate_correlated(g: Graph) -> bool:
    """True iff p1 equals p2 exactly on every edge.

    Exact equality is deliberate: the correlated estimation path sets both
    probabilities from one formula, so any difference is an ingestion bug.
    """
    return bool(np.array_equal(g.p1, g.p2))


def estimate_probabilities(g: Graph, interactions, priors, alpha: float) -> Graph:
    """Set both edge probabilities from interaction counts and side priors.

    For edge (u, v):  p_i(u,v) = alpha * q_i(v) + (1-alpha) * (R(u,v)+1) / (R(v)+2),
    a convex blend of the destination's side prior with the Laplace-smoothed
    repost rate.  Edges without an interaction record use counts (0, 0), i.e.
    the pure smoothing prior 1/2.  With alpha = 0 the output is correlated.
    """
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must be in [0,1], got {alpha}")
    counts = {(r.u, r.v): (r.count_uv, r.total_v) for r in interactions}
    prior = {p.v: (p.q1, p.q2) for p in priors}

    p1 = np.empty(g.m, dtype=np.float64)
    p2 = np.empty(g.m, dtype=np.float64)
    for i in range(g.m):
        u, v = int(g.src[i]), int(g.dst[i])
        if v not in prior:
            raise ValueError(f"no side prior for destination vertex '{g.names[v]}'")
        q1, q2 = prior[v]
        r_uv, r_v = counts.get((u, v), (0, 0))
        smooth = (r_uv + 1) / (r_v + 2)
        p1[i] = alpha * q1 + (1.0 - alpha) * smooth
        p2[i] = alpha * q2 + (1.0 - alpha) * smooth
    return g.with_probabilities(p1, p2)
