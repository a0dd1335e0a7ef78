"""Desk-scale synthetic inputs: a polarized two-community graph, small
random DAGs sized for exact enumeration, and the set-cover hard instances."""

from __future__ import annotations

import json

import numpy as np

from .graph import Graph, make_graph, write_edge_list
from .oracle import SetCoverInstance, reduction_from_set_cover


def two_community(n: int, rng_seed: int, intra_degree: int = 5,
                  cross_rate: float = 0.1, p_intra: float = 0.1,
                  p_cross: float = 0.05, n_initial: int = 10):
    """Two equally sized communities with dense in-community edges and sparse
    cross links; each campaign's initial seeds sit in opposite communities.

    Returns (graph, i1, i2).  Both campaign probabilities are equal, so the
    graph works under either propagation model.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError("n must be an even number >= 4")
    if not (0 < intra_degree < n // 2):
        raise ValueError("intra_degree must be in (0, n/2)")
    rng = np.random.default_rng(rng_seed)
    half = n // 2
    members = (np.arange(half), np.arange(half, n))
    edges = []
    seen = set()
    for com in (0, 1):
        own = members[com]
        other = members[1 - com]
        for v in own:
            targets = rng.choice(own[own != v], size=intra_degree, replace=False)
            for t in targets:
                if (v, t) not in seen:
                    seen.add((v, t))
                    edges.append((int(v), int(t), p_intra, p_intra))
            if rng.random() < cross_rate:
                t = int(rng.choice(other))
                if (v, t) not in seen:
                    seen.add((v, t))
                    edges.append((int(v), int(t), p_cross, p_cross))
    g = make_graph(edges, names=[str(i) for i in range(n)])
    i1 = frozenset(int(v) for v in rng.choice(members[0], size=n_initial, replace=False))
    i2 = frozenset(int(v) for v in rng.choice(members[1], size=n_initial, replace=False))
    return g, i1, i2


def random_dag(n: int, m: int, rng_seed: int,
               p_min: float = 0.2, p_max: float = 0.9) -> Graph:
    """Random DAG with m forward edges and equal campaign probabilities,
    small enough for exact evaluation."""
    max_edges = n * (n - 1) // 2
    if not (0 <= m <= max_edges):
        raise ValueError(f"m must be in [0, {max_edges}]")
    rng = np.random.default_rng(rng_seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = rng.choice(len(pairs), size=m, replace=False)
    edges = []
    for e in sorted(int(i) for i in idx):
        i, j = pairs[e]
        p = round(float(rng.uniform(p_min, p_max)), 2)
        edges.append((i, j, p, p))
    return make_graph(edges, names=[str(i) for i in range(n)])


def write_seeds(path, g: Graph, i1, i2) -> None:
    """Write the two initial seed sets as external labels (JSON)."""
    payload = {
        "i1": sorted(g.names[int(v)] for v in i1),
        "i2": sorted(g.names[int(v)] for v in i2),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_seeds(path, g: Graph):
    """Read initial seed sets written by `write_seeds`; labels are resolved
    against the graph's name table."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    out = []
    for key in ("i1", "i2"):
        labels = payload.get(key)
        if labels is None:
            raise ValueError(f"seeds file is missing '{key}'")
        ids = set()
        for label in labels:
            vid = g.name_to_id.get(str(label))
            if vid is None:
                raise ValueError(f"seed label '{label}' is not a graph vertex")
            ids.add(vid)
        out.append(frozenset(ids))
    return out[0], out[1]


def generate_synthetic(kind: str, out_graph, out_seeds, **params):
    """Write the graph and seeds files for one synthetic kind.

    Kinds: ``two-community`` (n, rng_seed, ...), ``random-dag`` (n, m,
    rng_seed), ``set-cover-reduction`` (instance: SetCoverInstance).
    """
    if kind == "two-community":
        g, i1, i2 = two_community(**params)
    elif kind == "random-dag":
        g = random_dag(**params)
        i1, i2 = frozenset(), frozenset()
        if g.n:
            i1, i2 = frozenset({0}), frozenset({g.n - 1})
    elif kind == "set-cover-reduction":
        inst = params["instance"]
        if not isinstance(inst, SetCoverInstance):
            raise ValueError("set-cover-reduction needs a SetCoverInstance")
        g, i1, i2, _budget = reduction_from_set_cover(inst)
    else:
        raise ValueError(f"unknown synthetic kind '{kind}'")
    write_edge_list(g, out_graph)
    write_seeds(out_seeds, g, i1, i2)
    return g, i1, i2
