"""Pre-sampled live-edge worlds and reachability within them.

A cascade outcome is simulated by flipping each edge's coin once up front:
reachability from a seed set over the surviving ("live") edges equals the
round-based propagation outcome.  An ensemble of worlds is the Monte Carlo
sample all estimators and algorithms share.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import Graph, validate_correlated

HETEROGENEOUS = "heterogeneous"
CORRELATED = "correlated"
MODELS = (HETEROGENEOUS, CORRELATED)


class ModelError(ValueError):
    """Raised when a model requirement is violated (e.g. correlated sampling
    on a graph whose two probabilities differ)."""


def _check_model(g: Graph, model: str) -> None:
    if model not in MODELS:
        raise ModelError(f"unknown model '{model}'")
    if model == CORRELATED and not validate_correlated(g):
        raise ModelError("correlated model requires p1 == p2 on every edge")


@dataclass(frozen=True, eq=False)
class World:
    """One live-edge realization.  `f1` / `f2` flag, per edge in ingestion
    order, whether the edge is live for campaign 1 / 2.  Under the correlated
    model the two arrays are the same object."""

    graph: Graph
    f1: np.ndarray
    f2: np.ndarray
    _csr: dict = field(default_factory=dict, repr=False, compare=False)

    def live_csr(self, campaign: int):
        """CSR (indptr, dst) restricted to this world's live edges; cached."""
        cached = self._csr.get(campaign)
        if cached is not None:
            return cached
        g = self.graph
        f = self.f1 if campaign == 1 else self.f2
        mask = f[g.csr_eid]
        live_src = np.repeat(np.arange(g.n), np.diff(g.indptr))[mask]
        indptr = np.zeros(g.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(live_src, minlength=g.n), out=indptr[1:])
        dst = g.csr_dst[mask]
        self._csr[campaign] = (indptr, dst)
        return self._csr[campaign]


@dataclass(frozen=True, eq=False)
class WorldEnsemble:
    """N independent worlds sampled from one graph and model.

    World i draws from the stream `SeedSequence(rng_seed).spawn(N)[i]`, so the
    ensemble is reproducible bit-exactly regardless of construction order.
    """

    graph: Graph
    model: str
    rng_seed: int
    worlds: tuple[World, ...]

    @property
    def n_worlds(self) -> int:
        return len(self.worlds)

    def content_hash(self) -> str:
        """SHA-256 over the header and every world's live-edge bits."""
        h = hashlib.sha256()
        h.update(f"{self.model}/{self.rng_seed}/{self.n_worlds}/{self.graph.m}".encode())
        for w in self.worlds:
            h.update(np.packbits(w.f1).tobytes())
            h.update(np.packbits(w.f2).tobytes())
        return h.hexdigest()


def sample_world(g: Graph, model: str, rng: np.random.Generator) -> World:
    """Flip every edge's coin(s) and return the resulting world.

    Heterogeneous: two independent coins per edge, campaign 1's drawn first.
    Correlated: a single coin per edge governs both campaigns.
    """
    _check_model(g, model)
    if model == CORRELATED:
        f = rng.random(g.m) < g.p1
        return World(graph=g, f1=f, f2=f)
    u = rng.random((g.m, 2))
    return World(graph=g, f1=u[:, 0] < g.p1, f2=u[:, 1] < g.p2)


def build_ensemble(g: Graph, model: str, n_worlds: int, rng_seed: int) -> WorldEnsemble:
    """Sample `n_worlds` independent worlds, one derived RNG stream each."""
    _check_model(g, model)
    if n_worlds < 1:
        raise ValueError("n_worlds must be >= 1")
    streams = np.random.SeedSequence(rng_seed).spawn(n_worlds)
    worlds = tuple(
        sample_world(g, model, np.random.default_rng(streams[i]))
        for i in range(n_worlds)
    )
    return WorldEnsemble(graph=g, model=model, rng_seed=rng_seed, worlds=worlds)


def _seed_array(g: Graph, seeds) -> np.ndarray:
    arr = np.fromiter((int(v) for v in seeds), dtype=np.int32)
    if arr.size and (arr.min() < 0 or arr.max() >= g.n):
        raise ValueError("seed vertex out of range")
    return arr


def reach(w: World, campaign: int, seeds) -> set[int]:
    """Vertices reachable from `seeds` via the world's live edges for the
    campaign.  Seeds themselves count as reached."""
    g = w.graph
    arr = _seed_array(g, seeds)
    if arr.size == 0:
        return set()
    indptr, dst = w.live_csr(campaign)
    mask = np.zeros(g.n, dtype=np.uint8)
    stack = np.empty(g.n, dtype=np.int32)
    _kernels.reach_into_mask(indptr, dst, arr, mask, stack)
    return set(np.flatnonzero(mask).tolist())


def reach_extend(w: World, campaign: int, cached: set[int], extra_seed: int) -> set[int]:
    """reach(w, campaign, S ∪ {extra_seed}) given cached = reach(w, campaign, S),
    computed by searching only outside the cached set."""
    g = w.graph
    if not (0 <= extra_seed < g.n):
        raise ValueError("seed vertex out of range")
    if extra_seed in cached:
        return set(cached)
    indptr, dst = w.live_csr(campaign)
    mask = np.zeros(g.n, dtype=np.uint8)
    idx = np.fromiter(cached, dtype=np.int64) if cached else np.array([], dtype=np.int64)
    mask[idx] = 1
    stack = np.empty(g.n, dtype=np.int32)
    _kernels.extend_mask(indptr, dst, mask, extra_seed, stack)
    return set(np.flatnonzero(mask).tolist())


def save_ensemble(ens: WorldEnsemble, path) -> None:
    """Dump the ensemble's live-edge bits with a validating header."""
    f1 = np.stack([np.packbits(w.f1) for w in ens.worlds]) if ens.graph.m else \
        np.zeros((ens.n_worlds, 0), dtype=np.uint8)
    f2 = np.stack([np.packbits(w.f2) for w in ens.worlds]) if ens.graph.m else \
        np.zeros((ens.n_worlds, 0), dtype=np.uint8)
    np.savez_compressed(
        path,
        model=ens.model,
        rng_seed=np.int64(ens.rng_seed),
        n_worlds=np.int64(ens.n_worlds),
        n_edges=np.int64(ens.graph.m),
        f1=f1,
        f2=f2,
    )


def load_ensemble(path, g: Graph, model: str, n_worlds: int, rng_seed: int) -> WorldEnsemble:
    """Load a cached ensemble, validating its header against the requested
    configuration and graph."""
    with np.load(path, allow_pickle=False) as data:
        header = (str(data["model"]), int(data["rng_seed"]),
                  int(data["n_worlds"]), int(data["n_edges"]))
        if header != (model, rng_seed, n_worlds, g.m):
            raise ValueError(
                f"ensemble cache header {header} does not match the requested "
                f"configuration {(model, rng_seed, n_worlds, g.m)}"
            )
        worlds = []
        for i in range(n_worlds):
            f1 = np.unpackbits(data["f1"][i], count=g.m).astype(bool)
            if model == CORRELATED:
                worlds.append(World(graph=g, f1=f1, f2=f1))
            else:
                f2 = np.unpackbits(data["f2"][i], count=g.m).astype(bool)
                worlds.append(World(graph=g, f1=f1, f2=f2))
    return WorldEnsemble(graph=g, model=model, rng_seed=rng_seed, worlds=tuple(worlds))
