import numpy as np
import pytest

from balance import make_graph


@pytest.fixture
def g1():
    """Deterministic chain 0 -> 1 -> 2, every probability 1."""
    return make_graph([(0, 1, 1.0, 1.0), (1, 2, 1.0, 1.0)])


@pytest.fixture
def g2():
    """Single coin-flip edge 0 -> 1 with p1 = p2 = 0.5."""
    return make_graph([(0, 1, 0.5, 0.5)])


@pytest.fixture
def g3():
    """Three isolated vertices."""
    return make_graph([], names=["0", "1", "2"])


def random_digraph(rng: np.random.Generator, n_max=6, m_max=8,
                   equal_probs=True):
    """Small random directed graph (cycles allowed) for property tests."""
    n = int(rng.integers(3, n_max + 1))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    m = int(rng.integers(2, min(m_max, len(pairs)) + 1))
    idx = rng.choice(len(pairs), size=m, replace=False)
    edges = []
    for e in sorted(int(i) for i in idx):
        i, j = pairs[e]
        p1 = round(float(rng.uniform(0.1, 0.95)), 2)
        p2 = p1 if equal_probs else round(float(rng.uniform(0.1, 0.95)), 2)
        edges.append((i, j, p1, p2))
    return make_graph(edges, names=[str(i) for i in range(n)])


def random_seed_sets(rng: np.random.Generator, n: int, max_size=2):
    size1 = int(rng.integers(1, max_size + 1))
    size2 = int(rng.integers(1, max_size + 1))
    i1 = frozenset(int(v) for v in rng.choice(n, size=size1, replace=False))
    i2 = frozenset(int(v) for v in rng.choice(n, size=size2, replace=False))
    return i1, i2
