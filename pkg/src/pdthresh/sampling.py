"""Seeded random generators used by the property tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .graph import UndirectedGraph, is_connected
from .thresholding import threshold_by_graph


def rng(seed=None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_pd(n: int, gen: np.random.Generator, jitter: float = 1e-3) -> np.ndarray:
    """Wishart-style PD matrix with a small ridge."""
    x = gen.standard_normal((n, n + 2))
    return x @ x.T / (n + 2) + jitter * np.eye(n)


def random_tree(n: int, gen: np.random.Generator) -> UndirectedGraph:
    """Random recursive tree on a shuffled labelling."""
    perm = gen.permutation(n) + 1
    edges = [(int(perm[i]), int(perm[gen.integers(0, i)])) for i in range(1, n)]
    return UndirectedGraph.from_edges(n, edges)


def random_connected_graph(n: int, gen: np.random.Generator, p: float = 0.3) -> UndirectedGraph:
    """Random spanning tree plus independent extra edges."""
    t = random_tree(n, gen)
    extra = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if gen.random() < p]
    g = UndirectedGraph.from_edges(n, list(t.edges) + extra, strict=False)
    assert is_connected(g)
    return g


def random_chordal_graph(n: int, gen: np.random.Generator, p: float = 0.4) -> UndirectedGraph:
    """Connected chordal graph grown along a random elimination ordering.

    Each new vertex is joined to a random clique of the current graph, so the
    reverse insertion order is a perfect elimination ordering.
    """
    order = [int(v) + 1 for v in gen.permutation(n)]
    adj = {order[0]: set()}
    edges = []
    for v in order[1:]:
        anchor = order[gen.integers(0, len(adj))]
        clique = {anchor}
        for u in sorted(adj[anchor]):
            if gen.random() < p and all(u in adj[w] for w in clique):
                clique.add(u)
        adj[v] = set(clique)
        for u in clique:
            adj[u].add(v)
            edges.append((u, v))
    return UndirectedGraph.from_edges(n, edges)


def random_pattern_matrix(g: UndirectedGraph, gen: np.random.Generator, pd: bool = True) -> np.ndarray:
    """``N_G`` for a random PD ``N``; with ``pd=False`` the diagonal is thinned so
    roughly half the samples are not PD."""
    m = threshold_by_graph(random_pd(g.n, gen), g)
    if not pd:
        m = m.copy()
        m[np.diag_indices(g.n)] *= gen.uniform(0.5, 1.0, g.n)
    return m


def random_tridiagonal_pd(n: int, gen: np.random.Generator) -> np.ndarray:
    """Random tridiagonal matrix shifted so its smallest eigenvalue lies in (0.01, 1)."""
    off = gen.uniform(-1, 1, n - 1)
    m = np.diag(gen.uniform(0, 2, n)) + np.diag(off, 1) + np.diag(off, -1)
    shift = gen.uniform(0.01, 1.0) - np.linalg.eigvalsh(m)[0]
    return m + shift * np.eye(n)
