"""Deterministic constructions of witness matrices.

Covers the 3x3 example, the cycle family with its closed-form determinant
and parameter recipe, level-scaled cycles, identity-padded embeddings on a
broken cycle, the singular PSD shift and the non diagonally dominant
border induction.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import (
    NoBrokenCycleError,
    NotConnectedError,
    NotPdError,
    PdThreshError,
    TooSmallError,
)
from .graph import (
    UndirectedGraph,
    broken_cycle_witness,
    induced_subgraph,
    is_complete,
    is_connected,
    removable_vertex,
)
from .matrix import as_symmetric, is_positive_definite, min_eigenvalue, to_float
from .thresholding import threshold_by_graph

A3_MATRIX = np.array([[4, 3, -3], [3, 4, -1], [-3, -1, 4]])
A3_GRAPH = UndirectedGraph(3, frozenset({(1, 2), (1, 3)}))
NON_DD_BASE = np.array([[3, -2, -2], [-2, 3, 2], [-2, 2, 3]])


@dataclass(frozen=True)
class CycleParams:
    """Parameters of the cycle matrix: corner diagonals, bridge ``a`` at (1, n),
    entry ``b`` at (n-1, n) and the slack ``epsilon`` used by the recipe."""

    n: int
    alpha: float = 2.0
    beta: float = 2.0
    a: float = 0.0
    b: float = 0.0
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.n < 3:
            raise TooSmallError("cycle matrices need n >= 3")

    def header(self) -> list[str]:
        return [f"{k} = {v!r}" for k, v in asdict(self).items()]


def a3_example() -> tuple[np.ndarray, UndirectedGraph]:
    """The 3x3 PD matrix that loses definiteness under the A3 pattern."""
    return A3_MATRIX.copy(), A3_GRAPH


def cycle_matrix(p: CycleParams) -> np.ndarray:
    n = p.n
    m = np.zeros((n, n))
    m[np.diag_indices(n)] = 2.0
    m[0, 0] = p.alpha
    m[n - 1, n - 1] = p.beta
    for i in range(n - 2):
        m[i, i + 1] = m[i + 1, i] = 1.0
    m[0, n - 1] = m[n - 1, 0] = p.a
    m[n - 2, n - 1] = m[n - 1, n - 2] = p.b
    return m


def cycle_determinant(p: CycleParams) -> float:
    """Closed-form determinant of :func:`cycle_matrix`."""
    n, al, be, a, b = p.n, p.alpha, p.beta, p.a, p.b
    sign = 1.0 if n % 2 == 1 else -1.0  # (-1)^(n+1)
    return (
        -(n - 2) * be
        + (n - 1) * al * be
        + sign * 2 * a * b
        - (n - 1) * a * a
        + (n - 3) * b * b
        - (n - 2) * al * b * b
    )


def cycle_polynomial(n: int, a: float, b: float) -> float:
    """Determinant of the cycle matrix with both corner diagonals equal to 2."""
    sign = 1.0 if n % 2 == 1 else -1.0
    return 2 * n - (n - 1) * a * a - (n - 1) * b * b + sign * 2 * a * b


def corner_free_determinant(n: int, b: float) -> float:
    """Determinant once the bridge entry ``a`` is zeroed."""
    return 2 * n - (n - 1) * b * b


def recipe_epsilon(n: int) -> float:
    """Midpoint of the slack interval that keeps the discriminant positive."""
    return n / ((n - 1) * ((n - 1) ** 2 - 1))


def construct_cycle_counterexample(n: int) -> tuple[np.ndarray, CycleParams]:
    """PD cycle matrix that stops being PD when its (1, n) entry is zeroed.

    ``b**2 = 2n/(n-1) + eps`` makes the zeroed determinant negative, and
    ``a = (-1)**(n+1) * b / (n-1)`` maximises the full determinant, which then
    equals ``n / (n-1)**2``.
    """
    if n < 3:
        raise TooSmallError("cycle counterexamples need n >= 3")
    eps = recipe_epsilon(n)
    b = math.sqrt(2 * n / (n - 1) + eps)
    a = (1 if n % 2 == 1 else -1) * b / (n - 1)
    p = CycleParams(n=n, alpha=2.0, beta=2.0, a=a, b=b, epsilon=eps)
    return cycle_matrix(p), p


def construct_level_counterexample(n: int, eta: float) -> np.ndarray:
    """Scaled cycle counterexample whose level-``eta`` threshold is not PD.

    The bridge entries are set to exactly ``+-eta`` after scaling, so the
    strict ``|a_ij| > eta`` rule removes them and nothing else.
    """
    if not (math.isfinite(eta) and eta > 0):
        raise PdThreshError(f"level must be positive, got {eta!r}")
    m, p = construct_cycle_counterexample(n)
    w = (eta / abs(p.a)) * m
    w[0, n - 1] = w[n - 1, 0] = math.copysign(eta, p.a)
    return w


def embed_on_vertices(n: int, vertices: list[int], blk: np.ndarray) -> np.ndarray:
    """Place ``blk`` on the 1-based ``vertices`` (in order), identity elsewhere."""
    blk = np.asarray(blk)
    out = np.eye(n, dtype=blk.dtype)
    idx = [v - 1 for v in vertices]
    out[np.ix_(idx, idx)] = blk
    return out


def embed_counterexample(
    g: UndirectedGraph, h: UndirectedGraph, use_a3: Optional[bool] = None
) -> np.ndarray:
    """Matrix in P_G that loses definiteness when thresholded by ``h``.

    The cycle counterexample is laid along a broken cycle ``v1..vm`` with the
    bridge on the removed edge ``(vm, v1)``. For a 3-cycle against a complete
    base graph the integer 3x3 example is used instead (``use_a3=None``).
    """
    cycle = broken_cycle_witness(g, h)
    if cycle is None:
        raise NoBrokenCycleError("every component of h is an induced subgraph of g")
    m = len(cycle)
    if use_a3 is None:
        use_a3 = m == 3 and is_complete(g)
    if use_a3 and m == 3:
        # centre of the A3 pattern is the middle vertex of the h-path
        return embed_on_vertices(g.n, [cycle[1], cycle[0], cycle[2]], A3_MATRIX)
    blk, _ = construct_cycle_counterexample(m)
    return embed_on_vertices(g.n, cycle, blk)


def singular_shift(m) -> np.ndarray:
    """``m - lambda_min(m) I``: singular PSD, and the shift commutes with thresholding."""
    a = as_symmetric(m)
    if not is_positive_definite(a).is_pd:
        raise NotPdError("singular_shift needs a positive definite matrix")
    af = to_float(a)
    return af - min_eigenvalue(af) * np.eye(af.shape[0])


def non_dd_witness(g: UndirectedGraph) -> np.ndarray:
    """PD matrix with no zeros, no diagonally dominant row, whose threshold by
    ``g`` stays PD without being diagonally dominant.

    Built by peeling off a removable vertex, recursing, and bordering the
    scaled recursive matrix with ``x = (1, ..., 1, 1/2)``. The scale is twice
    the largest of 1 and the two Schur-positivity thresholds (full and
    thresholded border).
    """
    if g.n < 3:
        raise TooSmallError("non_dd_witness needs at least 3 vertices")
    if not is_connected(g):
        raise NotConnectedError("non_dd_witness needs a connected graph")
    if g.n == 3:
        return NON_DD_BASE.copy()
    v = removable_vertex(g)
    rest = [u for u in g.vertices if u != v]
    gs, _ = induced_subgraph(g, rest)
    prev = to_float(non_dd_witness(gs))
    prev_g = threshold_by_graph(prev, gs)
    x_last = 0.5
    x = np.ones(g.n - 1)
    x_h = np.array([1.0 if g.has_edge(u, v) else 0.0 for u in rest])
    lam1 = x @ np.linalg.solve(prev, x) / x_last
    lam2 = x_h @ np.linalg.solve(prev_g, x_h) / x_last
    lam = 2.0 * max(1.0, lam1, lam2)
    out = np.empty((g.n, g.n))
    idx = [u - 1 for u in rest]
    out[np.ix_(idx, idx)] = lam * prev
    out[idx, v - 1] = x
    out[v - 1, idx] = x
    out[v - 1, v - 1] = x_last
    return out


def non_dd_properties(m, g: UndirectedGraph, exact: Optional[bool] = None) -> dict:
    """Check the five properties promised by :func:`non_dd_witness`.

    The recursion scales the leading block by large factors, so float pivots
    lose resolution past a dozen vertices; ``exact`` defaults to True for
    ``n <= 64``.
    """
    from .matrix import EXACT_MAX_N, is_strictly_diagonally_dominant

    a = as_symmetric(m)
    if exact is None:
        exact = a.shape[0] <= EXACT_MAX_N
    ag = threshold_by_graph(a, g)
    rows = is_strictly_diagonally_dominant(a).margins
    return {
        "pd": is_positive_definite(a, exact=exact).is_pd,
        "no_zero_entries": bool(np.all(to_float(a) != 0)),
        "no_dominant_row": bool(np.all(np.asarray(rows) < 0)),
        "thresholded_pd": is_positive_definite(ag, exact=exact).is_pd,
        "thresholded_not_dd": not is_strictly_diagonally_dominant(ag).is_dd,
    }
