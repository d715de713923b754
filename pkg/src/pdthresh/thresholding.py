"""Hard-thresholding by a pattern graph or by a magnitude level.

Level thresholding keeps an off-diagonal entry only when ``|a_ij| > eta``;
an entry sitting exactly at the level is zeroed. Some statistics packages
keep the boundary instead, so results can differ from theirs on ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, PdThreshError
from .graph import UndirectedGraph
from .matrix import as_symmetric, is_positive_definite


@dataclass(frozen=True)
class LevelThreshold:
    eta: float

    def __post_init__(self):
        eta = float(self.eta)
        if not math.isfinite(eta) or eta < 0:
            raise PdThreshError(f"threshold level must be finite and >= 0, got {self.eta!r}")
        object.__setattr__(self, "eta", eta)


def pattern_mask(g: UndirectedGraph) -> np.ndarray:
    """Boolean mask of retained entries: edges of ``g`` plus the diagonal."""
    mask = np.eye(g.n, dtype=bool)
    for u, v in g.edges:
        mask[u - 1, v - 1] = mask[v - 1, u - 1] = True
    return mask


def threshold_by_graph(m, g: UndirectedGraph) -> np.ndarray:
    a = as_symmetric(m)
    if a.shape[0] != g.n:
        raise DimensionMismatchError(f"matrix is {a.shape[0]}x{a.shape[0]}, graph has {g.n} vertices")
    out = a.copy()
    out[~pattern_mask(g)] = 0
    return out


def threshold_at_level(m, t: Union[LevelThreshold, float]) -> np.ndarray:
    """Zero every off-diagonal entry with ``|a_ij| <= eta``."""
    eta = t.eta if isinstance(t, LevelThreshold) else LevelThreshold(t).eta
    a = as_symmetric(m)
    if a.dtype.kind == "f":
        return _kernels.level_threshold(a, eta)
    out = a.copy()
    keep = np.vectorize(lambda x: abs(x) > eta, otypes=[bool])(a)
    np.fill_diagonal(keep, True)
    out[~keep] = 0
    return out


def zero_pattern_graph(m, tol: float = 0.0) -> UndirectedGraph:
    """Graph with an edge wherever ``|a_ij| > tol`` off the diagonal."""
    a = as_symmetric(m)
    n = a.shape[0]
    big = np.abs(a.astype(float)) > tol
    iu, ju = np.nonzero(np.triu(big, 1))
    return UndirectedGraph(n, frozenset(zip((iu + 1).tolist(), (ju + 1).tolist())))


def level_graph(m, eta: float) -> UndirectedGraph:
    """Pattern retained by :func:`threshold_at_level` at level ``eta``."""
    return zero_pattern_graph(m, LevelThreshold(eta).eta)


def is_in_pattern_cone(m, g: UndirectedGraph, tol: float = 0.0) -> bool:
    """Membership in P_G: positive definite with (near-)zeros off the edge set."""
    a = as_symmetric(m)
    if a.shape[0] != g.n:
        raise DimensionMismatchError(f"matrix is {a.shape[0]}x{a.shape[0]}, graph has {g.n} vertices")
    off = np.abs(a.astype(float))[~pattern_mask(g)]
    if np.any(off > tol):
        return False
    return is_positive_definite(a).is_pd
