"""Decision procedures for when thresholding is guaranteed to keep a whole
matrix class positive definite.

Every certificate carries checkable evidence: the component structure when
the guarantee holds, or a witness matrix with PD reports before and after
thresholding when it does not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .counterexamples import (
    construct_level_counterexample,
    embed_counterexample,
    embed_on_vertices,
)
from .errors import NotASubgraphError, TooSmallError
from .graph import (
    UndirectedGraph,
    broken_cycle_witness,
    connected_components,
    find_cycle,
    is_connected,
    is_forest,
    is_union_of_complete_components,
)
from .matrix import EXACT_MAX_N, PdReport, as_symmetric, is_positive_definite
from .matrix import is_strictly_diagonally_dominant
from .thresholding import threshold_at_level, threshold_by_graph

GUARANTEED = "GuaranteedForAll"
NOT_GUARANTEED = "NotGuaranteed"

UNIVERSAL = "universal-preservation"
SUBGRAPH = "subgraph-preservation"
ALL_SUBGRAPHS = "all-subgraph-preservation"
LEVEL = "level-preservation"


@dataclass
class Certificate:
    verdict: str
    theorem: str
    structure: Optional[list] = None
    witness: Optional[np.ndarray] = None
    witness_thresholded: Optional[np.ndarray] = None
    witness_report: Optional[PdReport] = None
    thresholded_report: Optional[PdReport] = None
    thresholded_by: Optional[UndirectedGraph] = None
    level: Optional[float] = None
    notes: list = field(default_factory=list)

    @property
    def guaranteed(self) -> bool:
        return self.verdict == GUARANTEED

    def to_dict(self, witness_path: Optional[str] = None) -> dict:
        out = {
            "verdict": self.verdict,
            "theorem": self.theorem,
            "structure": self.structure,
            "witness_path": witness_path,
            "notes": list(self.notes),
        }
        if self.witness is not None:
            out["witness_pd"] = bool(self.witness_report.is_pd)
            out["thresholded_pd"] = bool(self.thresholded_report.is_pd)
            out["check_mode"] = self.witness_report.mode
        if self.thresholded_by is not None:
            out["thresholded_by"] = [list(e) for e in self.thresholded_by.sorted_edges()]
        if self.level is not None:
            out["level"] = self.level
        return out


def _verify(witness: np.ndarray, thresholded: np.ndarray) -> tuple[PdReport, PdReport]:
    # witnesses are checked exactly: float entries are read as binary rationals
    exact = witness.shape[0] <= EXACT_MAX_N
    return (
        is_positive_definite(witness, exact=exact),
        is_positive_definite(thresholded, exact=exact),
    )


def _structure(g: UndirectedGraph) -> list[list[int]]:
    return [sorted(c) for c in connected_components(g)]


def _witness_certificate(theorem, witness, thresholded, **kw) -> Certificate:
    before, after = _verify(witness, thresholded)
    return Certificate(
        verdict=NOT_GUARANTEED,
        theorem=theorem,
        witness=witness,
        witness_thresholded=thresholded,
        witness_report=before,
        thresholded_report=after,
        **kw,
    )


def certify_universal_preservation(g: UndirectedGraph) -> Certificate:
    """Thresholding by ``g`` keeps every PD matrix PD iff ``g`` is a disjoint
    union of complete components."""
    if is_union_of_complete_components(g):
        return Certificate(GUARANTEED, UNIVERSAL, structure=_structure(g))
    w = embed_counterexample(UndirectedGraph.complete(g.n), g)
    return _witness_certificate(UNIVERSAL, w, threshold_by_graph(w, g), thresholded_by=g)


def certify_subgraph_preservation(g: UndirectedGraph, h: UndirectedGraph) -> Certificate:
    """Over P_G, thresholding by the subgraph ``h`` is safe iff each component of
    ``h`` is an induced subgraph of ``g``."""
    if not h.is_subgraph_of(g):
        raise NotASubgraphError("h must be a subgraph of g on the same vertex set")
    if broken_cycle_witness(g, h) is None:
        return Certificate(GUARANTEED, SUBGRAPH, structure=_structure(h))
    w = embed_counterexample(g, h)
    return _witness_certificate(SUBGRAPH, w, threshold_by_graph(w, h), thresholded_by=h)


def certify_all_subgraph_preservation(g: UndirectedGraph) -> Certificate:
    """Every subgraph threshold is safe over P_G iff ``g`` is a forest."""
    if is_forest(g):
        return Certificate(GUARANTEED, ALL_SUBGRAPHS, structure=_structure(g))
    cycle = find_cycle(g)
    h = UndirectedGraph(g.n, g.edges - {tuple(sorted((cycle[0], cycle[-1])))})
    w = embed_counterexample(g, h)
    return _witness_certificate(ALL_SUBGRAPHS, w, threshold_by_graph(w, h), thresholded_by=h)


def certify_level_preservation(g: UndirectedGraph, eta: float = 1.0) -> Certificate:
    """Level thresholding is safe over P_G for some (equivalently every) level iff
    ``g`` is a tree.

    ``eta`` only sets the scale of the witness. Disconnected graphs are handled
    component by component, which goes beyond the connected case the result is
    stated for; the certificate notes it.
    """
    if g.n < 3:
        raise TooSmallError("level certification needs at least 3 vertices")
    notes = []
    if not is_connected(g):
        notes.append("disconnected pattern: decided per component (extension of the connected case)")
    if is_forest(g):
        structure = _structure(g)
        return Certificate(GUARANTEED, LEVEL, structure=structure, level=eta, notes=notes)
    cycle = find_cycle(g)
    blk = construct_level_counterexample(len(cycle), eta)
    w = embed_on_vertices(g.n, cycle, blk)
    return _witness_certificate(
        LEVEL, w, threshold_at_level(w, eta), level=eta, notes=notes
    )


def dd_guarantee(m) -> bool:
    """Strict diagonal dominance with a positive diagonal: every threshold stays PD."""
    a = as_symmetric(m)
    return bool(is_strictly_diagonally_dominant(a)) and bool(np.all(np.diag(a) > 0))
