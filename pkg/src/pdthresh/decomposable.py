"""Exact PD analyzers for matrices thresholded by chordal graphs, trees and paths.

Each analyzer reduces ``M > 0`` to an ordered list of Schur-complement
conditions that can be evaluated one by one. The reduction presumes that
every maximal-clique block of ``M`` is PD (true whenever ``M`` is the
threshold of a PD matrix); those blocks are checked and reported as
preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import _kernels
from .errors import (
    InvalidDecompositionError,
    NonpositiveDiagonalError,
    NotAPathPatternError,
    NotATreeError,
    NotChordalError,
    PatternMismatchError,
    PdThreshError,
    SingularBlockError,
    TooSmallError,
)
from .graph import (
    Decomposition,
    UndirectedGraph,
    bfs_tree_edges,
    connected_components,
    induced_subgraph,
    is_chordal,
    is_tree,
    path_order,
    perfect_clique_ordering,
)
from .matrix import as_symmetric, block, schur_reduce, to_float
from .thresholding import pattern_mask, zero_pattern_graph

MARGIN_TOL = 1e-10

PD = "PD"
NOT_PD = "NotPD"
INDETERMINATE = "Indeterminate"


@dataclass
class ConditionItem:
    label: str
    value: Union[float, np.ndarray, None]
    threshold_form: str
    passed: bool
    indeterminate: bool
    margin: float = float("nan")
    vertices: Optional[list] = None
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.indeterminate:
            return "indeterminate"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "threshold_form": self.threshold_form,
            "margin": None if np.isnan(self.margin) else float(self.margin),
            "verdict": self.verdict,
        }
        if isinstance(self.value, np.ndarray):
            out["kind"] = "matrix"
            out["size"] = int(self.value.shape[0])
            out["min_eigenvalue"] = out["margin"]
        else:
            out["kind"] = "scalar"
            out["value"] = None if self.value is None or np.isnan(self.value) else float(self.value)
        if self.vertices is not None:
            out["vertices"] = list(self.vertices)
        out.update(self.extra)
        return out


@dataclass
class ConditionReport:
    items: list
    preconditions: list = field(default_factory=list)
    method: str = ""
    notes: list = field(default_factory=list)

    @property
    def overall(self) -> str:
        every = self.preconditions + self.items
        if any(not it.passed and not it.indeterminate for it in every):
            return NOT_PD
        if any(it.indeterminate for it in every):
            return INDETERMINATE
        return PD

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "overall": self.overall,
            "preconditions": [it.to_dict() for it in self.preconditions],
            "items": [it.to_dict() for it in self.items],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TreeEdgeOrder:
    """Breadth-first parent -> child edges, children ascending at each depth."""

    root: int
    edges: tuple


def _classify(margin: float, tol: float = MARGIN_TOL) -> tuple[bool, bool]:
    if np.isnan(margin):
        return False, True
    if margin > tol:
        return True, False
    if margin < -tol:
        return False, False
    return False, True


def _matrix_item(label, value, form, vertices=None) -> ConditionItem:
    margin = float(np.linalg.eigvalsh(value)[0])
    passed, indet = _classify(margin)
    return ConditionItem(label, value, form, passed, indet, margin, vertices)


def _scalar_item(label, value, form, vertices=None) -> ConditionItem:
    value = float(value)
    passed, indet = _classify(value)
    return ConditionItem(label, value, form, passed, indet, value, vertices)


def _singular_item(label, form, vertices=None) -> ConditionItem:
    return ConditionItem(label, None, form, False, True, float("nan"), vertices,
                         {"reason": "singular intermediate block"})


def _check_pattern(a: np.ndarray, g: UndirectedGraph) -> None:
    if a.shape[0] != g.n:
        raise PatternMismatchError(f"matrix is {a.shape[0]}x{a.shape[0]}, graph has {g.n} vertices")
    if np.any(to_float(a)[~pattern_mask(g)] != 0):
        raise PatternMismatchError("matrix has nonzero entries outside the graph's edge set")


def _check_diagonal(a: np.ndarray) -> None:
    if np.any(to_float(np.diag(a)) <= 0):
        raise NonpositiveDiagonalError("diagonal entries must be positive")


def _schur(a: np.ndarray, keep: list, elim: list) -> np.ndarray:
    return schur_reduce(block(a, keep), block(a, keep, elim), block(a, elim))


def decomposition_condition(m, d: Decomposition, g: Optional[UndirectedGraph] = None) -> ConditionReport:
    """Check ``M_AA > 0``, ``M_BB > 0`` and ``S1 + S2 - M_CC > 0`` for a decomposition.

    Without ``g`` the decomposition is validated against the matrix itself:
    the parts must partition the vertices and ``M_AB`` must vanish.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    pa, pb, pc = sorted(d.part_a), sorted(d.part_b), sorted(d.separator_c)
    parts = set(pa) | set(pb) | set(pc)
    if len(pa) + len(pb) + len(pc) != n or parts != set(range(1, n + 1)):
        raise InvalidDecompositionError("parts must partition the vertex set")
    if not pc:
        raise InvalidDecompositionError("separator must be non-empty")
    if g is not None:
        if not d.is_valid_for(g):
            raise InvalidDecompositionError("not a decomposition of the given graph")
    elif pa and pb and np.any(to_float(block(a, pa, pb)) != 0):
        raise InvalidDecompositionError("M_AB must be zero for C to separate A from B")

    items = []
    for label, form, part in (("1'", "M_AA", pa), ("2'", "M_BB", pb)):
        if part:
            items.append(_matrix_item(label, to_float(block(a, part)), form, part))
    form = "S1+S2-M_CC"
    try:
        s1 = _schur(a, pc, pa)
        s2 = _schur(a, pc, pb)
    except SingularBlockError:
        items.append(_singular_item("3", form, pc))
        return ConditionReport(items, method="decomposition")
    mcc = to_float(block(a, pc))
    item = _matrix_item("3", s1 + s2 - mcc, form, pc)
    item.extra["S1"] = s1.tolist()
    item.extra["S2"] = s2.tolist()
    items.append(item)
    return ConditionReport(items, method="decomposition")


def chordal_conditions(m, g: UndirectedGraph) -> ConditionReport:
    """Conditions ``S1(q) + S2(q) - M_{S_q S_q} > 0`` over a perfect clique ordering."""
    a = as_symmetric(m)
    _check_pattern(a, g)
    _check_diagonal(a)
    order = perfect_clique_ordering(g)
    pre = [
        _matrix_item(f"clique {q + 1}", to_float(block(a, sorted(c))), "M_CqCq", sorted(c))
        for q, c in enumerate(order.cliques)
    ]
    items = []
    for q in range(1, len(order)):
        s = sorted(order.separators[q])
        ra = sorted(order.residual_a[q])
        rb = sorted(order.residual_b[q])
        label = f"q={q + 1}"
        form = "S1+S2-M_SS"
        try:
            s1 = _schur(a, s, ra)
            s2 = _schur(a, s, rb)
        except SingularBlockError:
            items.append(_singular_item(label, form, s))
            continue
        items.append(_matrix_item(label, s1 + s2 - to_float(block(a, s)), form, s))
    return ConditionReport(items, pre, method="chordal")


def tree_edge_order(t: UndirectedGraph, root: int = 1) -> TreeEdgeOrder:
    if not is_tree(t):
        raise NotATreeError("graph is not a tree")
    return TreeEdgeOrder(root, tuple(bfs_tree_edges(t, root)))


def _edge_preconditions(a: np.ndarray, edges) -> list:
    pre = []
    for u, v in edges:
        det = float(a[u - 1, u - 1] * a[v - 1, v - 1] - a[u - 1, v - 1] ** 2)
        pre.append(_scalar_item("edge", det, "det M_uv,uv", [u, v]))
    return pre


def tree_conditions(m, t: UndirectedGraph, root: int = 1) -> ConditionReport:
    """Scalar conditions ``sigma_j + eta_j - M_{p_j p_j} > 0`` along the
    breadth-first edge order, ``j = 2..k``."""
    a = to_float(as_symmetric(m))
    order = tree_edge_order(t, root)
    if len(order.edges) < 2:
        raise TooSmallError("tree conditions need at least 2 edges")
    _check_pattern(a, t)
    _check_diagonal(a)
    items = []
    seen: set = set()
    for j, (p, q) in enumerate(order.edges):
        if j > 0:
            rest = sorted(seen - {p})
            label = f"j={j + 1}"
            form = "sigma_j+eta_j-M_pp"
            try:
                sigma = float(_schur(a, [p], rest)[0, 0])
            except SingularBlockError:
                items.append(_singular_item(label, form, [p, q]))
            else:
                eta = a[p - 1, p - 1] - a[p - 1, q - 1] ** 2 / a[q - 1, q - 1]
                item = _scalar_item(label, sigma + eta - a[p - 1, p - 1], form, [p, q])
                item.extra.update(sigma=sigma, eta=float(eta))
                items.append(item)
        seen |= {p, q}
    return ConditionReport(items, _edge_preconditions(a, order.edges), method="tree")


def _tridiagonal_parts(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    if n > 2 and np.any(np.triu(a, 2) != 0):
        raise NotAPathPatternError("matrix is not tridiagonal in the given vertex order")
    return np.diag(a).copy(), np.diag(a, 1).copy()


def path_sigmas(m) -> np.ndarray:
    """All continued-fraction values ``sigma_n(1..n)`` (NaN after a zero level)."""
    a = to_float(as_symmetric(m))
    diag, off = _tridiagonal_parts(a)
    return _kernels.continued_fraction(diag, off)


def path_sigma(m, k: int) -> float:
    """``sigma_n(k) = alpha_k - a_k**2 / sigma_n(k+1)`` with ``sigma_n(n) = alpha_n``.

    ``k`` is 1-based. Returns NaN when some deeper level is zero.
    """
    sig = path_sigmas(m)
    if not 1 <= k <= sig.shape[0]:
        raise PdThreshError(f"k must lie in 1..{sig.shape[0]}")
    return float(sig[k - 1])


def path_conditions(m) -> ConditionReport:
    """``sigma_n(k) > 0`` for ``k = 1..n-2`` on a tridiagonal matrix in path order."""
    a = to_float(as_symmetric(m))
    n = a.shape[0]
    if n < 3:
        raise TooSmallError("path conditions need n >= 3")
    diag, off = _tridiagonal_parts(a)
    _check_diagonal(a)
    sig = _kernels.continued_fraction(diag, off)
    items = []
    for k in range(1, n - 1):
        label = f"k={k}"
        form = "sigma_n(k)"
        if np.isnan(sig[k - 1]):
            items.append(_singular_item(label, form, [k]))
            continue
        item = _scalar_item(label, sig[k - 1], form, [k])
        # equivalent form: sigma_n(k+1) - a_k^2 / alpha_k
        item.extra["sigma_next"] = float(sig[k])
        item.extra["equivalent_margin"] = float(sig[k] - off[k - 1] ** 2 / diag[k - 1])
        items.append(item)
    pre = _edge_preconditions(a, [(k, k + 1) for k in range(1, n)])
    return ConditionReport(items, pre, method="path")


def relabel_path(m, g: Optional[UndirectedGraph] = None) -> tuple[np.ndarray, list]:
    """Permute a matrix whose pattern is a path (in any vertex order) into path order.

    Returns the permuted matrix and the original labels in path order.
    """
    a = as_symmetric(m)
    g = zero_pattern_graph(a) if g is None else g
    order = path_order(g)
    if order is None:
        raise NotAPathPatternError("pattern is not a path")
    idx = [v - 1 for v in order]
    return a[np.ix_(idx, idx)], order


def _relabel_item(it: ConditionItem, labels: list, prefix: str) -> ConditionItem:
    if it.vertices is not None:
        it.vertices = [labels[v - 1] for v in it.vertices]
    if prefix:
        it.label = f"{prefix} {it.label}"
    return it


def _choose_method(g: UndirectedGraph) -> str:
    if g.n >= 3 and path_order(g) is not None:
        return "path"
    if is_tree(g) and len(g.edges) >= 2:
        return "tree"
    return "chordal"


def analyze(m, g: Optional[UndirectedGraph] = None, method: str = "auto", root: int = 1) -> ConditionReport:
    """Run the matching analyzer on each connected component of the pattern.

    ``method='auto'`` tries path, then tree, then chordal. The pattern defaults
    to the exact zero pattern of ``m``.
    """
    a = as_symmetric(m)
    g = zero_pattern_graph(a) if g is None else g
    _check_pattern(a, g)
    _check_diagonal(a)
    comps = connected_components(g)
    report = ConditionReport([], method=method)
    if len(comps) > 1:
        report.notes.append(f"pattern has {len(comps)} components; analyzed separately")
    methods = set()
    for comp in comps:
        labels = sorted(comp)
        prefix = f"[component {labels[0]}]" if len(comps) > 1 else ""
        if len(labels) == 1:
            v = labels[0]
            report.preconditions.append(
                _scalar_item(f"{prefix} vertex".strip(), to_float(a)[v - 1, v - 1], "M_vv", [v])
            )
            continue
        sub_g, _ = induced_subgraph(g, labels)
        sub_a = block(a, labels)
        meth = _choose_method(sub_g) if method == "auto" else method
        methods.add(meth)
        if meth == "path":
            if sub_g.n < 3:
                raise TooSmallError("path method needs at least 3 vertices per component")
            sub_a, order = relabel_path(sub_a, sub_g)
            labels = [labels[v - 1] for v in order]
            sub = path_conditions(sub_a)
        elif meth == "tree":
            if not is_tree(sub_g):
                raise NotATreeError("pattern is not a tree")
            local_root = labels.index(root) + 1 if root in labels else 1
            sub = tree_conditions(sub_a, sub_g, local_root)
        elif meth == "chordal":
            if not is_chordal(sub_g):
                raise NotChordalError("pattern is not chordal")
            sub = chordal_conditions(sub_a, sub_g)
        else:
            raise PdThreshError(f"unknown method {meth!r}")
        report.items.extend(_relabel_item(it, labels, prefix) for it in sub.items)
        report.preconditions.extend(_relabel_item(it, labels, prefix) for it in sub.preconditions)
    if method == "auto":
        report.method = "+".join(sorted(methods)) if methods else "diagonal"
    return report
