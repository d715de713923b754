"""Dense symmetric matrices: positive definiteness (float pivots or exact
fraction-free minors), eigenvalues, Schur complements, diagonal dominance,
Gershgorin discs and determinants.

Matrices are plain numpy arrays. Float, integer and object arrays of
``Fraction``/``int`` are accepted; the latter two are exact rationals and
switch the PD test and the determinant to exact arithmetic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Optional, Union

import numpy as np

from . import _kernels
from .errors import MatrixFormatError, NonFiniteError, SingularBlockError

DEFAULT_TOL = 1e-10
EXACT_MAX_N = 64


def default_tol() -> float:
    """Default PD tolerance, overridable through ``PDTHRESH_TOL``."""
    env = os.environ.get("PDTHRESH_TOL")
    if env:
        tol = float(env)
        if not np.isfinite(tol) or tol < 0:
            raise ValueError(f"PDTHRESH_TOL must be a finite value >= 0, got {env!r}")
        return tol
    return DEFAULT_TOL


def is_exact_rational(m: np.ndarray) -> bool:
    """True for integer arrays and object arrays holding only ints/Fractions."""
    m = np.asarray(m)
    if m.dtype.kind in "iub":
        return True
    if m.dtype == object:
        return all(isinstance(x, Rational) for x in m.flat)
    return False


def as_symmetric(m) -> np.ndarray:
    """Validate a square finite matrix and symmetrize it from its upper triangle."""
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise MatrixFormatError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if arr.dtype == object:
        if not is_exact_rational(arr):
            arr = arr.astype(float)
    elif arr.dtype.kind not in "iub":
        arr = arr.astype(float)
    if arr.dtype.kind == "f" and not np.all(np.isfinite(arr)):
        raise NonFiniteError("matrix has non-finite entries")
    upper = np.triu(arr)
    out = upper + np.triu(arr, 1).T
    if arr.dtype == object:
        out = out.astype(object)
    return out


def to_float(m) -> np.ndarray:
    arr = np.asarray(m)
    return arr.astype(float) if arr.dtype != float else arr


def _fraction_rows(m: np.ndarray) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in np.asarray(m).tolist()]


def _integer_rows(m: np.ndarray) -> tuple[list[list[int]], int]:
    """Scale a rational matrix to integers by the lcm of its denominators.

    Returns the integer rows and the scale factor; leading minors scale by
    positive powers of it, so their signs are preserved.
    """
    rows = _fraction_rows(m)
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, x.denominator)
    return [[x.numerator * (den // x.denominator) for x in row] for row in rows], den


def _bareiss_leading_minors(rows: list[list[int]]) -> list[int]:
    """Leading principal minors by fraction-free elimination without pivoting.

    Stops after the first non-positive minor (further minors would need a
    division by it).
    """
    a = [list(r) for r in rows]
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv <= 0:
            break
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return minors


def _bareiss_det(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def leading_minors(m) -> list[Fraction]:
    """Exact leading principal minors of a rational matrix (up to the first non-positive)."""
    ints, den = _integer_rows(m)
    return [Fraction(d, den ** (k + 1)) for k, d in enumerate(_bareiss_leading_minors(ints))]


@dataclass(frozen=True)
class PdReport:
    is_pd: bool
    mode: str  # "float-pivot" | "exact-rational"
    min_pivot_or_eigenvalue: Union[float, Fraction]
    failing_minor_order: Optional[int] = None
    indeterminate: bool = False

    def __bool__(self):
        return self.is_pd

    @property
    def verdict(self) -> str:
        if self.indeterminate:
            return "INDETERMINATE"
        return "PD" if self.is_pd else "NOT PD"


def is_positive_definite(m, tol: Optional[float] = None, exact: Optional[bool] = None) -> PdReport:
    """Positive definiteness test.

    Float mode runs an unpivoted LDL^T scan and requires every pivot to exceed
    ``tol * max(1, max diagonal)``; a pivot inside the band ``[-thr, thr]`` is
    reported as indeterminate. Exact mode checks that all leading principal
    minors are positive by fraction-free elimination. ``exact=None`` picks exact
    mode for rational input of size at most 64; ``exact=True`` also converts
    float entries to their exact binary rationals.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    if exact is None:
        exact = is_exact_rational(a) and n <= EXACT_MAX_N
    if exact:
        minors = leading_minors(a)
        pivots = [minors[0]] + [minors[k] / minors[k - 1] for k in range(1, len(minors))]
        ok = len(minors) == n and minors[-1] > 0
        return PdReport(
            is_pd=ok,
            mode="exact-rational",
            min_pivot_or_eigenvalue=min(pivots),
            failing_minor_order=None if ok else len(minors),
        )
    tol = default_tol() if tol is None else float(tol)
    if tol < 0:
        raise ValueError("tol must be >= 0")
    af = to_float(a)
    thr = tol * max(1.0, float(np.max(np.diag(af))))
    status, k, minpiv = _kernels.ldl_scan(af, thr)
    if status == _kernels.PD:
        return PdReport(True, "float-pivot", minpiv)
    return PdReport(
        is_pd=False,
        mode="float-pivot",
        min_pivot_or_eigenvalue=minpiv,
        failing_minor_order=k + 1,
        indeterminate=status == _kernels.BOUNDARY,
    )


def eigenvalues(m) -> np.ndarray:
    return np.linalg.eigvalsh(to_float(as_symmetric(m)))


def min_eigenvalue(m) -> float:
    return float(eigenvalues(m)[0])


def _indices(n: int, vertices: Iterable[int]) -> list[int]:
    idx = sorted({int(v) - 1 for v in vertices})
    for i in idx:
        if not 0 <= i < n:
            raise MatrixFormatError(f"vertex {i + 1} out of range 1..{n}")
    return idx


def block(m, rows: Iterable[int], cols: Optional[Iterable[int]] = None) -> np.ndarray:
    """Sub-block on 1-based vertex sets, each taken in ascending order."""
    m = np.asarray(m)
    r = _indices(m.shape[0], rows)
    c = r if cols is None else _indices(m.shape[0], cols)
    return m[np.ix_(r, c)]


_COND_LIMIT = 1e14


def schur_reduce(m_tt: np.ndarray, m_ts: np.ndarray, m_ss: np.ndarray) -> np.ndarray:
    """``m_tt - m_ts @ inv(m_ss) @ m_ts.T`` with a singularity check on ``m_ss``."""
    m_tt = to_float(m_tt)
    if m_ss.size == 0:
        return m_tt.copy()
    m_ss = to_float(m_ss)
    m_ts = to_float(m_ts)
    if np.linalg.cond(m_ss) > _COND_LIMIT:
        raise SingularBlockError("eliminated block is singular to working precision")
    try:
        x = np.linalg.solve(m_ss, m_ts.T)
    except np.linalg.LinAlgError as exc:
        raise SingularBlockError(str(exc)) from exc
    s = m_tt - m_ts @ x
    return (s + s.T) / 2


def schur_complement(m, keep: Iterable[int]) -> np.ndarray:
    """Schur complement onto the 1-based vertex set ``keep``.

    Returns ``M_kk - M_kr M_rr^{-1} M_rk`` where ``r`` is the rest.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    k = _indices(n, keep)
    if not k:
        raise MatrixFormatError("keep must be non-empty")
    r = [i for i in range(n) if i not in set(k)]
    return schur_reduce(a[np.ix_(k, k)], a[np.ix_(k, r)], a[np.ix_(r, r)])


@dataclass(frozen=True)
class DominanceReport:
    is_dd: bool
    margins: np.ndarray

    def __bool__(self):
        return self.is_dd


def is_strictly_diagonally_dominant(m) -> DominanceReport:
    """Row test ``|a_ii| > sum_{j != i} |a_ij|``; margins are the differences."""
    a = np.abs(to_float(as_symmetric(m)))
    diag = np.diag(a)
    margins = diag - (a.sum(axis=1) - diag)
    return DominanceReport(bool(np.all(margins > 0)), margins)


def gershgorin_discs(m) -> list[tuple[float, float]]:
    a = to_float(as_symmetric(m))
    radii = np.abs(a).sum(axis=1) - np.abs(np.diag(a))
    return [(float(c), float(r)) for c, r in zip(np.diag(a), radii)]


def determinant(m, exact: Optional[bool] = None):
    """Determinant; a ``Fraction`` for rational input via fraction-free elimination."""
    a = as_symmetric(m)
    if exact is None:
        exact = is_exact_rational(a)
    if exact:
        ints, den = _integer_rows(a)
        return Fraction(_bareiss_det(ints), den ** len(ints))
    return float(np.linalg.det(to_float(a)))
