"""Numeric inner loops with a numba path and a pure-numpy fallback.

The numba path is used when numba imports and ``PDTHRESH_NUMBA`` is not set
to ``0``/``false``/``off``. Both paths implement the same arithmetic, so
results agree to rounding; ``tests/test_kernels.py`` checks that.
"""

import os

import numpy as np

_FLAG = os.environ.get("PDTHRESH_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "off", "no")

# ldl_scan status codes
PD = 0
NOT_PD = 1
BOUNDARY = 2


# --------------------------------------------------------------------------
# scalar-loop versions (compiled by numba)
# --------------------------------------------------------------------------

def _ldl_scan_loops(a, thr):
    n = a.shape[0]
    w = a.copy()
    minpiv = np.inf
    for k in range(n):
        d = w[k, k]
        if d < minpiv:
            minpiv = d
        if d <= thr:
            if d < -thr:
                return NOT_PD, k, minpiv
            return BOUNDARY, k, minpiv
        for i in range(k + 1, n):
            l = w[i, k] / d
            if l == 0.0:
                continue
            for j in range(k + 1, i + 1):
                w[i, j] -= l * w[j, k]
    return PD, n, minpiv


def _continued_fraction_loops(diag, off):
    n = diag.shape[0]
    sigma = np.empty(n)
    sigma[n - 1] = diag[n - 1]
    for k in range(n - 2, -1, -1):
        nxt = sigma[k + 1]
        if nxt == 0.0 or np.isnan(nxt):
            sigma[k] = np.nan
        else:
            sigma[k] = diag[k] - off[k] * off[k] / nxt
    return sigma


def _level_threshold_loops(a, eta):
    n = a.shape[0]
    out = a.copy()
    for i in range(n):
        for j in range(n):
            if i != j and abs(out[i, j]) <= eta:
                out[i, j] = 0.0
    return out


# --------------------------------------------------------------------------
# numpy versions
# --------------------------------------------------------------------------

def _ldl_scan_numpy(a, thr):
    n = a.shape[0]
    w = np.array(a, dtype=float, copy=True)
    minpiv = np.inf
    for k in range(n):
        d = w[k, k]
        minpiv = min(minpiv, d)
        if d <= thr:
            return (NOT_PD if d < -thr else BOUNDARY), k, minpiv
        col = w[k + 1:, k]
        w[k + 1:, k + 1:] -= np.outer(col, col) / d
    return PD, n, minpiv


def _continued_fraction_numpy(diag, off):
    return _batch_continued_fraction_numpy(diag[None, :], off[None, :])[0]


def _batch_continued_fraction_numpy(diags, offs):
    diags = np.asarray(diags, dtype=float)
    offs = np.asarray(offs, dtype=float)
    out = np.empty_like(diags)
    out[:, -1] = diags[:, -1]
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(diags.shape[1] - 2, -1, -1):
            nxt = out[:, k + 1]
            val = diags[:, k] - offs[:, k] ** 2 / nxt
            out[:, k] = np.where((nxt == 0.0) | np.isnan(nxt), np.nan, val)
    return out


def _level_threshold_numpy(a, eta):
    out = np.where(np.abs(a) > eta, a, 0.0)
    np.fill_diagonal(out, np.diag(a))
    return out


if USE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)
    _ldl_scan_impl = _jit(_ldl_scan_loops)
    _continued_fraction_impl = _jit(_continued_fraction_loops)
    _level_threshold_impl = _jit(_level_threshold_loops)

    @_jit
    def _batch_continued_fraction_impl(diags, offs):
        out = np.empty_like(diags)
        for b in range(diags.shape[0]):
            out[b] = _continued_fraction_impl(diags[b], offs[b])
        return out
else:
    _ldl_scan_impl = _ldl_scan_numpy
    _continued_fraction_impl = _continued_fraction_numpy
    _batch_continued_fraction_impl = _batch_continued_fraction_numpy
    _level_threshold_impl = _level_threshold_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def ldl_scan(a: np.ndarray, thr: float):
    """Pivot scan of the unpivoted symmetric LDL^T factorization.

    Returns ``(status, k, min_pivot)``: ``status`` is PD, NOT_PD (pivot below
    ``-thr``) or BOUNDARY (pivot within ``[-thr, thr]``), ``k`` the 0-based
    index where the scan stopped (``n`` on success).
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    status, k, minpiv = _ldl_scan_impl(a, float(thr))
    return int(status), int(k), float(minpiv)


def continued_fraction(diag: np.ndarray, off: np.ndarray) -> np.ndarray:
    """Bottom-up values ``s[k] = diag[k] - off[k]**2 / s[k+1]``, ``s[-1] = diag[-1]``.

    A zero denominator propagates NaN to every earlier level.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off = np.ascontiguousarray(off, dtype=np.float64)
    if diag.shape[0] - 1 != off.shape[0]:
        raise ValueError("off-diagonal length must be len(diag) - 1")
    if off.shape[0] == 0:
        off = np.zeros(1)
    return _continued_fraction_impl(diag, off)


def batch_continued_fraction(diags: np.ndarray, offs: np.ndarray) -> np.ndarray:
    """Row-wise :func:`continued_fraction` over a batch of tridiagonals."""
    diags = np.ascontiguousarray(diags, dtype=np.float64)
    offs = np.ascontiguousarray(offs, dtype=np.float64)
    if offs.shape[1] == 0:
        offs = np.zeros((diags.shape[0], 1))
    return _batch_continued_fraction_impl(diags, offs)


def level_threshold(a: np.ndarray, eta: float) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    return _level_threshold_impl(a, float(eta))


# Exposed for the benchmark and the backend-agreement tests.
NUMPY_IMPLS = {
    "ldl_scan": _ldl_scan_numpy,
    "continued_fraction": _continued_fraction_numpy,
    "batch_continued_fraction": _batch_continued_fraction_numpy,
    "level_threshold": _level_threshold_numpy,
}
