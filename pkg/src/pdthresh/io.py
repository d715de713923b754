"""Readers and writers for the text file formats.

Dense matrix: optional ``#`` comment lines, then ``n``, then ``n`` rows of
``n`` whitespace-separated values. Entries may be integers, decimals or
fractions such as ``3/4``; all-integer or fractional files load as exact
rationals. Writers emit floats with 17 significant digits so values
round-trip exactly.

Matrix Market: ``coordinate real symmetric`` (``integer`` also read),
lower triangle stored, 1-based.

Graph edge list: optional ``#`` comments, ``n <count>``, then one ``u v``
line per edge with ``1 <= u < v <= n``; duplicates are rejected.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .errors import GraphFormatError, MatrixFormatError
from .graph import UndirectedGraph
from .matrix import as_symmetric

PathLike = Union[str, Path]


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _parse_entry(tok: str):
    try:
        if "/" in tok:
            return Fraction(tok)
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        raise MatrixFormatError(f"cannot parse matrix entry {tok!r}") from None


def _to_array(rows: list[list]) -> np.ndarray:
    flat = [x for r in rows for x in r]
    if all(isinstance(x, int) for x in flat):
        return np.array(rows, dtype=np.int64) if all(abs(x) < 2**62 for x in flat) else np.array(rows, dtype=object)
    if any(isinstance(x, float) for x in flat):
        return np.array([[float(x) for x in r] for r in rows])
    return np.array(rows, dtype=object)


def parse_dense(text: str) -> np.ndarray:
    lines = _content_lines(text)
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise MatrixFormatError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise MatrixFormatError("dimension must be >= 1")
    rows = [[_parse_entry(t) for t in ln.split()] for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MatrixFormatError(f"expected {n} rows of {n} entries")
    return as_symmetric(_to_array(rows))


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x)
    return f"{float(x):.17g}"


def format_dense(m, header: Iterable[str] = ()) -> str:
    a = as_symmetric(m)
    out = [f"# {h}" for h in header]
    out.append(str(a.shape[0]))
    out.extend(" ".join(_fmt(x) for x in row) for row in a.tolist())
    return "\n".join(out) + "\n"


def read_dense(path: PathLike) -> np.ndarray:
    return parse_dense(Path(path).read_text())


def write_dense(path: PathLike, m, header: Iterable[str] = ()) -> None:
    Path(path).write_text(format_dense(m, header))


def parse_matrix_market(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise MatrixFormatError("missing %%MatrixMarket banner")
    banner = lines[0].lower().split()
    if len(banner) != 5 or banner[1:3] != ["matrix", "coordinate"]:
        raise MatrixFormatError("only 'matrix coordinate' Matrix Market files are supported")
    field, symmetry = banner[3], banner[4]
    if field not in ("real", "integer") or symmetry not in ("symmetric", "general"):
        raise MatrixFormatError(f"unsupported Matrix Market type {field} {symmetry}")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.startswith("%")]
    try:
        nr, nc, nnz = (int(t) for t in body[0].split())
    except (IndexError, ValueError):
        raise MatrixFormatError("bad Matrix Market size line") from None
    if nr != nc:
        raise MatrixFormatError("matrix must be square")
    if len(body) - 1 != nnz:
        raise MatrixFormatError(f"expected {nnz} entries, found {len(body) - 1}")
    a = np.zeros((nr, nr), dtype=np.int64 if field == "integer" else float)
    for ln in body[1:]:
        i, j, v = ln.split()
        i, j = int(i) - 1, int(j) - 1
        val = int(v) if field == "integer" else float(v)
        a[i, j] = val
        if symmetry == "symmetric":
            a[j, i] = val
    if symmetry == "general" and not np.array_equal(a, a.T):
        raise MatrixFormatError("general Matrix Market matrix is not symmetric")
    return as_symmetric(a)


def format_matrix_market(m, comment: Optional[str] = None) -> str:
    a = as_symmetric(m)
    n = a.shape[0]
    integer = a.dtype.kind in "iu"
    af = a if integer else a.astype(float)
    entries = [(i, j, af[i, j]) for j in range(n) for i in range(j, n) if af[i, j] != 0]
    out = [f"%%MatrixMarket matrix coordinate {'integer' if integer else 'real'} symmetric"]
    if comment:
        out.extend(f"% {c}" for c in comment.splitlines())
    out.append(f"{n} {n} {len(entries)}")
    out.extend(f"{i + 1} {j + 1} {_fmt(v)}" for i, j, v in entries)
    return "\n".join(out) + "\n"


def read_matrix_market(path: PathLike) -> np.ndarray:
    return parse_matrix_market(Path(path).read_text())


def write_matrix_market(path: PathLike, m, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_matrix_market(m, comment))


def read_matrix(path: PathLike) -> np.ndarray:
    """Read either format, sniffing the Matrix Market banner."""
    text = Path(path).read_text()
    if text.lstrip().lower().startswith("%%matrixmarket"):
        return parse_matrix_market(text)
    return parse_dense(text)


def parse_graph(text: str) -> UndirectedGraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise GraphFormatError(f"first line must be 'n <vertex-count>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise GraphFormatError(f"bad vertex count {head[1]!r}") from None
    seen = set()
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError(f"bad edge line {ln!r}") from None
        if not 1 <= u < v <= n:
            raise GraphFormatError(f"edge ({u}, {v}) must satisfy 1 <= u < v <= {n}")
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    try:
        return UndirectedGraph(n, frozenset(seen))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_graph(g: UndirectedGraph, header: Iterable[str] = ()) -> str:
    out = [f"# {h}" for h in header]
    out.append(f"n {g.n}")
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def read_graph(path: PathLike) -> UndirectedGraph:
    return parse_graph(Path(path).read_text())


def write_graph(path: PathLike, g: UndirectedGraph, header: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, header))
