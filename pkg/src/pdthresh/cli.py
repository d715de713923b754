"""``pdthresh`` command-line interface.

Exit codes: 0 PD / guaranteed / success, 2 not PD / not guaranteed,
3 indeterminate, 64 usage or parse error, 65 pattern not chordal,
70 a constructed witness failed self-verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .certificates import (
    certify_all_subgraph_preservation,
    certify_level_preservation,
    certify_subgraph_preservation,
    certify_universal_preservation,
)
from .counterexamples import (
    construct_cycle_counterexample,
    construct_level_counterexample,
    embed_counterexample,
    non_dd_properties,
    non_dd_witness,
)
from .decomposable import INDETERMINATE, NOT_PD, PD, analyze
from .errors import NotChordalError, PdThreshError
from .io import read_graph, read_matrix, write_dense, write_graph
from .matrix import (
    default_tol,
    is_positive_definite,
    is_strictly_diagonally_dominant,
    min_eigenvalue,
)
from .thresholding import level_graph, threshold_at_level, threshold_by_graph

EXIT_OK = 0
EXIT_NOT_PD = 2
EXIT_INDETERMINATE = 3
EXIT_USAGE = 64
EXIT_NOT_CHORDAL = 65
EXIT_SELFCHECK = 70

_PD_REPORT_SCHEMA = {
    "type": "object",
    "required": ["verdict", "mode", "min_pivot", "min_eigenvalue", "strictly_dd"],
    "properties": {
        "verdict": {"enum": ["PD", "NOT PD", "INDETERMINATE"]},
        "mode": {"enum": ["float-pivot", "exact-rational"]},
        "min_pivot": {"type": "number"},
        "min_eigenvalue": {"type": "number"},
        "failing_minor_order": {"type": ["integer", "null"]},
        "strictly_dd": {"type": "boolean"},
    },
}

CHECK_SCHEMA = {
    "type": "object",
    "required": ["A", "A_G", "exit_code"],
    "properties": {"A": _PD_REPORT_SCHEMA, "A_G": _PD_REPORT_SCHEMA, "exit_code": {"type": "integer"}},
}

CERTIFY_SCHEMA = {
    "type": "object",
    "required": ["verdict", "theorem", "structure", "witness_path"],
    "properties": {
        "verdict": {"enum": ["GuaranteedForAll", "NotGuaranteed"]},
        "theorem": {"type": "string"},
        "structure": {
            "type": ["array", "null"],
            "items": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        },
        "witness_path": {"type": ["string", "null"]},
        "thresholding_graph_path": {"type": ["string", "null"]},
        "witness_pd": {"type": "boolean"},
        "thresholded_pd": {"type": "boolean"},
        "level": {"type": "number"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

_ITEM_SCHEMA = {
    "type": "object",
    "required": ["label", "kind", "margin", "verdict"],
    "properties": {
        "label": {"type": "string"},
        "kind": {"enum": ["scalar", "matrix"]},
        "value": {"type": ["number", "null"]},
        "min_eigenvalue": {"type": ["number", "null"]},
        "margin": {"type": ["number", "null"]},
        "verdict": {"enum": ["pass", "fail", "indeterminate"]},
        "vertices": {"type": "array", "items": {"type": "integer"}},
    },
}

ANALYZE_SCHEMA = {
    "type": "object",
    "required": ["method", "overall", "items", "preconditions"],
    "properties": {
        "method": {"type": "string"},
        "overall": {"enum": [PD, NOT_PD, INDETERMINATE]},
        "items": {"type": "array", "items": _ITEM_SCHEMA},
        "preconditions": {"type": "array", "items": _ITEM_SCHEMA},
    },
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> float:
    val = float(text)
    if not np.isfinite(val) or val <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return val


def _nonneg(text: str) -> float:
    val = float(text)
    if not np.isfinite(val) or val < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return val


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pdthresh", description="Positive definiteness under hard-thresholding.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="PD status of a matrix and its threshold by a graph")
    c.add_argument("--matrix", required=True)
    c.add_argument("--graph", required=True)
    c.add_argument("--tol", type=_nonneg, default=None)
    c.add_argument("--exact", action="store_true", help="force exact rational arithmetic")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("certify", help="decide whether a pattern preserves PD for a matrix class")
    c.add_argument("--graph", required=True)
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--subgraph")
    grp.add_argument("--level", type=_positive)
    grp.add_argument("--all-subgraphs", action="store_true")
    c.add_argument("--witness-out", help="witness path (default: beside the graph file)")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("analyze", help="Schur-complement conditions for chordal/tree/path patterns")
    c.add_argument("--matrix", required=True)
    c.add_argument("--graph")
    c.add_argument("--method", choices=["auto", "chordal", "tree", "path"], default="auto")
    c.add_argument("--root", type=int, default=1)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("counterexample", help="write a witness matrix")
    c.add_argument("--cycle", type=int)
    c.add_argument("--level", type=_positive)
    c.add_argument("--graph")
    c.add_argument("--subgraph")
    c.add_argument("--non-dd", action="store_true")
    c.add_argument("--out", required=True)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("threshold", help="threshold a matrix by a graph or a level")
    c.add_argument("--matrix", required=True)
    grp = c.add_mutually_exclusive_group(required=True)
    grp.add_argument("--graph")
    grp.add_argument("--level", type=_nonneg)
    c.add_argument("--out", required=True)
    return p


def _pd_exit(report) -> int:
    if report.indeterminate:
        return EXIT_INDETERMINATE
    return EXIT_OK if report.is_pd else EXIT_NOT_PD


def _pd_dict(m, report) -> dict:
    return {
        "verdict": report.verdict,
        "mode": report.mode,
        "min_pivot": float(report.min_pivot_or_eigenvalue),
        "min_eigenvalue": min_eigenvalue(m),
        "failing_minor_order": report.failing_minor_order,
        "strictly_dd": bool(is_strictly_diagonally_dominant(m)),
    }


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def cmd_check(args) -> int:
    m = read_matrix(args.matrix)
    g = read_graph(args.graph)
    mg = threshold_by_graph(m, g)
    exact = True if args.exact else None
    rep_a = is_positive_definite(m, tol=args.tol, exact=exact)
    rep_g = is_positive_definite(mg, tol=args.tol, exact=exact)
    code = _pd_exit(rep_g)
    da, dg = _pd_dict(m, rep_a), _pd_dict(mg, rep_g)
    text = "\n".join([
        f"A: {rep_a.verdict}; A_G: {rep_g.verdict}",
        f"  mode: {rep_a.mode}",
        f"  min eigenvalue A:   {da['min_eigenvalue']:.17g}",
        f"  min eigenvalue A_G: {dg['min_eigenvalue']:.17g}",
        f"  strictly diagonally dominant: A={da['strictly_dd']} A_G={dg['strictly_dd']}",
    ])
    _emit(args, {"A": da, "A_G": dg, "exit_code": code}, text)
    return code


def _default_witness_path(graph_path: str) -> Path:
    p = Path(graph_path)
    return p.with_name(p.stem + ".witness.txt")


def cmd_certify(args) -> int:
    g = read_graph(args.graph)
    if args.subgraph:
        cert = certify_subgraph_preservation(g, read_graph(args.subgraph))
    elif args.level is not None:
        cert = certify_level_preservation(g, args.level)
    elif args.all_subgraphs:
        cert = certify_all_subgraph_preservation(g)
    else:
        cert = certify_universal_preservation(g)
    witness_path = pattern_path = None
    if cert.witness is not None:
        wp = Path(args.witness_out) if args.witness_out else _default_witness_path(args.graph)
        pattern = cert.thresholded_by
        if pattern is None:
            pattern = level_graph(cert.witness, cert.level)
        pp = wp.with_name(wp.stem + ".pattern.txt")
        write_dense(wp, cert.witness, [f"theorem = {cert.theorem}", f"pattern = {pp.name}"])
        write_graph(pp, pattern, ["thresholding pattern that breaks the witness"])
        witness_path, pattern_path = str(wp), str(pp)
    payload = cert.to_dict(witness_path)
    payload["thresholding_graph_path"] = pattern_path
    lines = [f"{cert.verdict} ({cert.theorem})"]
    if cert.structure is not None:
        lines.append("  components: " + " | ".join(" ".join(map(str, c)) for c in cert.structure))
    if cert.witness is not None:
        lines.append(f"  witness PD: {cert.witness_report.verdict}; thresholded: {cert.thresholded_report.verdict}"
                     f" ({cert.witness_report.mode})")
        lines.append(f"  witness written to {witness_path}; pattern to {pattern_path}")
    lines.extend(f"  note: {n}" for n in cert.notes)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if cert.guaranteed else EXIT_NOT_PD


def cmd_analyze(args) -> int:
    m = read_matrix(args.matrix)
    g = read_graph(args.graph) if args.graph else None
    try:
        rep = analyze(m, g, method=args.method, root=args.root)
    except NotChordalError as exc:
        print(f"pdthresh: {exc}", file=sys.stderr)
        return EXIT_NOT_CHORDAL
    lines = [f"method: {rep.method}"]
    for it in rep.preconditions:
        lines.append(f"  pre  {it.label:<14} {it.vertices!s:<14} margin={it.margin:.12g} [{it.verdict}]")
    for it in rep.items:
        extra = "".join(f" {k}={v:.12g}" for k, v in it.extra.items() if isinstance(v, float))
        lines.append(f"  cond {it.label:<14} {it.threshold_form:<20} margin={it.margin:.12g}{extra} [{it.verdict}]")
    if not rep.items:
        lines.append("  (no conditions)")
    lines.extend(f"  note: {n}" for n in rep.notes)
    lines.append(f"overall: {rep.overall}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return {PD: EXIT_OK, NOT_PD: EXIT_NOT_PD}.get(rep.overall, EXIT_INDETERMINATE)


def _counterexample(args):
    """Build the requested witness; returns (matrix, header, ok, summary)."""
    if args.cycle is not None:
        if args.graph or args.subgraph or args.non_dd:
            raise PdThreshError("--cycle cannot be combined with --graph/--subgraph/--non-dd")
        n = args.cycle
        _, params = construct_cycle_counterexample(n)
        if args.level is not None:
            w = construct_level_counterexample(n, args.level)
            after = threshold_at_level(w, args.level)
            header = params.header() + [f"level = {args.level!r}", f"scale = {args.level / abs(params.a)!r}"]
        else:
            w = construct_cycle_counterexample(n)[0]
            after = w.copy()
            after[0, n - 1] = after[n - 1, 0] = 0.0
            header = params.header()
        ok = is_positive_definite(w, exact=True).is_pd and not is_positive_definite(after, exact=True).is_pd
        return w, header, ok, {"a": params.a, "b": params.b, "epsilon": params.epsilon}
    if args.level is not None:
        raise PdThreshError("--level requires --cycle")
    if args.non_dd:
        if not args.graph or args.subgraph:
            raise PdThreshError("--non-dd needs --graph and no --subgraph")
        g = read_graph(args.graph)
        w = non_dd_witness(g)
        props = non_dd_properties(w, g)
        return w, ["non diagonally dominant witness"], all(props.values()), props
    if args.graph and args.subgraph:
        g, h = read_graph(args.graph), read_graph(args.subgraph)
        w = embed_counterexample(g, h)
        ok = is_positive_definite(w, exact=True).is_pd and not is_positive_definite(
            threshold_by_graph(w, h), exact=True).is_pd
        return w, ["embedded broken-cycle witness"], ok, {}
    raise PdThreshError("choose one of --cycle N, --graph G --subgraph H, --non-dd --graph G")


def cmd_counterexample(args) -> int:
    w, header, ok, summary = _counterexample(args)
    write_dense(args.out, w, header)
    summary = {k: (bool(v) if isinstance(v, (bool, np.bool_)) else v) for k, v in summary.items()}
    payload = {"out": str(args.out), "verified": bool(ok), **summary}
    text = f"wrote {args.out}; self-check {'passed' if ok else 'FAILED'}"
    if summary:
        text += "\n" + "\n".join(f"  {k} = {v}" for k, v in summary.items())
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_SELFCHECK


def cmd_threshold(args) -> int:
    m = read_matrix(args.matrix)
    if args.graph:
        out = threshold_by_graph(m, read_graph(args.graph))
    else:
        out = threshold_at_level(m, args.level)
    write_dense(args.out, out)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "certify": cmd_certify,
    "analyze": cmd_analyze,
    "counterexample": cmd_counterexample,
    "threshold": cmd_threshold,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        default_tol()
        return COMMANDS[args.command](args)
    except (OSError, PdThreshError, ValueError) as exc:
        print(f"pdthresh: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
