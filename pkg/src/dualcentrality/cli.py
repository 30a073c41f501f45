"""Command-line front end.

Exit codes: 0 ok, 2 bad input (parse error, unknown instance, missing file),
3 hypergraph not connected, 4 power iteration did not converge, 5 perturbation
does not fit the hypergraph, 6 verification failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .centrality import (
    RANK_TIE_TOL,
    builtin_instance,
    dual_centrality,
    instance_names,
    rank_vertices,
    table_match,
)
from .dualeig import DualEigenPair, build_m_symmetric, verify_dual_eigenpair
from .errors import (
    DualCentralityError,
    Inconsistent,
    InvalidPerturbation,
    NoConvergence,
    NotIrreducible,
    ParseError,
    UnknownInstance,
)
from .hypergraph import (
    Perturbation,
    adjacency_tensor,
    format_hypergraph,
    format_perturbation,
    parse_perturbation_edge,
    read_hypergraph,
    read_perturbation,
)
from .msolve import check_invariants, make_mmatrix
from .spectral import SpectralConfig, m_norm, perron_pair

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONNECTED = 3
EXIT_NO_CONVERGENCE = 4
EXIT_INCONSISTENT = 5
EXIT_VERIFY = 6


class VerificationFailed(DualCentralityError):
    def __init__(self, failures: list[str]):
        super().__init__("failed checks: " + ", ".join(failures))
        self.failures = failures


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (ParseError, UnknownInstance, OSError)):
        return EXIT_INPUT
    if isinstance(exc, NotIrreducible):
        return EXIT_NOT_CONNECTED
    if isinstance(exc, NoConvergence):
        return EXIT_NO_CONVERGENCE
    if isinstance(exc, (InvalidPerturbation, Inconsistent)):
        return EXIT_INCONSISTENT
    if isinstance(exc, VerificationFailed):
        return EXIT_VERIFY
    return 1


# ---------------------------------------------------------------- formatting

def _num(v: float, precision: int) -> str:
    s = f"{v:.{precision}f}"
    # avoid printing "-0.0000"
    if float(s) == 0.0:
        s = s.lstrip("-")
    return s


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _floats(a) -> list[float]:
    return [float(v) for v in a]


def _table_rows(labels, rows, precision):
    cells = [["Vertices"] + [str(v) for v in labels]]
    for name, values in rows:
        cells.append([name] + [_num(v, precision) for v in values])
    widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
    return ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in cells]


# ------------------------------------------------------------------- inputs

def _load_graph(args):
    if args.instance:
        H, perts = builtin_instance(args.instance)
        return H, perts
    if not args.input:
        raise ParseError("one of --input or --instance is required")
    return read_hypergraph(args.input, n=getattr(args, "n", None)), []


def _load_perturbation(args, builtin) -> tuple[Perturbation, int | None]:
    """Perturbation to apply and, for built-in cases, its 0-based case index."""
    parts = []
    for path in args.perturb or []:
        parts.append(read_perturbation(path))
    for spec in args.perturb_edge or []:
        parts.append(parse_perturbation_edge(spec))
    if parts:
        return Perturbation.combine(parts), None
    if builtin:
        case = args.case or 1
        if not 1 <= case <= len(builtin):
            raise ParseError(f"--case must be in 1..{len(builtin)} for {args.instance}")
        return builtin[case - 1], case - 1
    return Perturbation(), None


def _config(args) -> SpectralConfig:
    try:
        return SpectralConfig(tol=args.tol, max_iter=args.max_iter, shift=args.shift)
    except ValueError as exc:
        raise ParseError(str(exc))


# ----------------------------------------------------------------- commands

def cmd_spectral(args, out) -> int:
    H, _ = _load_graph(args)
    if not H.is_connected():
        raise NotIrreducible("hypergraph is not connected")
    T = adjacency_tensor(H)
    pair = perron_pair(T, _config(args))
    residual = pair.residual(T)
    p = args.precision
    if args.format == "json":
        out.write(_dump_json({
            "n": H.n, "m": H.m,
            "lambda_s": pair.lambda_s,
            "x_s": _floats(pair.x_s),
            "iterations": pair.iterations,
            "gap": pair.gap,
            "residual": residual,
        }))
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["vertex", "x_s"])
        for v, x in enumerate(pair.x_s, start=1):
            w.writerow([v, _num(x, p)])
    else:
        out.write(f"lambda_s = {_num(pair.lambda_s, p)}\n")
        out.write("\n".join(_table_rows(range(1, H.n + 1), [("x_s", pair.x_s)], p)) + "\n")
        out.write(f"iterations = {pair.iterations}, gap = {pair.gap:.3e}, residual = {residual:.3e}\n")
    return EXIT_OK


def _run_centrality(args):
    H, builtin = _load_graph(args)
    P, case = _load_perturbation(args, builtin)
    result = dual_centrality(H, P, _config(args), verify_tol=args.verify_tol)
    match = table_match(result, args.instance, case, args.tie_tol) if case is not None else None
    return H, result, match


def _centrality_json(result, ranking, match) -> dict:
    obj = {
        "n": result.n,
        "m": result.m,
        "lambda_s": result.lambda_s,
        "lambda_d": result.lambda_d,
        "x_s": _floats(result.x_s),
        "x_d": _floats(result.x_d),
        "ranking": ranking.as_lists(),
        "residual_standard": result.residual.residual_standard,
        "residual_dual": result.residual.residual_dual,
    }
    if match is not None:
        obj["table_match"] = match
    return obj


def cmd_centrality(args, out) -> int:
    H, result, match = _run_centrality(args)
    ranking = rank_vertices(result, args.tie_tol)
    p = args.precision
    if args.format == "json":
        out.write(_dump_json(_centrality_json(result, ranking, match)))
    elif args.format == "csv":
        group_of = {v: k for k, g in enumerate(ranking.groups, start=1) for v in g}
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["vertex", "x_s", "x_d", "rank_group"])
        for v in range(1, H.n + 1):
            w.writerow([v, _num(result.x_s[v - 1], p), _num(result.x_d[v - 1], p), group_of[v]])
    else:
        rep = result.residual
        lines = [
            f"lambda_s = {_num(result.lambda_s, p)}",
            f"lambda_d = {_num(result.lambda_d, p)}",
            *_table_rows(range(1, H.n + 1), [("x_s", result.x_s), ("x_d", result.x_d)], p),
            f"ranking: {ranking}",
            f"residuals: standard {rep.residual_standard:.3e}, dual {rep.residual_dual:.3e} "
            f"({'pass' if rep.passed else 'FAIL'} at {rep.tol:g})",
        ]
        if match is not None:
            lines.append(
                f"reference {match['reference']}: {match['verdict']} "
                f"(max |err| x_s {match['max_abs_err_x_s']:.1e}, x_d {match['max_abs_err_x_d']:.1e}; "
                f"ranking {'match' if match['ranking'] else 'mismatch'})"
            )
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_rank(args, out) -> int:
    _, result, _ = _run_centrality(args)
    ranking = rank_vertices(result, args.tie_tol)
    if args.format == "json":
        out.write(_dump_json({"ranking": ranking.as_lists()}))
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["vertex", "rank_group"])
        for k, g in enumerate(ranking.groups, start=1):
            for v in g:
                w.writerow([v, k])
    else:
        out.write(f"{ranking}\n")
    return EXIT_OK


def _check_pair(H, P, pair: DualEigenPair, tol: float) -> dict[str, bool]:
    A_s = adjacency_tensor(H)
    A_d = P.to_tensor(H.n, H.m)
    checks: dict[str, bool] = {}
    checks["positive"] = pair.is_positive()
    rep = verify_dual_eigenpair(A_s, A_d, pair, tol)
    checks["eigen_equation_standard"] = rep.residual_standard <= tol
    checks["eigen_equation_dual"] = rep.residual_dual <= tol
    checks["normalization"] = abs(m_norm(pair.x_s, H.m) - 1.0) <= 1e-12
    checks["orthogonality"] = abs(float(pair.x_s @ pair.x_d)) <= 1e-10
    if not checks["positive"]:
        checks["mmatrix"] = False
        return checks
    try:
        M = make_mmatrix(build_m_symmetric(H, pair.lambda_s, pair.x_s), pair.x_s, symmetric=True)
    except DualCentralityError:
        checks["mmatrix"] = False
        return checks
    for name, ok in check_invariants(M).items():
        checks[f"mmatrix_{name}"] = ok
    return checks


def _load_result(path) -> DualEigenPair:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        return DualEigenPair(
            float(obj["lambda_s"]),
            float(obj["lambda_d"]),
            np.array(obj["x_s"], dtype=float),
            np.array(obj["x_d"], dtype=float),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: not a centrality result file ({exc})")


def cmd_verify(args, out) -> int:
    H, builtin = _load_graph(args)
    P, _ = _load_perturbation(args, builtin)
    if args.result:
        pair = _load_result(args.result)
        if pair.x_s.shape != (H.n,) or pair.x_d.shape != (H.n,):
            raise ParseError(f"{args.result}: vectors do not have length {H.n}")
        if not H.is_connected():
            raise NotIrreducible("hypergraph is not connected")
        P.check_fits(H)
    else:
        pair = dual_centrality(H, P, _config(args), verify_tol=args.verify_tol).pair
    checks = _check_pair(H, P, pair, args.verify_tol)
    for name, ok in checks.items():
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
    out.write(f"max |x_d| = {float(np.max(np.abs(pair.x_d))):.3e}\n")
    failures = [k for k, ok in checks.items() if not ok]
    if failures:
        raise VerificationFailed(failures)
    return EXIT_OK


def cmd_examples(args, out) -> int:
    names = instance_names() if args.name == "all" else [args.name]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        H, perts = builtin_instance(name)
        path = out_dir / f"{name}.edges"
        path.write_text(format_hypergraph(H, header=name), encoding="utf-8")
        out.write(f"{path}\n")
        for k, P in enumerate(perts, start=1):
            path = out_dir / f"{name}.perturb{k}"
            path.write_text(format_perturbation(P, header=f"{name} case {k}"), encoding="utf-8")
            out.write(f"{path}\n")
    return EXIT_OK


# ------------------------------------------------------------------- parser

def _precision(s: str) -> int:
    v = int(s)
    if not 1 <= v <= 15:
        raise argparse.ArgumentTypeError("precision must be in 1..15")
    return v


def _positive(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualcent",
        description="Dual eigenvector centrality of uniform hypergraphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--input", help="hypergraph edge-list file")
    src.add_argument("--instance", help=f"built-in instance ({', '.join(instance_names())})")
    src.add_argument("--n", type=int, help="vertex count (default: largest vertex id)")
    num = common.add_argument_group("numerics")
    num.add_argument("--tol", type=_positive, default=1e-12)
    num.add_argument("--max-iter", type=int, default=100_000)
    num.add_argument("--shift", type=float, default=1.0)
    fmt = common.add_argument_group("output")
    fmt.add_argument("--format", choices=("text", "json", "csv"), default="text")
    fmt.add_argument("--precision", type=_precision, default=4)

    pert = argparse.ArgumentParser(add_help=False)
    g = pert.add_argument_group("perturbation")
    g.add_argument("--perturb", action="append", metavar="FILE", help="perturbation file (repeatable)")
    g.add_argument(
        "--perturb-edge", action="append", metavar="V1,V2,...[,w=W]",
        help="inline perturbation edge (repeatable; all perturbations are summed)",
    )
    g.add_argument("--case", type=int, help="built-in perturbation number for --instance (default 1)")
    g.add_argument("--tie-tol", type=_positive, default=RANK_TIE_TOL)
    g.add_argument("--verify-tol", type=_positive, default=1e-8)

    p = sub.add_parser("spectral", parents=[common], help="Perron pair of the adjacency tensor")
    p.set_defaults(func=cmd_spectral)
    p = sub.add_parser("centrality", parents=[common, pert], help="dual centrality vector")
    p.set_defaults(func=cmd_centrality)
    p = sub.add_parser("rank", parents=[common, pert], help="ranking with dual tie-breaking")
    p.set_defaults(func=cmd_rank)
    p = sub.add_parser("verify", parents=[common, pert], help="check a result against every invariant")
    p.add_argument("--result", metavar="JSON", help="verify this stored centrality result instead of recomputing")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("examples", help="write built-in instances and perturbations to files")
    p.add_argument("name", help=f"instance name ({', '.join(instance_names())}) or 'all'")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (DualCentralityError, OSError) as exc:
        stdout.write(buf.getvalue())
        stderr.write(f"error: {exc}\n")
        return _exit_code(exc)
    stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
