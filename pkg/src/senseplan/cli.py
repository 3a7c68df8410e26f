"""Command-line interface emitting JSON and CSV result files.

Every command requires an explicit --seed; together with the config echo
written into each output, any file can be reproduced bit-exactly.  Worker
count (--threads, or the SENSEPLAN_THREADS environment variable) never
changes output bytes.

Exit codes: 0 success, 1 runtime or numeric failure, 2 argument or
validation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .detection import pd_mc
from .infotheory import mutual_information_vector
from .model import Allocation, ChannelParams
from .spectra import singular_values_formula, singular_values_numeric
from .sweep import line_sweep, param_scan, simplex_sweep

ALLOC_TOL = 1e-9


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    try:
        a, b, c = (float(x) for x in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return a, b, c


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    try:
        lo, hi = (float(x) for x in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return lo, hi


def _fmt(x) -> str:
    return repr(float(x))


def _resolve_threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    else:
        n = int(os.environ.get("SENSEPLAN_THREADS", "1"))
    if n < 1:
        raise ValueError(f"threads must be >= 1, got {n}")
    return n


def _point_setup(args) -> tuple[ChannelParams, Allocation]:
    t1, t2, t3 = args.alloc
    total = t1 + t2 + t3
    if args.total is not None:
        if abs(total - args.total) > ALLOC_TOL:
            raise ValueError(
                f"--alloc sums to {total}, which differs from --total {args.total} "
                f"by more than {ALLOC_TOL}"
            )
        total = args.total
    params = ChannelParams(args.lambda0, args.lambda1, args.p, total)
    return params, Allocation(t1, t2, t3)


def _point_config(args, command: str) -> dict:
    return {
        "command": command,
        "lambda0": args.lambda0,
        "lambda1": args.lambda1,
        "p": args.p,
        "alloc": list(args.alloc),
        "total": args.total if args.total is not None else sum(args.alloc),
        "samples": args.samples,
        "seed": args.seed,
        "version": __version__,
    }


def cmd_mi(args) -> str:
    params, alloc = _point_setup(args)
    res = mutual_information_vector(params, alloc, args.samples, args.seed,
                                    workers=_resolve_threads(args))
    payload = {
        "mi_bits": res.mi_bits.value,
        "std_error": res.mi_bits.std_error,
        "h_y": res.h_y_bits.value,
        "h_y_given_x": res.h_y_given_x_bits,
        "config": _point_config(args, "mi"),
    }
    return json.dumps(payload, indent=2) + "\n"


def cmd_pd(args) -> str:
    params, alloc = _point_setup(args)
    res = pd_mc(params, alloc, args.samples, args.seed, workers=_resolve_threads(args))
    payload = {
        "pd": res.pd.value,
        "std_error": res.pd.std_error,
        "bayes_risk": res.bayes_risk,
        "confusion": res.confusion.counts.tolist(),
        "config": _point_config(args, "pd"),
    }
    return json.dumps(payload, indent=2) + "\n"


def _csv(header_pairs: list[tuple[str, object]], columns: list[str], rows: list[list[str]]) -> str:
    lines = [f"# senseplan {__version__}"]
    lines.append("# " + " ".join(f"{k}={v}" for k, v in header_pairs))
    lines.append(",".join(columns))
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _metric_fields(point) -> list[str]:
    mi = [_fmt(point.mi.value), _fmt(point.mi.std_error)] if point.mi is not None else ["", ""]
    pd = [_fmt(point.pd.value), _fmt(point.pd.std_error)] if point.pd is not None else ["", ""]
    return mi + pd


def cmd_sweep_line(args) -> str:
    params = ChannelParams(args.lambda0, args.lambda1, args.p, args.total)
    result = line_sweep(params, args.steps, args.samples, args.seed,
                        metrics=args.metric, workers=_resolve_threads(args))
    header = [
        ("command", "sweep-line"),
        ("lambda0", _fmt(args.lambda0)),
        ("lambda1", _fmt(args.lambda1)),
        ("p", _fmt(args.p)),
        ("total", _fmt(args.total)),
        ("steps", args.steps),
        ("samples", args.samples),
        ("seed", args.seed),
        ("metric", args.metric),
    ]
    rows = []
    for point in result.points:
        alloc = point.alloc
        rows.append(
            [_fmt(alloc.t3), _fmt(alloc.t1), _fmt(alloc.t2), _fmt(alloc.t3)]
            + _metric_fields(point)
        )
    return _csv(header, ["alpha", "t1", "t2", "t3", "mi_bits", "mi_se", "pd", "pd_se"], rows)


def cmd_sweep_simplex(args) -> str:
    params = ChannelParams(args.lambda0, args.lambda1, args.p, args.total)
    result = simplex_sweep(params, args.resolution, args.samples, args.seed,
                           metrics=args.metric, workers=_resolve_threads(args))
    header = [
        ("command", "sweep-simplex"),
        ("lambda0", _fmt(args.lambda0)),
        ("lambda1", _fmt(args.lambda1)),
        ("p", _fmt(args.p)),
        ("total", _fmt(args.total)),
        ("resolution", args.resolution),
        ("samples", args.samples),
        ("seed", args.seed),
        ("metric", args.metric),
    ]
    rows = []
    for point in result.points:
        alloc = point.alloc
        rows.append([_fmt(alloc.t1), _fmt(alloc.t2), _fmt(alloc.t3)] + _metric_fields(point))
    return _csv(header, ["t1", "t2", "t3", "mi_bits", "mi_se", "pd", "pd_se"], rows)


def cmd_scan(args) -> str:
    points = param_scan(
        args.lambda0,
        args.lambda1,
        args.grid_n,
        args.p,
        args.total,
        args.steps,
        args.samples,
        args.seed,
        metric=args.metric,
        workers=_resolve_threads(args),
    )
    header = [
        ("command", "scan"),
        ("lambda0", f"{_fmt(args.lambda0[0])}:{_fmt(args.lambda0[1])}"),
        ("lambda1", f"{_fmt(args.lambda1[0])}:{_fmt(args.lambda1[1])}"),
        ("grid_n", args.grid_n),
        ("p", _fmt(args.p)),
        ("total", _fmt(args.total)),
        ("steps", args.steps),
        ("samples", args.samples),
        ("seed", args.seed),
        ("metric", args.metric),
    ]
    rows = [
        [_fmt(s.lambda0), _fmt(s.lambda1), _fmt(s.opt_value), _fmt(s.opt_se),
         _fmt(s.opt_t3), s.regime]
        for s in points
    ]
    return _csv(header, ["lambda0", "lambda1", "opt_value", "opt_se", "opt_t3", "regime"], rows)


def cmd_svd_check(args) -> str:
    if args.samples < 1:
        raise ValueError(f"--samples must be >= 1 for svd-check, got {args.samples}")
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        total = rng.uniform(0.0, args.total)
        cuts = np.sort(rng.uniform(0.0, 1.0, 2))
        alloc = Allocation(
            total * cuts[0], total * (cuts[1] - cuts[0]), total * (1.0 - cuts[1])
        )
        a = singular_values_formula(alloc).sigma
        b = singular_values_numeric(alloc).sigma
        worst = max(worst, float(np.max(np.abs(a - b))))
    payload = {
        "max_abs_error": worst,
        "config": {
            "command": "svd-check",
            "samples": args.samples,
            "total": args.total,
            "seed": args.seed,
            "version": __version__,
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def _add_common(sub, *, total_required: bool):
    sub.add_argument("--p", type=float, required=True, help="prior P(lambda1) per target")
    sub.add_argument("--samples", type=int, help="Monte Carlo sample count")
    sub.add_argument("--seed", type=int, required=True, help="master seed (required)")
    sub.add_argument("--threads", type=int, default=None,
                     help="worker bound; SENSEPLAN_THREADS env var is the fallback")
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--total", type=float, required=total_required, help="time budget T")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="senseplan",
        description="Time-allocation planning for two-target sensing on a "
                    "vector Gaussian channel.",
    )
    parser.add_argument("--version", action="version", version=f"senseplan {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    mi = subs.add_parser("mi", help="mutual information at one allocation (JSON)")
    mi.add_argument("--lambda0", type=float, required=True)
    mi.add_argument("--lambda1", type=float, required=True)
    mi.add_argument("--alloc", type=_parse_triple, required=True, metavar="T1,T2,T3")
    _add_common(mi, total_required=False)
    mi.set_defaults(func=cmd_mi, samples_default=1_000_000)

    pd = subs.add_parser("pd", help="probability of total correct detections (JSON)")
    pd.add_argument("--lambda0", type=float, required=True)
    pd.add_argument("--lambda1", type=float, required=True)
    pd.add_argument("--alloc", type=_parse_triple, required=True, metavar="T1,T2,T3")
    _add_common(pd, total_required=False)
    pd.set_defaults(func=cmd_pd, samples_default=1_000_000)

    line = subs.add_parser("sweep-line", help="sweep the symmetric line in T3 (CSV)")
    line.add_argument("--lambda0", type=float, required=True)
    line.add_argument("--lambda1", type=float, required=True)
    line.add_argument("--steps", type=int, default=400)
    line.add_argument("--metric", choices=["mi", "pd", "both"], default="both")
    _add_common(line, total_required=True)
    line.set_defaults(func=cmd_sweep_line, samples_default=100_000)

    simplex = subs.add_parser("sweep-simplex", help="sweep the full time simplex (CSV)")
    simplex.add_argument("--lambda0", type=float, required=True)
    simplex.add_argument("--lambda1", type=float, required=True)
    simplex.add_argument("--resolution", type=int, default=20)
    simplex.add_argument("--metric", choices=["mi", "pd", "both"], default="both")
    _add_common(simplex, total_required=True)
    simplex.set_defaults(func=cmd_sweep_simplex, samples_default=100_000)

    scan = subs.add_parser("scan", help="per-(lambda0,lambda1) line-sweep optima (CSV)")
    scan.add_argument("--lambda0", type=_parse_range, default=(0.0, 5.0), metavar="LO,HI")
    scan.add_argument("--lambda1", type=_parse_range, default=(0.0, 5.0), metavar="LO,HI")
    scan.add_argument("--grid-n", type=int, default=20, dest="grid_n")
    scan.add_argument("--steps", type=int, default=400)
    scan.add_argument("--metric", choices=["mi", "pd"], default="mi")
    _add_common(scan, total_required=True)
    scan.set_defaults(func=cmd_scan, samples_default=100_000)

    svd = subs.add_parser("svd-check", help="gain-matrix singular value cross-check (JSON)")
    svd.add_argument("--samples", type=int, required=True,
                     help="number of random allocations")
    svd.add_argument("--total", type=float, default=100.0,
                     help="upper bound on the random time budget")
    svd.add_argument("--seed", type=int, required=True)
    svd.add_argument("--out", help="output path (default: stdout)")
    svd.set_defaults(func=cmd_svd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", None) is None and hasattr(args, "samples_default"):
        args.samples = args.samples_default
    try:
        text = args.func(args)
    except ValueError as exc:
        print(f"senseplan: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"senseplan: {exc}", file=sys.stderr)
        return 1
    try:
        if getattr(args, "out", None):
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"senseplan: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
