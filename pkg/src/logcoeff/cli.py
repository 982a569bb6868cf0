"""Command-line entry point: ``logcoeff <subcommand> [options]``.

Exit codes: 0 success, 1 bound violations found by ``verify``, 2 usage
errors, 3 internal consistency failures.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import caratheodory as cara
from . import classes, optimizer, sturm, verifier
from .series import DEFAULT_ORDER, TruncatedSeries, log_coefficients

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3
SEED_ENV = "LOGCOEFF_SEED"


def _num(x):
    """Round to 12 significant digits and turn numpy/complex values into JSON types."""
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if isinstance(x, np.ndarray):
        return _num(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_num(float(x.real)), _num(float(x.imag))]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if not math.isfinite(x) else float(f"{x:.12g}")
    return x


def _emit_json(obj, out) -> None:
    out.write(json.dumps(_num(obj), indent=2) + "\n")


def _emit_text(obj, out, prefix="") -> None:
    for k, v in _num(obj).items():
        if isinstance(v, dict):
            out.write(f"{prefix}{k}:\n")
            _emit_text(v, out, prefix + "  ")
        else:
            out.write(f"{prefix}{k}: {v}\n")


def _emit(obj, fmt: str, out) -> None:
    if fmt == "text":
        _emit_text(obj, out)
    else:
        _emit_json(obj, out)


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env not in (None, "") else args.seed


def _load_atoms(path):
    with open(path, encoding="utf-8") as fh:
        return cara.HerglotzAtoms.from_json(fh.read())


# -- subcommands ----------------------------------------------------------------

def cmd_bound(args, out):
    s46 = math.sqrt(46)
    _emit({
        "gamma1": 0.5,
        "gamma2": 0.5,
        "gamma3": optimizer.GAMMA3_BOUND,
        "closed_forms": {"gamma1": "1/2", "gamma2": "1/2", "gamma3": "(95+23*sqrt(46))/972"},
        "objective_max": optimizer.GLOBAL_MAX,
        "check": (95 + 23 * s46) / 972 - optimizer.GLOBAL_MAX / 48,
    }, args.format, out)
    return 0


def cmd_maximize(args, out):
    if args.grid_step > 1e-2:
        raise _UsageError("--grid-step must be <= 1e-2")
    rep = optimizer.maximize_global(args.grid_step, args.refine_tol, threads=args.threads)
    if abs(float(optimizer.F(rep.argmax)) - rep.value) > 1e-12:
        raise ArithmeticError("MaxReport value does not re-evaluate")
    d = rep.to_dict()
    d["gamma3_bound"] = rep.value / 48
    _emit(d, "json" if args.json else args.format, out)
    return 0


def cmd_faces(args, out):
    rows = [fm.row() for fm in optimizer.face_maxima(args.grid_step, threads=args.threads)]
    if args.format == "csv":
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _num(v) for k, v in row.items()})
    elif args.format == "json":
        _emit_json({"faces": rows, "edges": optimizer.edge_maxima()}, out)
    else:
        for row in rows:
            out.write("{face:5s} closed={closed_form:.12g} numeric={numeric:.12g} "
                      "at c={c:.12g} r={r:.12g} p={p:.12g}\n".format(**row))
    return 0


def cmd_sturm(args, out):
    try:
        vals = [float(v) for v in args.poly.split(",")]
    except ValueError:
        raise _UsageError(f"cannot parse --poly {args.poly!r}")
    p = sturm.RealPolynomial(vals if args.ascending else vals[::-1])
    a, b = args.interval
    if not a < b:
        raise _UsageError("--interval needs A < B")
    count = sturm.count_roots(p, a, b)
    roots = sturm.isolate_roots(p, a, b, args.tol)
    _emit({"count": count, "roots": roots, "interval": [a, b],
           "sequence_length": len(sturm.sturm_sequence(p))}, args.format, out)
    return 0


def cmd_extremal(args, out):
    P = cara.extremal_P()
    fn = classes.assemble(classes.odd_koebe(args.order), P)
    gam = log_coefficients(fn.f)
    c = cara.coefficients(P, 3)
    closed = cara.extremal_triple()
    lam, alpha = cara.extremal_parameters()
    d = {
        "atoms": P.to_dict()["atoms"],
        "lambda": lam,
        "alpha": alpha,
        "c": [float(v.real) for v in c],
        "c_closed_form": [closed.c1, closed.c2, closed.c3],
        "x": closed.x,
        "t": closed.t,
        "b3": 1.0,
        "gamma3_abs": abs(gam[3]),
        "gamma3_bound": optimizer.GAMMA3_BOUND,
        "gap": abs(abs(gam[3]) - optimizer.GAMMA3_BOUND),
    }
    if d["gap"] > 1e-9:
        raise ArithmeticError(f"extremal |gamma_3| misses the bound by {d['gap']}")
    _emit(d, args.format, out)
    if args.dump_series:
        out.write(fn.f.to_json() + "\n")
    return 0


def cmd_sample(args, out):
    seed = _seed(args)
    fixed_P = _load_atoms(args.p_atoms) if args.p_atoms else None
    records = []
    for i in range(args.samples):
        g, P, _ = verifier._draw(seed, i, args.order, args.atoms, args.atoms)
        records.append(verifier.evaluate(g, P if fixed_P is None else fixed_P, seed, i))
    if args.csv:
        verifier.write_csv(records, args.csv)
    else:
        verifier.write_csv(records, out)
    return 0


def cmd_verify(args, out):
    seed = _seed(args)
    summary = verifier.verify(args.samples, seed, args.order, args.atoms, args.atoms,
                              csv_out=args.csv)
    summary.pop("seconds")
    _emit_json(summary, out)
    return 0 if summary["violations"] == 0 else EXIT_VIOLATION


def cmd_series_demo(args, out):
    n = args.order
    koebe = TruncatedSeries(np.arange(n + 1, dtype=float))
    gam = log_coefficients(koebe).as_array()
    d = {
        "function": "z/(1-z)^2",
        "order": n,
        "gammas": [float(g.real) for g in gam],
        "max_error_vs_1_over_n": float(np.max(np.abs(gam - 1 / np.arange(1, n)))),
    }
    _emit(d, args.format, out)
    if args.dump_series:
        out.write(koebe.to_json() + "\n")
    return 0


# -- parser -------------------------------------------------------------------

class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="logcoeff",
        description="Sharp logarithmic-coefficient bounds for close-to-convex "
                    "functions with respect to odd starlike functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, formats=("json", "text"), default="json"):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=formats, default=default,
                       help=f"output format (default: {default})")
        p.set_defaults(func=fn)
        return p

    add("bound", cmd_bound, "print the three sharp bounds")

    p = add("maximize", cmd_maximize, "global maximum of the majorant over the box")
    p.add_argument("--grid-step", type=float, default=5e-3, help="grid spacing (default: 5e-3)")
    p.add_argument("--refine-tol", type=float, default=1e-10,
                   help="final pattern-search step (default: 1e-10)")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads for the grid sweep (default: all cores)")

    p = add("faces", cmd_faces, "maxima on the six faces of the box",
            formats=("csv", "json", "text"), default="csv")
    p.add_argument("--grid-step", type=float, default=1e-3, help="grid spacing (default: 1e-3)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads (default: all cores)")

    p = add("sturm", cmd_sturm, "count and refine real roots with a Sturm sequence")
    p.add_argument("--poly", default="9,0,-12,0,-2,0,-12",
                   help="comma-separated coefficients, highest degree first "
                        "(default: the sextic 9,0,-12,0,-2,0,-12)")
    p.add_argument("--ascending", action="store_true",
                   help="read --poly lowest degree first")
    p.add_argument("--interval", nargs=2, type=float, default=[0.0, 2.0],
                   metavar=("A", "B"), help="open interval (default: 0 2)")
    p.add_argument("--tol", type=float, default=1e-12, help="bisection width (default: 1e-12)")

    p = add("extremal", cmd_extremal, "extremal Caratheodory function and its |gamma_3|")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                   help=f"series order (default: {DEFAULT_ORDER})")
    p.add_argument("--dump-series", action="store_true",
                   help="also print the series of f as JSON [re, im] pairs")

    for name, fn, help in (("sample", cmd_sample, "emit sampled class members as CSV"),
                           ("verify", cmd_verify, "ensemble check of every bound")):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn, format="csv")
        p.add_argument("--samples", type=int, default=1000 if name == "verify" else 10,
                       help="number of samples")
        p.add_argument("--seed", type=int, default=0,
                       help=f"base seed (default: 0; {SEED_ENV} overrides)")
        p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                       help=f"series order (default: {DEFAULT_ORDER})")
        p.add_argument("--atoms", type=int, default=3,
                       help="atoms per Herglotz mixture (default: 3)")
        p.add_argument("--csv", metavar="OUT", help="write per-sample CSV to OUT")
        if name == "sample":
            p.add_argument("--p-atoms", metavar="FILE",
                           help='fixed P as JSON {"atoms": [{"w": .., "theta": ..}]}')

    p = add("series-demo", cmd_series_demo, "logarithmic coefficients of the Koebe function")
    p.add_argument("--order", type=int, default=12, help="series order (default: 12)")
    p.add_argument("--dump-series", action="store_true",
                   help="also print the series as JSON [re, im] pairs")
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "samples", 1) < 1 or getattr(args, "order", 12) < 4:
        parser.print_usage(sys.stderr)
        sys.stderr.write("logcoeff: error: --samples must be >= 1 and --order >= 4\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"logcoeff: error: {exc}\n")
        return EXIT_USAGE
    except (ArithmeticError, ValueError) as exc:
        sys.stderr.write(f"logcoeff: internal consistency failure: {exc}\n")
        return EXIT_INTERNAL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
