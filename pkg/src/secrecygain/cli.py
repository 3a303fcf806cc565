"""Command line: secrecy gains, secrecy-function curves, bounds and wiretap algebra.

Exit codes: 0 success, 1 I/O or precision failure, 2 usage or configuration error.
"""

import argparse
import csv
import io
import json
import os
import sys
import warnings

from . import lattice as lat
from . import secrecy, wiretap
from .errors import BudgetError, ConfigError, ConversionError, PrecisionError, UsageError
from .modform import EXTREMAL_DIMS, exact_gain_at_one, extremal_theta

SCHEMA = "secrecygain.report/1"
OUTDIR_ENV = "SECRECYGAIN_OUTDIR"


def _rational(x):
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": float(x)}


def _report(command, inputs, outputs, warns=()):
    return {"schema": SCHEMA, "command": command, "inputs": inputs, "outputs": outputs, "warnings": list(warns)}


def _emit(report, stream=None):
    stream = stream or sys.stdout
    json.dump(report, stream, indent=2, sort_keys=True)
    stream.write("\n")


def _source(args):
    if args.extremal is not None:
        return extremal_theta(args.extremal)
    if args.lattice_file is not None:
        return lat.load_lattice(args.lattice_file)
    return lat.catalog(args.lattice)


def _source_label(args):
    if args.extremal is not None:
        return f"extremal{args.extremal}"
    if args.lattice_file is not None:
        return os.path.splitext(os.path.basename(args.lattice_file))[0]
    return args.lattice.replace(":", "").replace("(", "").replace(")", "")


def _as_theta_poly(source):
    if not isinstance(source, lat.Lattice):
        return source
    try:
        return lat.modular_theta(source)
    except UsageError:
        raise UsageError(f"{source.name} is not even unimodular; use --numeric") from None


def _gamma(args):
    if args.gamma is not None:
        return args.gamma
    return 10 ** (args.gamma_db / 10)


def _write_csv(rows, header, out, default_name):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (v if isinstance(v, (int, str)) else f"{v:.17g}") for v in row])
    text = buf.getvalue()
    if out is None and os.environ.get(OUTDIR_ENV):
        out = os.path.join(os.environ[OUTDIR_ENV], default_name)
    if out is None or out == "-":
        sys.stdout.write(text)
        return None
    with open(out, "w", newline="") as fh:
        fh.write(text)
    return out


def cmd_gain(args):
    source = _source(args)
    inputs = {"source": _source_label(args), "mode": "exact" if args.exact else "numeric"}
    if args.exact:
        r = secrecy.secrecy_gain(_as_theta_poly(source), mode="exact_unimodular")
        out = {"gain": _rational(r.gain_exact), "y_star": 1.0, "y_star_db": 0.0, "method": r.method}
    else:
        inputs.update(range_db=list(args.range_db), tol=args.tol)
        r = secrecy.secrecy_gain(source, t_range_db=args.range_db, tol=args.tol)
        out = {
            "gain": r.gain,
            "y_star": r.y_star,
            "y_star_db": r.y_star_db,
            "method": r.method,
            "symmetry_residual": r.symmetry_residual,
            "reliable": r.reliable,
        }
        if not isinstance(source, lat.Lattice) or source.dim % 8 == 0:
            try:
                out["exact_at_one"] = _rational(exact_gain_at_one(_as_theta_poly(source)))
            except UsageError:
                pass
    _emit(_report("gain", inputs, out, r.warnings))
    return 0


def cmd_curve(args):
    source = _source(args)
    data = secrecy.secrecy_curve(source, args.min_db, args.max_db, args.steps)
    label = _source_label(args)
    path = _write_csv(data.tolist(), ["y_db", "xi"], args.out, f"curve_{label}.csv")
    if path is not None:
        inputs = {"source": label, "min_db": args.min_db, "max_db": args.max_db, "steps": args.steps}
        _emit(_report("curve", inputs, {"path": path, "rows": len(data), "max_xi": float(data[:, 1].max())}))
    return 0


def cmd_bound(args):
    rows, warns = [], []
    for n in range(args.n_min, args.n_max + 1, args.step):
        if n <= 0 or n % 8:
            warns.append(f"skipping n={n}: not a positive multiple of 8")
            continue
        ext = float(exact_gain_at_one(extremal_theta(n))) if n in EXTREMAL_DIMS else None
        row = [n, secrecy.siegel_weil_bound(n)]
        if args.asymptotic:
            row.append(secrecy.asymptotic_bound(n))
        row.append(ext)
        rows.append(row)
    header = ["n", "siegel_weil"] + (["asymptotic"] if args.asymptotic else []) + ["extremal_gain"]
    for w in warns:
        print(f"warning: {w}", file=sys.stderr)
    path = _write_csv(rows, header, args.out, "bound.csv")
    if path is not None:
        inputs = {"n_min": args.n_min, "n_max": args.n_max, "step": args.step, "asymptotic": args.asymptotic}
        _emit(_report("bound", inputs, {"path": path, "rows": len(rows)}, warns))
    return 0


def cmd_op_point(args):
    g = _gamma(args)
    y = wiretap.operating_point_y(args.R, args.Rs, g)
    inputs = {"R": args.R, "R_s": args.Rs, "gamma_e": g}
    _emit(_report("wiretap op-point", inputs, {"y": y, "y_db": secrecy.db(y)}))
    return 0


def cmd_rate(args):
    g = _gamma(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rs = wiretap.secrecy_rate_unimodular(args.R, g)
    out = {"R_s": rs, "negative_rate": rs < 0, "exceeds_total_rate": rs > args.R, "gamma_check": wiretap.gamma_for_unit_operating_point(args.R, rs)}
    _emit(_report("wiretap rate", {"R": args.R, "gamma_e": g}, out, [str(w.message) for w in caught]))
    return 0


def cmd_simulate(args):
    cfg = wiretap.WiretapConfig.load(args.config)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        formula = wiretap.eve_correct_prob_formula(cfg)
    mc = wiretap.monte_carlo_eve(cfg, args.trials, args.seed, workers=args.workers)
    out = {
        "p_hat": mc.p_hat,
        "ci95": mc.ci95,
        "successes": mc.successes,
        "formula_value": formula,
        "regime_flag": formula > 1,
        "index": cfg.index,
        "R_s": cfg.R_s,
    }
    inputs = {"config": args.config, "trials": args.trials, "seed": args.seed}
    _emit(_report("wiretap simulate", inputs, out, [str(w.message) for w in caught]))
    return 0


def _add_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--extremal", type=int, metavar="N", help=f"extremal theta series, N in {EXTREMAL_DIMS}")
    g.add_argument("--lattice", metavar="NAME", help=f"catalog lattice: {', '.join(lat.CATALOG_NAMES)}")
    g.add_argument("--lattice-file", metavar="PATH", help="JSON lattice {name, dim, gram}")


def _add_gamma(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--gamma", type=float, help="Eve's SNR as a ratio")
    g.add_argument("--gamma-db", type=float, help="Eve's SNR in dB")


def build_parser():
    parser = argparse.ArgumentParser(prog="secrecygain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gain", help="secrecy gain of a lattice")
    _add_source(p)
    m = p.add_mutually_exclusive_group()
    m.add_argument("--exact", action="store_true", help="exact rational value at y = 1")
    m.add_argument("--numeric", action="store_true", help="numeric maximization (default)")
    p.add_argument("--range-db", type=float, nargs=2, default=(-10.0, 10.0), metavar=("LO", "HI"))
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_gain)

    p = sub.add_parser("curve", help="secrecy function samples as CSV")
    _add_source(p)
    p.add_argument("--min-db", type=float, default=-10.0)
    p.add_argument("--max-db", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--out", help=f"CSV path (default: stdout, or ${OUTDIR_ENV}/curve_<name>.csv)")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("bound", help="Siegel-Weil lower bound table as CSV")
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=80)
    p.add_argument("--step", type=int, default=8)
    p.add_argument("--asymptotic", action="store_true", help="add the (1/2) 1.086^n column")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    w = sub.add_parser("wiretap", help="wiretap channel algebra and simulation")
    wsub = w.add_subparsers(dest="wiretap_command", required=True)
    p = wsub.add_parser("op-point", help="operating point y from R, R_s and Eve's SNR")
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--Rs", type=float, required=True)
    _add_gamma(p)
    p.set_defaults(func=cmd_op_point)
    p = wsub.add_parser("rate", help="secrecy rate putting a unimodular lattice at y = 1")
    p.add_argument("--R", type=float, required=True)
    _add_gamma(p)
    p.set_defaults(func=cmd_rate)
    p = wsub.add_parser("simulate", help="Monte Carlo estimate of Eve's correct-decision probability")
    p.add_argument("--config", required=True)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, ConversionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, PrecisionError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
