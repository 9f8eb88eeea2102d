"""Command-line front end.

::

    stochdom compare --a a.txt --b b.txt --out plot.svg --report report.json --csv band.csv
    stochdom analytic --a a.json --b b.json --n 400
    stochdom properties --measure all --trials 50

Exit codes: 0 success, 2 bad input, 3 ``--verify`` mismatch, 4 property
matrix differs from the expected table, 1 numerical failure.
"""

import argparse
import sys

import numpy as np

from . import analytic_rv as rv
from .bootstrap import DEFAULT_RESAMPLES, band_bounds, bootstrap_band, feasible_limit, write_band_csv
from .dominance_measures import MEASURES, c_d_analytic, c_p_analytic, classify, reference_measure
from .errors import InputError, NumericFailure
from .estimators import estimate_c_d, estimate_c_p
from .oracle import brute_c_p
from .plotting import PlotSpec, export_report, render_svg
from .properties import EXPECTED_PROPERTIES, PropertyTrialConfig, run_property_suite
from .quantile_rv import (build_quantile_pair, c_d_from_diff, c_p_from_diff, diff_curve,
                          sample_verdict)

EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_PROPERTIES = 4
EXIT_NUMERIC = 1
MIN_RECOMMENDED_N = 100


class VerifyError(Exception):
    pass


def read_samples(path):
    """One value per line; blank lines and lines starting with ``#`` are skipped."""
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                v = float(s)
            except ValueError:
                raise InputError(f"{path}:{lineno}: cannot parse {s!r} as a number") from None
            if not np.isfinite(v):
                raise InputError(f"{path}:{lineno}: value {s!r} is not finite")
            values.append(v)
    if not values:
        raise InputError(f"{path}: no values found")
    return np.array(values)


def _verify(a, b, d, c_p, c_d, band):
    checks = [
        ("C_P vs pairwise count", abs(c_p - brute_c_p(a, b)), 1e-12),
        ("C_P vs curve area", abs(c_p - c_p_from_diff(d)), 1e-9),
        ("C_D vs curve sign lengths", abs(c_d - c_d_from_diff(d)), 1e-9),
    ]
    failed = [f"{name}: off by {err:.3g} (limit {lim:g})" for name, err, lim in checks if err > lim]
    lim = feasible_limit(band.x) + 1e-12
    if np.any(band.lower > band.upper) or np.any(np.abs(band.lower) > lim) \
            or np.any(np.abs(band.upper) > lim):
        failed.append("band edges out of order or outside the feasible triangle")
    if failed:
        raise VerifyError("; ".join(failed))


def run_compare(a, b, alpha=0.05, resamples=DEFAULT_RESAMPLES, seed=42, out=None, report=None,
                csv_path=None, verify=False, labels=("A", "B")):
    """Full empirical pipeline. Returns the one-line summary."""
    if a.size != b.size:
        raise InputError(f"samples must have equal size, got {a.size} and {b.size}")
    if a.size < MIN_RECOMMENDED_N:
        print(f"warning: n = {a.size} is below the recommended minimum of "
              f"{MIN_RECOMMENDED_N}", file=sys.stderr)
    d = diff_curve(build_quantile_pair(a, b))
    c_p, c_d = estimate_c_p(a, b), estimate_c_d(a, b)
    band = bootstrap_band(a, b, alpha, resamples, seed)
    bounds = band_bounds(band)
    verdict = sample_verdict(d)
    if verify:
        _verify(a, b, d, c_p, c_d, band)
    if out:
        spec = PlotSpec(label_a=labels[0], label_b=labels[1], alpha=alpha)
        with open(out, "wb") as fh:
            fh.write(render_svg(d, band, spec))
    if csv_path:
        write_band_csv(band, csv_path)
    if report:
        estimates = {"c_p": c_p, "c_d": c_d, "n": a.size, "alpha": alpha,
                     "resamples": resamples, "seed": seed, "curve": d}
        export_report(estimates, bounds, verdict,
                      {"report": report, "svg": out, "csv": csv_path})
    return (f"C_P={c_p:.4f} [{bounds[0]:.4f},{bounds[1]:.4f}]  "
            f"C_D={c_d:.4f} [{bounds[2]:.4f},{bounds[3]:.4f}]  verdict={verdict.value}")


def cmd_compare(args):
    a = read_samples(args.a)
    b = read_samples(args.b)
    if args.maximize:
        a, b = -a, -b
    print(run_compare(a, b, args.alpha, args.resamples, args.seed, args.out, args.report,
                      args.csv, args.verify, labels=(args.a, args.b)))
    return 0


def cmd_analytic(args):
    a = rv.load_mixture(args.a)
    b = rv.load_mixture(args.b)
    print(f"c_p={c_p_analytic(a, b, args.tol).value:.6f}")
    print(f"c_d={c_d_analytic(a, b, args.tol).value:.6f}")
    print(f"verdict={classify(a, b).value}")
    for m in MEASURES[2:]:
        mv = reference_measure(a, b, m, args.tol)
        print(f"{m}={mv.value:.6f}" + (" (g_A not absolutely continuous)" if mv.infinite else ""))
    if args.n:
        xa = rv.sample(a, args.n, [args.seed, 0])
        xb = rv.sample(b, args.n, [args.seed, 1])
        print(run_compare(xa, xb, seed=args.seed))
    return 0


def cmd_properties(args):
    measures = list(EXPECTED_PROPERTIES) if args.measure == "all" else [args.measure]
    cfg = PropertyTrialConfig(trials=args.trials, seed=args.seed, tolerance=args.tol)
    reports = [run_property_suite(m, cfg) for m in measures]
    print(f"{'measure':<12}" + " ".join(str(p) for p in range(1, 9)))
    ok = True
    for r in reports:
        cells = []
        for p in range(1, 9):
            res = r.results[p]
            mark = "Y" if res.passed else "."
            if res.expected is not None and res.expected != res.passed:
                mark = "!"
                ok = False
            cells.append(mark)
        print(f"{r.measure_id:<12}" + " ".join(cells))
    print("Y satisfied, . not satisfied, ! differs from the expected table")
    if args.report:
        import json

        with open(args.report, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if ok else EXIT_PROPERTIES


def build_parser():
    p = argparse.ArgumentParser(prog="stochdom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compare", help="compare two sample files")
    c.add_argument("--a", required=True, help="sample file for A, one value per line")
    c.add_argument("--b", required=True, help="sample file for B")
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--resamples", type=int, default=DEFAULT_RESAMPLES)
    c.add_argument("--seed", type=int, default=42)
    c.add_argument("--maximize", action="store_true",
                   help="larger values are better; samples are negated")
    c.add_argument("--out", help="SVG plot path")
    c.add_argument("--report", help="JSON report path")
    c.add_argument("--csv", help="CSV path for x, lower, diff, upper")
    c.add_argument("--verify", action="store_true", help="cross-check against the oracles")
    c.set_defaults(func=cmd_compare)

    a = sub.add_parser("analytic", help="measures for two mixture specification files")
    a.add_argument("--a", required=True)
    a.add_argument("--b", required=True)
    a.add_argument("--tol", type=float, default=1e-8)
    a.add_argument("--n", type=int, help="also sample n values of each and run compare")
    a.add_argument("--seed", type=int, default=42)
    a.set_defaults(func=cmd_analytic)

    r = sub.add_parser("properties", help="check the eight properties for a measure")
    r.add_argument("--measure", default="all", choices=["all", *MEASURES])
    r.add_argument("--trials", type=int, default=50)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tol", type=float, default=1e-4)
    r.add_argument("--report", help="JSON report path")
    r.set_defaults(func=cmd_properties)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerifyError as exc:
        print(f"verify failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except NumericFailure as exc:
        print(f"numerical failure: {exc} (best estimate {exc.estimate})", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
