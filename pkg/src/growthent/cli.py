"""Command-line entry point: ``growthent {fit,decompose,hyper}``.

Each run writes ``<command>_report.json`` plus plot-data CSVs into
``--out-dir`` and echoes the report on stdout. Exit status: 0 success,
1 numerical failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .decomposition import DEFAULT_SCENARIO_TOL, decompose_cpi
from .errors import InputError, NumericalError
from .growthfit import fit_rate_constant
from .hyperinflation import EntropySeries, detect_breakpoint, fit_hyperinflation, info_entropy_value
from .report import Report, decomposition_summary, file_digest, fit_summary, hyper_summary, plot_csv
from .series import TimeSeries, load_series, normalize_to_reference

log = logging.getLogger("growthent")

EXIT_OK, EXIT_NUMERICAL, EXIT_INPUT = 0, 1, 2


def _load(path: str, args: argparse.Namespace, report: Report, *, name: str | None = None) -> TimeSeries:
    ts = load_series(path, name=name, unit=args.unit, reference=args.ref)
    if ts.reference_index > 0:
        report.warnings.append(
            f"{ts.name}: dropped {ts.reference_index} period(s) before reference {ts.reference_label}"
        )
    return ts


def _parse_search(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return float(lo), float(hi)
    except ValueError:
        raise InputError(f"--search expects LO..HI, got {text!r}") from None


def _fit_plot(t, y, lam) -> dict:
    t = np.asarray(t)
    return {"t": t, "observed": y, "fitted": lam * t}


def run_fit(args: argparse.Namespace) -> tuple[Report, dict[str, str]]:
    report = Report(command="fit")
    ts = _load(args.series, args, report, name=args.name).since_reference()
    report.inputs["series"] = file_digest(args.series)
    rel = normalize_to_reference(ts)
    fit = fit_rate_constant(rel)
    report.fits.append(
        fit_summary(ts.name, fit, unit=ts.unit, reference_period=ts.reference_label)
    )
    if fit.degenerate:
        report.warnings.append(
            f"{ts.name}: zero residual sum of squares; CI width is 0 and R^2 is reported as 1"
        )
    plots = {"fit_plot.csv": plot_csv(_fit_plot(rel.t, rel.y, fit.lambda_))}
    return report, plots


def run_decompose(args: argparse.Namespace) -> tuple[Report, dict[str, str]]:
    files = {"bms": args.bms, "gdp": args.gdp, "sav": args.sav, "cpi": args.cpi}
    report = Report(command="decompose")
    for key, path in files.items():
        if not Path(path).is_file():
            raise InputError(f"{path}: no such file")
        report.inputs[key] = file_digest(path)
    series = {k: _load(p, args, report, name=k) for k, p in files.items()}
    result = decompose_cpi(series["bms"], series["gdp"], series["sav"], series["cpi"])

    plots = {}
    for key, fit in result.fits.items():
        imputed = result.imputed[key]
        report.fits.append(
            fit_summary(
                key, fit, unit=series[key].unit, reference_period=series[key].reference_label,
                observed_only=bool(imputed), n_imputed=len(imputed),
            )
        )
        if fit.degenerate:
            report.warnings.append(f"{key}: zero residual sum of squares")
        comp = result.components[key]
        cols = _fit_plot(comp.t, comp.y, fit.lambda_)
        cols["residual"] = np.asarray(comp.y) - cols["fitted"]
        plots[f"decompose_{key}_plot.csv"] = plot_csv(cols)
        if imputed:
            report.warnings.append(f"{key}: {len(imputed)} period(s) imputed from the observed-point fit")

    res = result.residual_series
    cols = _fit_plot(res.t, res.y, result.residual_fit.lambda_)
    cols["residual"] = np.asarray(res.y) - cols["fitted"]
    plots["decompose_res_plot.csv"] = plot_csv(cols)
    report.decomposition = decomposition_summary(result, args.tol)
    return report, plots


def run_hyper(args: argparse.Namespace) -> tuple[Report, dict[str, str]]:
    report = Report(command="hyper")
    ts = _load(args.series, args, report, name=args.name).since_reference()
    report.inputs["series"] = file_digest(args.series)
    es = EntropySeries.from_series(ts)

    if args.break_ is not None:
        fit, profile = fit_hyperinflation(es, args.break_, fix_v0=args.fix_v0), None
    else:
        rng = _parse_search(args.search) if args.search else None
        found = detect_breakpoint(es, rng, fix_v0=args.fix_v0)
        fit, profile = found.fit, found.profile
    report.hyper = hyper_summary(fit, searched=args.break_ is None, profile=profile)
    report.hyper["reference_period"] = ts.reference_label
    if fit.degenerate:
        report.warnings.append("degenerate acceleration: no second exponential regime detected")

    t, v = es.arrays()
    model = info_entropy_value(t, fit.params)
    plots = {"hyper_semilog_plot.csv": plot_csv({"t": t, "observed": v, "fitted": model})}
    pos = (v > 0) & (model > 0)
    plots["hyper_log_entropy_plot.csv"] = plot_csv(
        {"t": t[pos], "observed": np.log(v[pos]), "fitted": np.log(model[pos])}
    )
    return report, plots


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="growthent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, unit):
        p.add_argument("--ref", type=int, default=None, help="reference period label (t=0); default earliest")
        p.add_argument("--unit", choices=("annual", "monthly"), default=unit)
        p.add_argument("--out-dir", default=".", help="directory for report and plot-data files")
        p.add_argument("--quiet", action="store_true", help="do not echo the report on stdout")

    p = sub.add_parser("fit", help="through-origin log-linear growth fit of one series")
    p.add_argument("series")
    p.add_argument("--name", default=None)
    common(p, "annual")
    p.set_defaults(run=run_fit)

    p = sub.add_parser("decompose", help="CPI = BMS - GDP - SAV - RES decomposition")
    for key in ("bms", "gdp", "sav", "cpi"):
        p.add_argument(key, help=f"{key.upper()} CSV")
    p.add_argument("--tol", type=float, default=DEFAULT_SCENARIO_TOL, help="scenario threshold per period")
    common(p, "annual")
    p.set_defaults(run=run_decompose)

    p = sub.add_parser("hyper", help="two-regime double-exponential fit with breakpoint")
    p.add_argument("series")
    p.add_argument("--name", default=None)
    p.add_argument("--break", dest="break_", type=float, default=None, help="fixed break time (periods)")
    p.add_argument("--search", default=None, help="break search interval LO..HI (inclusive)")
    p.add_argument("--fix-v0", type=float, default=None, help="pin the pre-break offset (e.g. 0)")
    common(p, "monthly")
    p.set_defaults(run=run_hyper)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        report, plots = args.run(args)
        out_dir = Path(args.out_dir)
        report.outputs = {"report": f"{report.command}_report.json", "plot_data": sorted(plots)}
        text = report.to_json()
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{report.command}_report.json").write_text(text, encoding="utf-8")
        for name, body in plots.items():
            (out_dir / name).write_text(body, encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for w in report.warnings:
        log.warning(w)
    if not args.quiet:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
