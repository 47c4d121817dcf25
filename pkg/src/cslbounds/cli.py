"""Command-line interface.

Subcommands: analyze (full constraint report), scan (exclusion curve over
lambda/a^2), spectrum (dissociation spectrum over relative momentum), and
constants. Exit codes: 0 success, 1 usage or configuration error,
2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import replace

from .config import (
    ConfigError,
    RunConfig,
    build_model,
    load_config,
)
from .constants import CODATA, GRW_LAMBDA_OVER_A2, grw_defaults, lambda_over_a2
from .deuteron import ModelKind, default_k_grid, spectrum_density
from .limits import AnalysisReport, run_full_analysis, scan_exclusion
from .quadrature import QuadratureError
from .rates import deuteron_spectrum, expected_count
from .uncertainty import AsymmetricValue

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2

FORMATS = ("text", "csv", "structured")


def _fmt(x: float) -> str:
    """Compact scientific formatting without zero-padded exponents (1e-5, 2.5)."""
    return re.sub(r"e([+-])0(\d)", r"e\1\2", f"{x:g}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_CONFIG, f"error[usage]: {message}\n")


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="JSON configuration file (defaults reproduce the reference experiment)")
    sub.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")
    sub.add_argument("--output", metavar="PATH", help="write output to a file instead of stdout")
    sub.add_argument("--model", choices=[k.value for k in ModelKind], help="override the bound-state model kind")
    sub.add_argument("--nsigma", type=float, metavar="X", help="override the limit significance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cslbounds", description="Collapse-model excitation rates and coupling exclusion bounds.")
    subparsers = parser.add_subparsers(dest="command")

    analyze = subparsers.add_parser("analyze", help="run the full constraint analysis")
    _add_common_options(analyze)
    analyze.add_argument("--predict", action="store_true", help="also report the expected excess count for the configured g_n")
    analyze.set_defaults(handler=_cmd_analyze)

    scan = subparsers.add_parser("scan", help="emit the exclusion curve over lambda/a^2")
    _add_common_options(scan)
    scan.set_defaults(handler=_cmd_scan)

    spectrum = subparsers.add_parser("spectrum", help="emit the dissociation spectrum over relative momentum")
    _add_common_options(spectrum)
    spectrum.add_argument(
        "--quantity",
        choices=("rate", "density"),
        default="rate",
        help="rate: dR/dk in 1/s per 1/fm (needs g_n); density: matrix-element spectrum in fm^3",
    )
    spectrum.add_argument(
        "--skip-failures",
        action="store_true",
        help="report per-row quadrature failures as nan instead of aborting",
    )
    spectrum.set_defaults(handler=_cmd_spectrum)

    constants = subparsers.add_parser("constants", help="print constants and GRW defaults")
    constants.add_argument("--output", metavar="PATH", help="write output to a file instead of stdout")
    constants.set_defaults(handler=_cmd_constants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write("error[usage]: a subcommand is required\n")
        return EXIT_CONFIG
    try:
        return args.handler(args)
    except ConfigError as exc:
        sys.stderr.write(f"error[config]: {exc}\n")
        return EXIT_CONFIG
    except QuadratureError as exc:
        sys.stderr.write(f"error[numeric]: {exc}\n")
        return EXIT_NUMERIC
    except ValueError as exc:
        sys.stderr.write(f"error[config]: {exc}\n")
        return EXIT_CONFIG


def entrypoint() -> None:
    raise SystemExit(main())


def _load(args) -> RunConfig:
    cfg = load_config(getattr(args, "config", None))
    if getattr(args, "model", None):
        cfg = replace(cfg, model=replace(cfg.model, kind=ModelKind(args.model)))
    nsigma = getattr(args, "nsigma", None)
    if nsigma is not None:
        if not (math.isfinite(nsigma) and nsigma >= 0):
            raise ConfigError(f"n_sigma must be non-negative (got {nsigma!r})")
        cfg = replace(cfg, n_sigma=nsigma)
    return cfg


def _write(args, text: str) -> None:
    path = getattr(args, "output", None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _asym_dict(v: AsymmetricValue) -> dict:
    return {"central": v.central, "err_up": v.err_up, "err_down": v.err_down}


def _report_dict(report: AnalysisReport, predicted: float | None) -> dict:
    data = {
        "counts": {
            "n_expt": _asym_dict(report.n_expt),
            "n_ssm": _asym_dict(report.n_ssm),
            "n_csl": _asym_dict(report.n_csl),
            "n_limit": report.n_limit,
            "n_sigma": report.n_sigma,
        },
        "bounds": {
            "gn_bound_at_grw": report.gn_bound_at_grw,
            "gn_bound_rounded": report.gn_bound_rounded,
            "ge_half_width_at_grw": report.ge_half_width_at_grw,
            "ge_upper_at_grw": report.ge_upper_at_grw,
            "strength_ratio": report.strength_ratio,
        },
        "model": {"r2_cm2": report.model_r2_cm2},
        "curve": {
            "theoretical_floor": report.curve.theoretical_floor,
            "experimental_ceiling": report.curve.experimental_ceiling,
            "points": [
                {"lambda_over_a2": p.lambda_over_a2, "gn_bound": p.gn_bound, "ge_bound": p.ge_bound}
                for p in report.curve.points
            ],
        },
        "floor_regime": report.floor_regime,
        "warnings": list(report.warnings),
    }
    if predicted is not None:
        data["predicted_csl_counts"] = predicted
    return data


def _report_text(report: AnalysisReport, predicted: float | None) -> str:
    lines = [
        "collapse-coupling constraint analysis",
        "counts (efficiency-corrected)",
        f"  n_expt  = {report.n_expt.display()}   (exact {report.n_expt.central!r})",
        f"  n_ssm   = {report.n_ssm.display()}   (exact {report.n_ssm.central!r})",
        f"  n_csl   = {report.n_csl.display()}   (exact {report.n_csl.central!r})",
        f"  one-sided upper limit ({_fmt(report.n_sigma)} sigma) = {report.n_limit:.1f}",
        "model",
        f"  <r^2> = {report.model_r2_cm2:.6e} cm^2",
        f"bounds at lambda/a^2 = {_fmt(GRW_LAMBDA_OVER_A2)} 1/(s cm^2)",
        f"  |g_n - m_n/m_p| < {report.gn_bound_at_grw:.6g}   (rounded up: {_fmt(report.gn_bound_rounded)})",
        f"  |g_e - m_e/m_p| < {report.ge_half_width_at_grw:.6g}   (g_e < {report.ge_upper_at_grw:.6g})",
        f"  electron/neutron fractional-width ratio = {report.strength_ratio:.1f}",
        "exclusion curve",
        f"  theoretical floor    = {report.curve.theoretical_floor:.6g} 1/(s cm^2)",
        f"  experimental ceiling = {_fmt(report.curve.experimental_ceiling)} 1/(s cm^2)",
        f"  {report.floor_regime}",
    ]
    if predicted is not None:
        lines.append(f"predicted excess count for configured g_n = {predicted:.6g}")
    lines.append("warnings")
    if report.warnings:
        lines.extend(f"  {w}" for w in report.warnings)
    else:
        lines.append("  none")
    return "\n".join(lines) + "\n"


def _report_csv(report: AnalysisReport, predicted: float | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["quantity", "central", "err_up", "err_down"])
    for name, v in (("n_expt", report.n_expt), ("n_ssm", report.n_ssm), ("n_csl", report.n_csl)):
        writer.writerow([name, v.central, v.err_up, v.err_down])
    for name, value in (
        ("n_limit", report.n_limit),
        ("gn_bound_at_grw", report.gn_bound_at_grw),
        ("gn_bound_rounded", report.gn_bound_rounded),
        ("ge_half_width_at_grw", report.ge_half_width_at_grw),
        ("ge_upper_at_grw", report.ge_upper_at_grw),
        ("strength_ratio", report.strength_ratio),
        ("model_r2_cm2", report.model_r2_cm2),
        ("theoretical_floor", report.curve.theoretical_floor),
        ("experimental_ceiling", report.curve.experimental_ceiling),
    ):
        writer.writerow([name, value, "", ""])
    if predicted is not None:
        writer.writerow(["predicted_csl_counts", predicted, "", ""])
    return buf.getvalue()


def _cmd_analyze(args) -> int:
    cfg = _load(args)
    model = build_model(cfg.model)
    report = run_full_analysis(
        cfg.experiment,
        cfg.sphere,
        model,
        n_sigma=cfg.n_sigma,
        scan=cfg.scan,
        a_cm=cfg.collapse.a_length,
    )
    predicted = None
    if args.predict:
        if cfg.collapse.g_n is None:
            raise ConfigError("collapse.g_n must be set to use --predict")
        predicted = expected_count(
            cfg.collapse,
            cfg.experiment.live_time_yr,
            cfg.experiment.fiducial_volume_kilotonne_m3,
            cfg.experiment.deuteron_density_per_cc,
            model,
        ).expected_neutrons
    if args.format == "structured":
        _write(args, json.dumps(_report_dict(report, predicted), indent=2) + "\n")
    elif args.format == "csv":
        _write(args, _report_csv(report, predicted))
    else:
        _write(args, _report_text(report, predicted))
    return EXIT_OK


def _cmd_scan(args) -> int:
    cfg = _load(args)
    model = build_model(cfg.model)
    curve = scan_exclusion(
        cfg.experiment,
        cfg.sphere,
        cfg.scan,
        model,
        n_sigma=cfg.n_sigma,
        a_cm=cfg.collapse.a_length,
    )
    if args.format == "structured":
        data = {
            "theoretical_floor": curve.theoretical_floor,
            "experimental_ceiling": curve.experimental_ceiling,
            "points": [
                {"lambda_over_a2": p.lambda_over_a2, "gn_bound": p.gn_bound, "ge_bound": p.ge_bound}
                for p in curve.points
            ],
        }
        _write(args, json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    buf = io.StringIO()
    buf.write(f"# theoretical_floor_per_s_cm2 = {curve.theoretical_floor!r}\n")
    buf.write(f"# experimental_ceiling_per_s_cm2 = {curve.experimental_ceiling!r}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lambda_over_a2", "gn_bound", "ge_bound"])
    for p in curve.points:
        writer.writerow([p.lambda_over_a2, p.gn_bound, p.ge_bound])
    _write(args, buf.getvalue())
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    cfg = _load(args)
    model = build_model(cfg.model)
    if args.quantity == "rate" and cfg.collapse.g_n is None:
        raise ConfigError(
            "collapse.g_n must be set for the rate spectrum (set it in the config or use --quantity density)"
        )
    column = "rate_density" if args.quantity == "rate" else "density_fm3"
    rows: list[tuple[float, float]] = []
    for k in default_k_grid(model):
        k = float(k)
        try:
            if args.quantity == "rate":
                value = deuteron_spectrum(cfg.collapse, model, k)
            else:
                value = spectrum_density(model, k).density_fm3
        except QuadratureError as exc:
            if not args.skip_failures:
                raise
            sys.stderr.write(f"warning: k={k!r}: {exc}\n")
            value = math.nan
        rows.append((k, float(value)))
    if args.format == "structured":
        data = {"columns": ["k_per_fm", column], "rows": [[k, v] for k, v in rows]}
        _write(args, json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k_per_fm", column])
    for k, v in rows:
        writer.writerow([k, v])
    _write(args, buf.getvalue())
    return EXIT_OK


def _cmd_constants(args) -> int:
    pc = CODATA
    grw = grw_defaults()
    lines = [
        "collapse-model defaults (GRW)",
        f"  lambda_rate      = {_fmt(grw.lambda_rate)} 1/s",
        f"  a_length         = {_fmt(grw.a_length)} cm",
        f"  lambda/a^2       = {_fmt(lambda_over_a2(grw).lambda_over_a2)} 1/(s cm^2)",
        "physical constants",
        f"  m_e/m_p          = {pc.m_e_over_m_p:.9g}",
        f"  m_n/m_p          = {pc.m_n_over_m_p:.9g}",
        f"  hbar*c           = {pc.hbar_c_mev_fm:.7g} MeV fm",
        f"  mu_np            = {pc.reduced_mass_np_mev:.6g} MeV/c^2",
        f"  seconds_per_day  = {_fmt(pc.seconds_per_day)} s",
        f"  seconds_per_year = {_fmt(pc.seconds_per_year)} s",
    ]
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    entrypoint()
