"""JSON run configuration with defaults reproducing the reference
heavy-water exposure (254.2 live days inside a 5.5 m fiducial radius).

Every key is optional; unknown keys are rejected with their full path so
typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Callable

from .constants import CODATA, CollapseParams, PhysicalConstants, grw_defaults
from .deuteron import BoundStateModel, ModelKind, build_hulthen, build_zero_range
from .limits import (
    ExperimentConfig,
    ObservedCounts,
    ScanSpec,
    SphereVisibilityConfig,
)
from .uncertainty import AsymmetricValue


class ConfigError(ValueError):
    """Invalid configuration document."""


DEFAULT_BINDING_ENERGY_MEV = 2.224575
DEFAULT_BETA_OVER_KAPPA = 6.163
DEFAULT_DEUTERON_DENSITY_PER_CC = (2.0 / 3.0) * 1e23


@dataclass(frozen=True)
class ModelSpec:
    """Bound-state model selection."""

    kind: ModelKind = ModelKind.ZERO_RANGE
    binding_energy_mev: float = DEFAULT_BINDING_ENERGY_MEV
    beta_over_kappa: float = DEFAULT_BETA_OVER_KAPPA


@dataclass(frozen=True)
class RunConfig:
    collapse: CollapseParams
    experiment: ExperimentConfig
    sphere: SphereVisibilityConfig
    scan: ScanSpec
    model: ModelSpec
    n_sigma: float = 1.0


def build_model(spec: ModelSpec, constants: PhysicalConstants = CODATA) -> BoundStateModel:
    """Construct the bound-state model a ModelSpec selects."""
    if spec.kind is ModelKind.ZERO_RANGE:
        return build_zero_range(spec.binding_energy_mev, constants)
    return build_hulthen(spec.binding_energy_mev, spec.beta_over_kappa, constants)


def default_observed() -> ObservedCounts:
    return ObservedCounts(value=1344.2, stat_up=69.8, stat_down=69.0, syst_up=98.1, syst_down=96.8)


def default_ssm_rate() -> AsymmetricValue:
    return AsymmetricValue(central=13.0, err_up=2.6, err_down=2.08)


def default_experiment() -> ExperimentConfig:
    return ExperimentConfig(
        live_time_days=254.2,
        fiducial_radius_m=5.5,
        deuteron_density_per_cc=DEFAULT_DEUTERON_DENSITY_PER_CC,
        efficiency=0.40,
        observed=default_observed(),
        ssm_rate_per_day=default_ssm_rate(),
    )


def default_config() -> RunConfig:
    return RunConfig(
        collapse=grw_defaults(),
        experiment=default_experiment(),
        sphere=SphereVisibilityConfig(),
        scan=ScanSpec(),
        model=ModelSpec(),
        n_sigma=1.0,
    )


def _as_mapping(node: Any, path: str) -> dict:
    if not isinstance(node, dict):
        raise ConfigError(f"{path}: expected an object (got {type(node).__name__})")
    return node


def _reject_unknown(node: dict, path: str, known: tuple[str, ...]) -> None:
    for key in node:
        if key not in known:
            where = f"{path}.{key}" if path else key
            raise ConfigError(f"{where}: unknown key")


def _number(
    node: dict,
    path: str,
    key: str,
    default: float,
    check: Callable[[float], bool],
    constraint: str,
) -> float:
    if key not in node:
        return default
    raw = node[key]
    where = f"{path}.{key}" if path else key
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"{where}: expected a number (got {raw!r})")
    value = float(raw)
    if not math.isfinite(value) or not check(value):
        raise ConfigError(f"{where}: must be {constraint} (got {raw!r})")
    return value


def _optional_number(node: dict, path: str, key: str, check, constraint) -> float | None:
    if key not in node or node[key] is None:
        return None
    return _number(node, path, key, math.nan, check, constraint)


def _flag(node: dict, path: str, key: str, default: bool) -> bool:
    if key not in node:
        return default
    raw = node[key]
    if not isinstance(raw, bool):
        raise ConfigError(f"{path}.{key}: expected true or false (got {raw!r})")
    return raw


_POSITIVE = (lambda v: v > 0, "positive")
_NON_NEGATIVE = (lambda v: v >= 0, "non-negative")
_ANY = (lambda v: True, "a finite number")


def _parse_collapse(node: dict) -> CollapseParams:
    _reject_unknown(node, "collapse", ("lambda_per_sec", "a_cm", "g_n", "g_e"))
    defaults = grw_defaults()
    return CollapseParams(
        lambda_rate=_number(node, "collapse", "lambda_per_sec", defaults.lambda_rate, *_POSITIVE),
        a_length=_number(node, "collapse", "a_cm", defaults.a_length, *_POSITIVE),
        g_n=_optional_number(node, "collapse", "g_n", *_NON_NEGATIVE),
        g_e=_optional_number(node, "collapse", "g_e", *_NON_NEGATIVE),
    )


def _parse_observed(node: dict) -> ObservedCounts:
    _reject_unknown(
        node, "experiment.observed", ("value", "stat_up", "stat_down", "syst_up", "syst_down")
    )
    d = default_observed()
    p = "experiment.observed"
    return ObservedCounts(
        value=_number(node, p, "value", d.value, *_ANY),
        stat_up=_number(node, p, "stat_up", d.stat_up, *_NON_NEGATIVE),
        stat_down=_number(node, p, "stat_down", d.stat_down, *_NON_NEGATIVE),
        syst_up=_number(node, p, "syst_up", d.syst_up, *_NON_NEGATIVE),
        syst_down=_number(node, p, "syst_down", d.syst_down, *_NON_NEGATIVE),
    )


def _parse_ssm_rate(node: dict) -> AsymmetricValue:
    _reject_unknown(node, "experiment.ssm_rate_per_day", ("value", "up", "down"))
    d = default_ssm_rate()
    p = "experiment.ssm_rate_per_day"
    return AsymmetricValue(
        central=_number(node, p, "value", d.central, *_ANY),
        err_up=_number(node, p, "up", d.err_up, *_NON_NEGATIVE),
        err_down=_number(node, p, "down", d.err_down, *_NON_NEGATIVE),
    )


def _parse_experiment(node: dict) -> ExperimentConfig:
    _reject_unknown(
        node,
        "experiment",
        (
            "live_time_days",
            "fiducial_radius_m",
            "deuteron_density_per_cc",
            "efficiency",
            "observed",
            "ssm_rate_per_day",
        ),
    )
    d = default_experiment()
    efficiency = _number(
        node,
        "experiment",
        "efficiency",
        d.efficiency,
        lambda v: 0 < v <= 1,
        "in (0,1]",
    )
    return ExperimentConfig(
        live_time_days=_number(node, "experiment", "live_time_days", d.live_time_days, *_POSITIVE),
        fiducial_radius_m=_number(node, "experiment", "fiducial_radius_m", d.fiducial_radius_m, *_POSITIVE),
        deuteron_density_per_cc=_number(
            node, "experiment", "deuteron_density_per_cc", d.deuteron_density_per_cc, *_POSITIVE
        ),
        efficiency=efficiency,
        observed=_parse_observed(_as_mapping(node.get("observed", {}), "experiment.observed")),
        ssm_rate_per_day=_parse_ssm_rate(
            _as_mapping(node.get("ssm_rate_per_day", {}), "experiment.ssm_rate_per_day")
        ),
    )


def _parse_sphere(node: dict) -> SphereVisibilityConfig:
    _reject_unknown(node, "sphere", ("diameter_cm", "nucleon_count", "perception_time_s", "margin"))
    d = SphereVisibilityConfig()
    return SphereVisibilityConfig(
        diameter_cm=_number(node, "sphere", "diameter_cm", d.diameter_cm, *_POSITIVE),
        nucleon_count=_number(node, "sphere", "nucleon_count", d.nucleon_count, *_POSITIVE),
        perception_time_s=_number(node, "sphere", "perception_time_s", d.perception_time_s, *_POSITIVE),
        collapse_margin=_number(node, "sphere", "margin", d.collapse_margin, *_POSITIVE),
    )


def _parse_scan(node: dict) -> ScanSpec:
    _reject_unknown(node, "scan", ("min", "max", "points", "log_spacing"))
    d = ScanSpec()
    points = node.get("points", d.points)
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError(f"scan.points: expected an integer (got {points!r})")
    if points < 2:
        raise ConfigError(f"scan.points: must be at least 2 (got {points!r})")
    lo = _number(node, "scan", "min", d.lo, *_POSITIVE)
    hi = _number(node, "scan", "max", d.hi, *_POSITIVE)
    if not lo < hi:
        raise ConfigError(f"scan: min must be below max (got min={lo!r}, max={hi!r})")
    return ScanSpec(lo=lo, hi=hi, points=points, log_spacing=_flag(node, "scan", "log_spacing", d.log_spacing))


def _parse_model(node: dict) -> ModelSpec:
    _reject_unknown(node, "model", ("kind", "binding_energy_mev", "beta_over_kappa"))
    d = ModelSpec()
    kind_raw = node.get("kind", d.kind.value)
    try:
        kind = ModelKind(kind_raw)
    except ValueError:
        choices = ", ".join(k.value for k in ModelKind)
        raise ConfigError(f"model.kind: must be one of {choices} (got {kind_raw!r})") from None
    beta_over_kappa = _number(
        node,
        "model",
        "beta_over_kappa",
        d.beta_over_kappa,
        lambda v: v > 1,
        "greater than 1",
    )
    return ModelSpec(
        kind=kind,
        binding_energy_mev=_number(node, "model", "binding_energy_mev", d.binding_energy_mev, *_POSITIVE),
        beta_over_kappa=beta_over_kappa,
    )


def parse_config(document: str | bytes) -> RunConfig:
    """Parse and validate a JSON configuration document."""
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        root = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    root = _as_mapping(root, "document root")
    _reject_unknown(root, "", ("collapse", "experiment", "sphere", "scan", "model", "n_sigma"))
    try:
        return RunConfig(
            collapse=_parse_collapse(_as_mapping(root.get("collapse", {}), "collapse")),
            experiment=_parse_experiment(_as_mapping(root.get("experiment", {}), "experiment")),
            sphere=_parse_sphere(_as_mapping(root.get("sphere", {}), "sphere")),
            scan=_parse_scan(_as_mapping(root.get("scan", {}), "scan")),
            model=_parse_model(_as_mapping(root.get("model", {}), "model")),
            n_sigma=_number(root, "", "n_sigma", 1.0, *_NON_NEGATIVE),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        # constructor invariants not caught by the schema checks above
        raise ConfigError(str(exc)) from None


def load_config(path: str | None) -> RunConfig:
    """Read a config file, or return the defaults when no path is given."""
    if path is None:
        return default_config()
    try:
        with open(path, "rb") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc.strerror}") from None


def config_to_dict(rc: RunConfig) -> dict:
    """Schema-shaped dict; round-trips through parse_config."""
    return {
        "collapse": {
            "lambda_per_sec": rc.collapse.lambda_rate,
            "a_cm": rc.collapse.a_length,
            "g_n": rc.collapse.g_n,
            "g_e": rc.collapse.g_e,
        },
        "experiment": {
            "live_time_days": rc.experiment.live_time_days,
            "fiducial_radius_m": rc.experiment.fiducial_radius_m,
            "deuteron_density_per_cc": rc.experiment.deuteron_density_per_cc,
            "efficiency": rc.experiment.efficiency,
            "observed": {
                "value": rc.experiment.observed.value,
                "stat_up": rc.experiment.observed.stat_up,
                "stat_down": rc.experiment.observed.stat_down,
                "syst_up": rc.experiment.observed.syst_up,
                "syst_down": rc.experiment.observed.syst_down,
            },
            "ssm_rate_per_day": {
                "value": rc.experiment.ssm_rate_per_day.central,
                "up": rc.experiment.ssm_rate_per_day.err_up,
                "down": rc.experiment.ssm_rate_per_day.err_down,
            },
        },
        "sphere": {
            "diameter_cm": rc.sphere.diameter_cm,
            "nucleon_count": rc.sphere.nucleon_count,
            "perception_time_s": rc.sphere.perception_time_s,
            "margin": rc.sphere.collapse_margin,
        },
        "scan": {
            "min": rc.scan.lo,
            "max": rc.scan.hi,
            "points": rc.scan.points,
            "log_spacing": rc.scan.log_spacing,
        },
        "model": {
            "kind": rc.model.kind.value,
            "binding_energy_mev": rc.model.binding_energy_mev,
            "beta_over_kappa": rc.model.beta_over_kappa,
        },
        "n_sigma": rc.n_sigma,
    }


def serialize_config(rc: RunConfig) -> str:
    return json.dumps(config_to_dict(rc), indent=2)
