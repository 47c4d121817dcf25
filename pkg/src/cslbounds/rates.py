"""First-order collapse-induced excitation rates and expected event counts.

The general rate is (lambda / 2 a^2) |<phi| sum g_alpha r_alpha |psi>|^2.
For the deuteron the fixed-center-of-mass constraint reduces the operator
to the relative coordinate with squared weight
((g_n - m_n/m_p) / (1 + m_n/m_p))^2, which vanishes identically for
mass-proportional coupling. The electron contribution is neglected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import (
    CM2_PER_FM2,
    CODATA,
    GRW_LAMBDA_OVER_A2,
    CollapseParams,
    PhysicalConstants,
    lambda_over_a2,
)
from .deuteron import BoundStateModel, mean_square_radius, spectrum_density
from .quadrature import DEFAULT_QUAD, QuadratureSpec

# 10^3 m^3 expressed in cm^3
CC_PER_KILOTONNE_M3 = 1e9


@dataclass(frozen=True)
class MatrixElementSq:
    """Squared magnitude of the weighted dipole matrix element (cm^2)."""

    value_cm2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value_cm2) and self.value_cm2 >= 0):
            raise ValueError(f"matrix element squared must be finite and non-negative (got {self.value_cm2!r})")


@dataclass(frozen=True)
class ExcitationRate:
    """Excitation probability per second for one bound state."""

    per_second: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.per_second) and self.per_second >= 0):
            raise ValueError(f"rate must be finite and non-negative (got {self.per_second!r})")


@dataclass(frozen=True)
class CountPrediction:
    """Expected dissociation count and the normalized count coefficient.

    coefficient is the count at unit coupling deviation per (yr x 10^3 m^3)
    of live exposure at the GRW collapse strength.
    """

    expected_neutrons: float
    coefficient: float


def general_rate(p: CollapseParams, me: MatrixElementSq) -> ExcitationRate:
    """First-order excitation rate (lambda / 2 a^2) |M|^2.

    The next order in (bound-state size / a) is dropped; it is far below
    any observable level for nuclear bound states.
    """
    return ExcitationRate(0.5 * p.lambda_rate / p.a_length**2 * me.value_cm2)


def com_reduction_coefficients(pc: PhysicalConstants = CODATA) -> tuple[float, float]:
    """(c_p, c_n) such that r_p = c_p r and r_n = c_n r for the deuteron.

    Follows from fixing the mass-weighted center of mass at the origin,
    which ties r_p = -(m_n/m_p) r_n, with r = r_p - r_n the relative
    coordinate.
    """
    ratio = pc.m_n_over_m_p
    return ratio / (1.0 + ratio), -1.0 / (1.0 + ratio)


def relative_coupling_weight(g_n: float, pc: PhysicalConstants = CODATA) -> float:
    """Squared relative-coordinate weight ((g_n - m_n/m_p)/(1 + m_n/m_p))^2."""
    return ((g_n - pc.m_n_over_m_p) / (1.0 + pc.m_n_over_m_p)) ** 2


def _require_gn(p: CollapseParams) -> float:
    if p.g_n is None:
        raise ValueError("collapse parameters must have g_n set for deuteron rates")
    return p.g_n


def deuteron_rate(
    p: CollapseParams,
    model: BoundStateModel,
    pc: PhysicalConstants = CODATA,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> ExcitationRate:
    """Total dissociation rate per deuteron, integrated over final momenta."""
    g_n = _require_gn(p)
    r2_cm2 = mean_square_radius(model, spec)
    return general_rate(p, MatrixElementSq(relative_coupling_weight(g_n, pc) * r2_cm2))


def deuteron_spectrum(
    p: CollapseParams,
    model: BoundStateModel,
    k_per_fm: float,
    pc: PhysicalConstants = CODATA,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Differential dissociation rate dR/dk in s^-1 per fm^-1.

    Integrating over k reproduces deuteron_rate by the completeness sum rule.
    """
    g_n = _require_gn(p)
    density = spectrum_density(model, k_per_fm, spec).density_fm3
    prefactor = 0.5 * p.lambda_rate / p.a_length**2
    return prefactor * relative_coupling_weight(g_n, pc) * density * CM2_PER_FM2


def count_coefficient(
    model: BoundStateModel,
    deuteron_density_per_cc: float,
    pc: PhysicalConstants = CODATA,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Counts per unit coupling deviation squared per (yr x 10^3 m^3) at GRW strength."""
    if deuteron_density_per_cc <= 0:
        raise ValueError("deuteron density must be positive")
    r2_cm2 = mean_square_radius(model, spec)
    unit_weight = (1.0 / (1.0 + pc.m_n_over_m_p)) ** 2
    deuterons_per_unit_volume = deuteron_density_per_cc * CC_PER_KILOTONNE_M3
    return (
        0.5
        * GRW_LAMBDA_OVER_A2
        * unit_weight
        * r2_cm2
        * deuterons_per_unit_volume
        * pc.seconds_per_year
    )


def expected_count(
    p: CollapseParams,
    live_time_yr: float,
    volume_kilotonne_m3: float,
    deuteron_density_per_cc: float,
    model: BoundStateModel,
    pc: PhysicalConstants = CODATA,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> CountPrediction:
    """Expected number of collapse-induced dissociations over a live exposure.

    N = coefficient * (lambda/a^2)/(lambda/a^2)_GRW * (g_n - m_n/m_p)^2 * T * V
    with T in years and V in 10^3 m^3.
    """
    if live_time_yr <= 0 or volume_kilotonne_m3 <= 0:
        raise ValueError("live time and volume must be positive")
    g_n = _require_gn(p)
    coefficient = count_coefficient(model, deuteron_density_per_cc, pc, spec)
    strength_ratio = lambda_over_a2(p).lambda_over_a2 / GRW_LAMBDA_OVER_A2
    deviation = g_n - pc.m_n_over_m_p
    expected = coefficient * strength_ratio * deviation * deviation * live_time_yr * volume_kilotonne_m3
    return CountPrediction(expected_neutrons=expected, coefficient=coefficient)
