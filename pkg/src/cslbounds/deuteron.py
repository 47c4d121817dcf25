"""Deuteron relative-motion bound states and their dissociation spectrum.

Wavefunctions are reduced radial functions u(r) = r R(r) with r in fm,
normalized so that int_0^inf u(r)^2 dr = 1. The dissociated final states
are free plane waves of the relative momentum k; no final-state
interaction is applied. Mean-square radii are returned in cm^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_legendre, spherical_jn

from .constants import CM2_PER_FM2, CODATA, PhysicalConstants
from .quadrature import DEFAULT_QUAD, QuadratureSpec, integrate_fourier, integrate_radial

# Above this many kappa in k the spherical Bessel integrand oscillates too
# fast for plain subdivision; switch to Fourier-weight quadrature.
_OSCILLATORY_K_OVER_KAPPA = 8.0
# exp(-45) puts the truncated tail far below every tolerance in use.
_DECAY_CUTOFF = 45.0


def _j1(x: float) -> float:
    # scalar spherical Bessel j_1; series below the cancellation region
    if x < 0.02:
        return x / 3.0 - x**3 / 30.0 + x**5 / 840.0
    return (math.sin(x) - x * math.cos(x)) / (x * x)


class ModelKind(str, enum.Enum):
    ZERO_RANGE = "zero-range"
    HULTHEN = "hulthen"


@dataclass(frozen=True)
class BoundStateModel:
    """Normalized reduced radial wavefunction of the deuteron ground state.

    kappa is the asymptotic decay constant sqrt(2 mu E_B)/(hbar c); the
    Hulthen form adds a short-range scale beta > kappa that makes u(0) = 0.
    """

    kind: ModelKind
    kappa_per_fm: float                # fm^-1
    norm: float                        # fm^-1/2, analytic normalization
    binding_energy_mev: float
    beta_per_fm: float | None = None   # fm^-1, Hulthen only

    def __post_init__(self) -> None:
        if self.kappa_per_fm <= 0:
            raise ValueError("kappa must be positive")
        if self.kind is ModelKind.HULTHEN:
            if self.beta_per_fm is None or self.beta_per_fm <= self.kappa_per_fm:
                raise ValueError("Hulthen model requires beta > kappa")
        elif self.beta_per_fm is not None:
            raise ValueError("beta is only meaningful for the Hulthen model")

    def u(self, r_fm):
        """Reduced radial wavefunction at r (fm); accepts scalars or arrays."""
        if self.kind is ModelKind.ZERO_RANGE:
            return self.norm * np.exp(-self.kappa_per_fm * r_fm)
        return self.norm * (
            np.exp(-self.kappa_per_fm * r_fm) - np.exp(-self.beta_per_fm * r_fm)
        )


@dataclass(frozen=True)
class SpectrumDensity:
    """k-resolved integrand of <r^2> over the final-state momentum."""

    k_per_fm: float
    density_fm3: float

    def __post_init__(self) -> None:
        if self.k_per_fm < 0:
            raise ValueError("k must be non-negative")
        if self.density_fm3 < 0:
            raise ValueError("density must be non-negative")


def binding_wavenumber(binding_energy_mev: float, constants: PhysicalConstants = CODATA) -> float:
    """kappa = sqrt(2 mu E_B)/(hbar c) in fm^-1."""
    if not (math.isfinite(binding_energy_mev) and binding_energy_mev > 0):
        raise ValueError(f"binding energy must be positive (got {binding_energy_mev!r})")
    return math.sqrt(2.0 * constants.reduced_mass_np_mev * binding_energy_mev) / constants.hbar_c_mev_fm


def build_zero_range(
    binding_energy_mev: float, constants: PhysicalConstants = CODATA
) -> BoundStateModel:
    """Zero-range model u(r) = sqrt(2 kappa) exp(-kappa r)."""
    kappa = binding_wavenumber(binding_energy_mev, constants)
    return BoundStateModel(
        kind=ModelKind.ZERO_RANGE,
        kappa_per_fm=kappa,
        norm=math.sqrt(2.0 * kappa),
        binding_energy_mev=binding_energy_mev,
    )


def build_hulthen(
    binding_energy_mev: float,
    beta_over_kappa: float = 6.163,
    constants: PhysicalConstants = CODATA,
) -> BoundStateModel:
    """Hulthen model u(r) = N (exp(-kappa r) - exp(-beta r)).

    N^2 = 2 kappa beta (kappa + beta) / (beta - kappa)^2 from the closed-form
    exponential integrals. beta/kappa must exceed 1 so u vanishes at the
    origin with the correct sign.
    """
    if not (math.isfinite(beta_over_kappa) and beta_over_kappa > 1.0):
        raise ValueError(f"beta_over_kappa must exceed 1 (got {beta_over_kappa!r})")
    kappa = binding_wavenumber(binding_energy_mev, constants)
    beta = beta_over_kappa * kappa
    norm_sq = 2.0 * kappa * beta * (kappa + beta) / (beta - kappa) ** 2
    return BoundStateModel(
        kind=ModelKind.HULTHEN,
        kappa_per_fm=kappa,
        norm=math.sqrt(norm_sq),
        binding_energy_mev=binding_energy_mev,
        beta_per_fm=beta,
    )


def mean_square_radius(model: BoundStateModel, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """<r^2> = int_0^inf r^2 u(r)^2 dr, converted to cm^2."""
    value, _ = integrate_radial(lambda r: r * r * float(model.u(r)) ** 2, 0.0, math.inf, spec)
    return value * CM2_PER_FM2


def dipole_radial_integral(
    model: BoundStateModel, k_per_fm: float, spec: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """Radial part of the dipole matrix element, int r^2 u(r) j_1(k r) dr."""
    if k_per_fm < 0:
        raise ValueError("k must be non-negative")
    if k_per_fm == 0.0:
        return 0.0
    if k_per_fm <= _OSCILLATORY_K_OVER_KAPPA * model.kappa_per_fm:
        value, _ = integrate_radial(
            lambda r: r * r * float(model.u(r)) * _j1(k_per_fm * r),
            0.0,
            math.inf,
            spec,
        )
        return value
    # j_1(x) = sin(x)/x^2 - cos(x)/x; at large k both pieces are clean
    # Fourier integrals of the exponentially decaying wavefunction
    r_max = _DECAY_CUTOFF / model.kappa_per_fm
    sin_part, _ = integrate_fourier(
        lambda r: float(model.u(r)), k_per_fm, "sin", 0.0, r_max, spec
    )
    cos_part, _ = integrate_fourier(
        lambda r: r * float(model.u(r)), k_per_fm, "cos", 0.0, r_max, spec
    )
    return sin_part / k_per_fm**2 - cos_part / k_per_fm


def legendre_dipole_weight(ell: int) -> float:
    """Legendre coefficient of cos(theta): (2l+1)/2 int_-1^1 mu P_l(mu) dmu.

    Evaluated by direct angular quadrature; it is 1 for l = 1 and 0 for
    every other partial wave, which is the dipole selection rule.
    """
    if ell < 0:
        raise ValueError("partial-wave index must be non-negative")
    # the integrand is bounded by 1, so an absolute tolerance is safe and
    # lets the exactly-zero projections converge
    angular = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-12)
    value, _ = integrate_radial(lambda mu: mu * eval_legendre(ell, mu), -1.0, 1.0, angular)
    return 0.5 * (2 * ell + 1) * value


def partial_wave_matrix_element(
    model: BoundStateModel,
    ell: int,
    k_per_fm: float,
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> float:
    """Contribution of final-state partial wave l to <k|r|psi> (fm^(5/2)).

    The full matrix element is the sum over l; parity restricts it to l = 1.
    """
    if k_per_fm <= 0:
        return 0.0
    radial, _ = integrate_radial(
        lambda r: r * r * float(model.u(r)) * spherical_jn(ell, k_per_fm * r),
        0.0,
        math.inf,
        spec,
    )
    return legendre_dipole_weight(ell) * radial


def spectrum_density(
    model: BoundStateModel, k_per_fm: float, spec: QuadratureSpec = DEFAULT_QUAD
) -> SpectrumDensity:
    """Momentum spectrum of the squared dipole matrix element.

    density(k) = (2/pi) k^2 I(k)^2 with I the dipole radial integral, so the
    completeness sum rule int_0^inf density dk = <r^2> holds in fm^2.
    """
    if k_per_fm < 0:
        raise ValueError("k must be non-negative")
    radial = dipole_radial_integral(model, k_per_fm, spec)
    density = (2.0 / math.pi) * k_per_fm**2 * radial**2
    return SpectrumDensity(k_per_fm=k_per_fm, density_fm3=density)


def default_k_grid(
    model: BoundStateModel,
    points: int = 200,
    lo_factor: float = 0.01,
    hi_factor: float = 20.0,
) -> np.ndarray:
    """Logarithmic k grid spanning the spectrum support set by kappa."""
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    kappa = model.kappa_per_fm
    return np.logspace(math.log10(lo_factor * kappa), math.log10(hi_factor * kappa), points)
