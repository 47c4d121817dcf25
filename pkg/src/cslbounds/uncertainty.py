"""Algebra of central values with asymmetric one-sigma errors.

Errors are treated as independent and Gaussian: combination is in
quadrature, separately for the up and down sides, and subtraction pairs
opposite sides because a negative term turns an upward fluctuation of the
subtrahend into a downward one of the difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class AsymmetricValue:
    """central +err_up/-err_down; both errors are magnitudes."""

    central: float
    err_up: float = 0.0
    err_down: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.central):
            raise ValueError(f"central value must be finite (got {self.central!r})")
        for name in ("err_up", "err_down"):
            e = getattr(self, name)
            if not (math.isfinite(e) and e >= 0):
                raise ValueError(f"{name} must be finite and non-negative (got {e!r})")

    def display(self, digits: int = 1) -> str:
        return f"{self.central:.{digits}f} +{self.err_up:.{digits}f}/-{self.err_down:.{digits}f}"


def combine_quadrature(a: AsymmetricValue, b: AsymmetricValue) -> AsymmetricValue:
    """Merge two error pairs on the same measurement (e.g. stat and syst)."""
    if a.central != b.central:
        raise ValueError("combine_quadrature merges errors of one measurement; centrals must match")
    return AsymmetricValue(
        central=a.central,
        err_up=math.hypot(a.err_up, b.err_up),
        err_down=math.hypot(a.err_down, b.err_down),
    )


def scale(v: AsymmetricValue, factor: float) -> AsymmetricValue:
    """Multiply central and both errors by a positive factor."""
    if not (math.isfinite(factor) and factor > 0):
        raise ValueError(f"scale factor must be positive (got {factor!r})")
    return AsymmetricValue(v.central * factor, v.err_up * factor, v.err_down * factor)


def add(a: AsymmetricValue, b: AsymmetricValue) -> AsymmetricValue:
    """Sum of independent values; same-sided errors add in quadrature."""
    return AsymmetricValue(
        central=a.central + b.central,
        err_up=math.hypot(a.err_up, b.err_up),
        err_down=math.hypot(a.err_down, b.err_down),
    )


def subtract(a: AsymmetricValue, b: AsymmetricValue) -> AsymmetricValue:
    """Difference a - b; b enters negatively so its error sides swap."""
    return AsymmetricValue(
        central=a.central - b.central,
        err_up=math.hypot(a.err_up, b.err_down),
        err_down=math.hypot(a.err_down, b.err_up),
    )


def one_sided_upper_limit(v: AsymmetricValue, n_sigma: float) -> float:
    """central + n_sigma * err_up.

    Only the upward error is relevant when the signal can only add counts.
    The central value is not clipped at zero.
    """
    if not (math.isfinite(n_sigma) and n_sigma >= 0):
        raise ValueError(f"n_sigma must be non-negative (got {n_sigma!r})")
    return v.central + n_sigma * v.err_up


def from_rate_per_day(rate: AsymmetricValue, days: float) -> AsymmetricValue:
    """Total over a live time from a per-day rate; all fields scale with days."""
    if not (math.isfinite(days) and days > 0):
        raise ValueError(f"days must be positive (got {days!r})")
    return AsymmetricValue(rate.central * days, rate.err_up * days, rate.err_down * days)
