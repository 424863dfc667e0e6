"""
Boundary functions and thermal factors.

All boundary functions depend on the reduced variables sigma = |omega| z and
eta = a z only. They are evaluated:
1. In closed form when sigma is above the series threshold
2. From the power series of radiative.series near the plane
3. With asinh(eta)/eta taken from its Taylor series when eta is small
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from boundary_qed import settings

from . import series
from .series import DIAGONAL_PAIRS, PAIRS

logger = logging.getLogger(__name__)

# 2 pi omega / a beyond which the Planck factor underflows to zero
PLANCK_EXPONENT_LIMIT = 700.0


class NumericDomainError(ValueError):
    """Raised when an argument lies outside the domain of a function."""


def _require_finite(**values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise NumericDomainError(f"{name} must be finite, got {value}")


def _require_pair(pair: str, allowed=PAIRS):
    if pair not in allowed:
        raise NumericDomainError(f"pair must be one of {', '.join(allowed)}, got {pair!r}")


@dataclass(frozen=True)
class ReducedPoint:
    sigma: float
    eta: float = 0.0

    def __post_init__(self):
        _require_finite(sigma=self.sigma, eta=self.eta)
        if self.sigma <= 0:
            raise NumericDomainError(f"sigma must be positive, got {self.sigma}")
        if self.eta < 0:
            raise NumericDomainError(f"eta must be non-negative, got {self.eta}")

    @property
    def ratio(self) -> float:
        """eta / sigma = a / |omega|."""
        return self.eta / self.sigma


@dataclass(frozen=True)
class EvalPolicy:
    series_threshold_sigma: float = settings.SERIES_THRESHOLD_SIGMA
    series_threshold_eta: float = settings.SERIES_THRESHOLD_ETA
    series_order: int = settings.SERIES_ORDER

    def __post_init__(self):
        for name in ("series_threshold_sigma", "series_threshold_eta"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
        if self.series_order < 4:
            raise ValueError(f"series_order must be at least 4, got {self.series_order}")


DEFAULT_POLICY = EvalPolicy()


def reduce(omega: float, z: float, a: float = 0.0) -> ReducedPoint:
    """Map (omega, z, a) to (sigma, eta). The functions are even in omega."""
    _require_finite(omega=omega, z=z, a=a)
    if z <= 0:
        raise NumericDomainError(f"z must be positive, got {z}")
    if omega == 0:
        raise NumericDomainError("omega must be nonzero")
    if a < 0:
        raise NumericDomainError(f"acceleration must be non-negative, got {a}")
    return ReducedPoint(sigma=abs(omega) * z, eta=a * z)


def asinhc(eta: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """asinh(eta) / eta, continuous at eta = 0."""
    if eta < policy.series_threshold_eta:
        return float(np.polynomial.polynomial.polyval(eta * eta, series.asinhc_coefficients(policy.series_order)))
    return math.asinh(eta) / eta


def _fx_closed(sigma: float) -> float:
    return 2.0 / sigma**2 * math.cos(2 * sigma) + (4 * sigma**2 - 1) / sigma**3 * math.sin(2 * sigma)


def _fz_closed(sigma: float) -> float:
    return 4.0 / sigma**2 * math.cos(2 * sigma) - 2.0 / sigma**3 * math.sin(2 * sigma)


def _check_sigma(sigma: float):
    _require_finite(sigma=sigma)
    if sigma <= 0:
        raise NumericDomainError(f"sigma must be positive, got {sigma}")


def f_x(sigma: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Inertial boundary function for dipoles parallel to the plane."""
    _check_sigma(sigma)
    if sigma < policy.series_threshold_sigma:
        return series.series_value("xx", sigma, 0.0, 1.0, policy.series_order, eta_series=True)
    return _fx_closed(sigma)


f_y = f_x


def f_z(sigma: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Inertial boundary function for dipoles normal to the plane."""
    _check_sigma(sigma)
    if sigma < policy.series_threshold_sigma:
        return series.series_value("zz", sigma, 0.0, 1.0, policy.series_order, eta_series=True)
    return _fz_closed(sigma)


def closed_form_value(pair: str, p: ReducedPoint, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Accelerated boundary function straight from its closed form."""
    _require_pair(pair)
    terms = series.PAIR_TERMS[pair]
    sigma, eta = p.sigma, p.eta
    e = eta * eta
    poly = np.polynomial.polynomial.polyval
    phase = 2.0 * sigma * asinhc(eta, policy)
    cos_part = poly(e, terms.cos_numerator) * (1 + e) ** terms.cos_power * math.cos(phase)
    numerator = poly(e, terms.sin_constant) + sigma * sigma * poly(e, terms.sin_linear)
    sin_part = numerator * (1 + e) ** terms.sin_power * math.sin(phase) / sigma
    value = float((cos_part + sin_part) / (sigma * sigma))
    return eta * value if terms.odd else value


def series_value(pair: str, p: ReducedPoint, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Accelerated boundary function from its small-sigma series."""
    _require_pair(pair)
    eta_small = p.eta < policy.series_threshold_eta
    return series.series_value(
        pair, p.sigma, p.eta, asinhc(p.eta, policy), policy.series_order, eta_series=eta_small
    )


def f_accel(pair: str, p: ReducedPoint, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Boundary function f_xx, f_yy, f_zz or f_xz of a uniformly accelerated atom."""
    _require_pair(pair)
    if p.eta == 0:
        if pair == "xz":
            return 0.0
        return f_z(p.sigma, policy) if pair == "zz" else f_x(p.sigma, policy)
    if p.sigma < policy.series_threshold_sigma:
        logger.debug(f"series branch for f_{pair} at sigma={p.sigma:g}, eta={p.eta:g}")
        return series_value(pair, p, policy)
    return closed_form_value(pair, p, policy)


def boundary_factor(pair: str, omega: float, z: float, a: float = 0.0, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """f_ij for a transition frequency omega at distance z with acceleration a (a = 0: inertial)."""
    return f_accel(pair, reduce(omega, z, a), policy)


def planck_n(omega: float, accel: float) -> float:
    """Bose-Einstein factor 1/(exp(2 pi omega / a) - 1) of the Unruh temperature a/2pi."""
    _require_finite(omega=omega, accel=accel)
    if omega <= 0:
        raise NumericDomainError(f"omega must be positive, got {omega}")
    if accel < 0:
        raise NumericDomainError(f"acceleration must be non-negative, got {accel}")
    if accel == 0:
        return 0.0
    exponent = 2.0 * math.pi * omega / accel
    if exponent > PLANCK_EXPONENT_LIMIT:
        return 0.0
    return 1.0 / math.expm1(exponent)


def small_a_correction(pair: str, sigma: float, omega: float) -> float:
    """Leading small-acceleration coefficient of f_ij at sigma = |omega| z.

    Returns the a² coefficient for xx, yy and zz and the a¹ coefficient for xz,
    in the units of 1/omega² and 1/omega respectively.
    """
    _require_pair(pair)
    _check_sigma(sigma)
    _require_finite(omega=omega)
    if omega == 0:
        raise NumericDomainError("omega must be nonzero")
    w = abs(omega)
    c, s = math.cos(2 * sigma), math.sin(2 * sigma)
    s2 = sigma * sigma
    if pair == "xx":
        return ((13 - 4 * s2) / 3 * c + (3 - 32 * s2) / (6 * sigma) * s) / w**2
    if pair == "yy":
        return ((7 - 4 * s2) / 3 * c + (9 - 8 * s2) / (6 * sigma) * s) / w**2
    if pair == "zz":
        return (16 * sigma / 3 * s - 16.0 / 3 * c) / w**2
    return ((4 * s2 + 1) / s2 * s - 2.0 / sigma * c) / w


def small_z_coefficients(pair: str, omega: float, a: float) -> tuple:
    """Leading small-z behaviour near the plane.

    For xx, yy, zz returns (constant, z² coefficient) of
    1 + a²/omega² - (3/16) f_ii; for xz returns (0, linear coefficient of f_xz).
    """
    _require_pair(pair)
    _require_finite(omega=omega, a=a)
    w2, a2 = omega * omega, a * a
    if pair == "xx":
        return 0.0, 4 * a2 + 16 * a2 * a2 / (5 * w2) + 4 * w2 / 5
    if pair == "yy":
        return 0.0, 2 * a2 + 6 * a2 * a2 / (5 * w2) + 4 * w2 / 5
    if pair == "zz":
        return 2 * (1 + a2 / w2), -(4 * a2 + 18 * a2 * a2 / (5 * w2) + 2 * w2 / 5)
    return 0.0, 32.0 / 3 * a * (1 + a2 / w2)


def nonthermal_term(pair: str, p: ReducedPoint, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """a²/omega² - (3/16) f_ii; the nonthermal part of the rate vanishes at its zeros."""
    _require_pair(pair, DIAGONAL_PAIRS)
    return p.ratio**2 - 3.0 / 16.0 * f_accel(pair, p, policy)
