"""
Power-series tables for the boundary functions near the plane.

Every boundary function can be written in terms of s = sigma², e = eta² as

    f = [A(e) cos X + N(s, e) D(e) sin X / sigma] / s,    X = 2 sigma g(eta)

with g(eta) = asinh(eta)/eta (times eta for the odd xz function). cos X and
sin X / sigma are power series in s, so the bracket is a power series
B_0(e) + B_1(e) s + ... whose leading term vanishes at e = 0. The closed form
loses digits to that cancellation for small sigma; here the s-series is summed
term by term and B_0(e)/s is taken from its own e-series when eta is small.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import binom, factorial

PAIRS = ("xx", "yy", "zz", "xz")
DIAGONAL_PAIRS = ("xx", "yy", "zz")


@dataclass(frozen=True)
class PairTerms:
    """Coefficients of one boundary function, polynomials in e = eta²."""

    cos_numerator: Tuple[float, ...]
    cos_power: float
    sin_constant: Tuple[float, ...]
    sin_linear: Tuple[float, ...]
    sin_power: float
    odd: bool = False


PAIR_TERMS = {
    "xx": PairTerms((2.0, 8.0), -2.0, (-1.0, -2.0, -4.0), (4.0, 4.0), -2.5),
    "yy": PairTerms((2.0, 4.0), -1.0, (-1.0,), (4.0, 4.0), -1.5),
    "zz": PairTerms((4.0, 2.0, 4.0), -2.0, (-2.0, -5.0), (0.0, 4.0, 4.0), -2.5),
    "xz": PairTerms((-2.0, 4.0), -2.0, (1.0, 4.0), (4.0, 4.0), -2.5, odd=True),
}


def _fit(coefficients, length: int) -> np.ndarray:
    c = np.asarray(coefficients, dtype=float)[:length]
    return np.pad(c, (0, length - len(c)))


def binomial_series(power: float, order: int) -> np.ndarray:
    """Coefficients of (1 + e)**power up to e**order."""
    k = np.arange(1, order + 1)
    return np.cumprod(np.r_[1.0, (power - k + 1) / k])


@lru_cache(maxsize=None)
def asinhc_coefficients(order: int) -> Tuple[float, ...]:
    """Series of asinh(eta)/eta in e = eta²: 1 - e/6 + 3e²/40 - ..."""
    k = np.arange(order + 1)
    return tuple((-1.0) ** k * binom(2 * k, k) / (4.0**k * (2 * k + 1)))


@lru_cache(maxsize=None)
def leading_coefficients(pair: str, order: int) -> Tuple[float, ...]:
    """e-series of the bracket's s**0 coefficient B_0(e); its constant term is exactly zero."""
    terms = PAIR_TERMS[pair]
    n = order + 1
    a = P.polymul(terms.cos_numerator, binomial_series(terms.cos_power, order))
    d = P.polymul(binomial_series(terms.sin_power, order), asinhc_coefficients(order))
    dn = P.polymul(d, terms.sin_constant)
    b0 = _fit(a, n) + 2.0 * _fit(dn, n)
    b0[0] = 0.0
    return tuple(b0)


def bracket_coefficients(pair: str, eta: float, g: float, order: int) -> np.ndarray:
    """B_0 .. B_order of the bracket at fixed eta, given g = asinh(eta)/eta."""
    terms = PAIR_TERMS[pair]
    e = eta * eta
    one_plus_e = 1.0 + e
    a = P.polyval(e, terms.cos_numerator) * one_plus_e**terms.cos_power
    d = one_plus_e**terms.sin_power
    n0 = P.polyval(e, terms.sin_constant)
    n1 = P.polyval(e, terms.sin_linear)

    j = np.arange(order + 1)
    powers = (-4.0 * g * g) ** j
    cos_c = powers / factorial(2 * j)
    sin_c = 2.0 * g * powers / factorial(2 * j + 1)
    sin_shifted = np.concatenate(([0.0], sin_c[:-1]))
    return a * cos_c + d * (n0 * sin_c + n1 * sin_shifted)


def series_value(pair: str, sigma: float, eta: float, g: float, order: int, eta_series: bool) -> float:
    """Sum the s-series of a boundary function.

    With eta_series the B_0(e)/s term comes from leading_coefficients, which is
    exact in floating point where the closed form cancels; otherwise it is
    evaluated directly (eta large enough that B_0 carries no cancellation).
    """
    b = bracket_coefficients(pair, eta, g, order)
    if eta_series:
        b0 = leading_coefficients(pair, order)
        ratio = eta / sigma
        leading = ratio * ratio * P.polyval(eta * eta, b0[1:])
    else:
        leading = b[0] / (sigma * sigma)
    value = float(leading + P.polyval(sigma * sigma, b[1:]))
    return eta * value if PAIR_TERMS[pair].odd else value
