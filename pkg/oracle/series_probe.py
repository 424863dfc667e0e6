"""
Numerical Taylor coefficients of a black-box function.

Used to check the analytic small-acceleration and small-distance expansions
without relying on the algebra that produced them.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P

logger = logging.getLogger(__name__)

CENTRAL = "central"
FORWARD = "forward"
BACKWARD = "backward"
DIRECTIONS = (CENTRAL, FORWARD, BACKWARD)


class SeriesProbeError(ArithmeticError):
    """Raised when the extrapolated coefficients have not converged."""


@dataclass(frozen=True)
class ProbeResult:
    t0: float
    direction: str
    coefficients: Tuple[float, ...]
    errors: Tuple[float, ...]

    def coefficient(self, k: int) -> float:
        return self.coefficients[k]


def _nodes(direction: str, count: int) -> np.ndarray:
    """Chebyshev points of the first kind mapped onto the one-sided or two-sided unit interval.

    count is even, so x = 0 (the expansion point) is never sampled.
    """
    x = C.chebpts1(count)
    if direction == FORWARD:
        return (x + 1) / 2
    if direction == BACKWARD:
        return (x - 1) / 2
    return x


def _scaled_fit(f: Callable[[float], float], t0: float, h: float, degree: int, direction: str) -> np.ndarray:
    count = 2 * (degree + 1)
    x = _nodes(direction, count)
    values = np.array([f(t0 + h * xi) for xi in x], dtype=float)
    if not np.all(np.isfinite(values)):
        raise SeriesProbeError(f"non-finite samples near t0={t0:g} at step {h:g}")
    b = P.polyfit(x, values, degree)
    return b / h ** np.arange(degree + 1)


def _richardson(estimates: np.ndarray, ratio: float, first_power: int) -> Tuple[float, float]:
    """Richardson table over the levels; returns the final diagonal entry and its change."""
    levels = len(estimates)
    table = [[float(e)] for e in estimates]
    for j in range(1, levels):
        factor = ratio ** (first_power + j - 1) - 1
        for m in range(j, levels):
            previous = table[m][j - 1]
            table[m].append(previous + (previous - table[m - 1][j - 1]) / factor)
    best = table[-1][-1]
    return best, abs(best - table[-2][-2])


def series_probe(
    f: Callable[[float], float],
    t0: float,
    order: int,
    direction: str = CENTRAL,
    h0: float = 0.1,
    levels: int = 4,
    ratio: float = 2.0,
    floor: float | None = None,
) -> ProbeResult:
    """Taylor coefficients c_0 .. c_order of f about t0.

    Parameters
    ----------
    f : callable
        Scalar function. For a one-sided direction it is only sampled on that side.
    t0 : float
        Expansion point; f(t0) itself is never evaluated.
    order : int
        Highest coefficient returned.
    direction : str
        'central', 'forward' (t > t0) or 'backward' (t < t0).
    h0, levels, ratio : float, int, float
        Sampling half-widths h0, h0/ratio, ... over `levels` levels.
    floor : float, optional
        Absolute error accepted on a coefficient that is itself near zero.

    Returns
    -------
    ProbeResult
        Coefficients with error estimates from the last Richardson step.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {', '.join(DIRECTIONS)}, got {direction!r}")
    if order < 0 or levels < 2 or ratio <= 1 or not h0 > 0:
        raise ValueError(f"invalid probe parameters order={order}, levels={levels}, ratio={ratio}, h0={h0}")

    degree = order + 2
    fits = np.array([_scaled_fit(f, t0, h0 / ratio**m, degree, direction) for m in range(levels)])

    coefficients, errors = [], []
    for k in range(order + 1):
        value, error = _richardson(fits[:, k], ratio, degree + 1 - k)
        coefficients.append(value)
        errors.append(error)

    scale = max(abs(c) for c in coefficients)
    floor = 1e-8 * scale + 1e-14 if floor is None else floor
    for k, (value, error) in enumerate(zip(coefficients, errors)):
        if error > max(abs(value), floor) or not math.isfinite(value):
            raise SeriesProbeError(f"coefficient c_{k} = {value:.6g} did not converge (error {error:.3g})")
    logger.debug(f"probe at t0={t0:g} ({direction}): {', '.join(f'{c:.10g}' for c in coefficients)}")
    return ProbeResult(t0=t0, direction=direction, coefficients=tuple(coefficients), errors=tuple(errors))
