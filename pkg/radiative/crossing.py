import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.optimize import brentq

from boundary_qed import settings

from .series import DIAGONAL_PAIRS
from .special_functions import DEFAULT_POLICY, EvalPolicy, NumericDomainError, nonthermal_term, reduce

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class CrossingResult:
    component: str
    omega: float
    a: float
    roots: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)

    def __repr__(self):
        return f"CrossingResult({self.component}, a/omega={self.a / self.omega:g}, {len(self.roots)} roots)"


def nonthermal_crossing(
    omega: float,
    a: float,
    component: str,
    z_range: tuple,
    max_roots: int = 10,
    points_per_period: int | None = None,
    policy: EvalPolicy = DEFAULT_POLICY,
) -> CrossingResult:
    """Distances z where a²/omega² - (3/16) f_ii(omega, z, a) changes sign.

    Sign changes are bracketed on a grid with points_per_period samples per
    oscillation period pi/omega and refined with Brent's method. An empty root
    list is a valid answer.
    """
    if component not in DIAGONAL_PAIRS:
        raise NumericDomainError(f"component must be one of {', '.join(DIAGONAL_PAIRS)}, got {component!r}")
    if not (omega > 0 and a > 0 and math.isfinite(omega) and math.isfinite(a)):
        raise NumericDomainError(f"omega and a must be positive, got omega={omega}, a={a}")
    z_lo, z_hi = z_range
    if not (0 < z_lo < z_hi and math.isfinite(z_hi)):
        raise NumericDomainError(f"z range must satisfy 0 < z_lo < z_hi, got {z_range}")
    points_per_period = points_per_period or settings.CROSSING_POINTS_PER_PERIOD

    def g(z):
        return nonthermal_term(component, reduce(omega, z, a), policy)

    periods = (z_hi - z_lo) * omega / math.pi
    count = max(2, math.ceil(periods * points_per_period) + 1)
    grid = np.linspace(z_lo, z_hi, count)
    values = np.array([g(z) for z in grid])

    tol = RESIDUAL_TOL * max(1.0, (a / omega) ** 2)
    roots, residuals = [], []
    for i in range(count - 1):
        if len(roots) >= max_roots:
            break
        left, right = values[i], values[i + 1]
        if left == 0:
            root = grid[i]
        elif left * right < 0:
            root = brentq(g, grid[i], grid[i + 1], xtol=1e-15 * grid[i + 1], rtol=4 * np.finfo(float).eps, maxiter=200)
        else:
            continue
        residual = abs(g(root))
        if residual > tol:
            logger.warning(f"Dropping root z={root:.17g}: residual {residual:.3g} above {tol:.3g}")
            continue
        roots.append(float(root))
        residuals.append(float(residual))

    logger.info(f"Found {len(roots)} nonthermal crossings for f_{component} at a/omega={a / omega:g}")
    return CrossingResult(component=component, omega=omega, a=a, roots=roots, residuals=residuals)
