"""
Fourier transforms of the regularized field kernels by direct quadrature.

For each regulator eps on a ladder, the integral

    I(eps) = integral of K(u; eps) exp(i omega u) du

is computed with QUADPACK's oscillatory routines on panels that resolve the
near-singular peaks of K, and the ladder is extrapolated to eps -> 0. This is
independent of the residue calculus behind the closed-form rates.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.integrate import quad

from boundary_qed import settings
from radiative.field_correlations import MINUS, Trajectory, boundary_component, free_component

logger = logging.getLogger(__name__)

HADAMARD = "hadamard"
PAULI_JORDAN = "pauli_jordan"
FREE_HADAMARD = "free_hadamard"
FREE_PAULI_JORDAN = "free_pauli_jordan"
KINDS = (HADAMARD, PAULI_JORDAN, FREE_HADAMARD, FREE_PAULI_JORDAN)
KIND_ALIASES = {"wightman_free_hadamard": FREE_HADAMARD, "wightman_free_pauli_jordan": FREE_PAULI_JORDAN}


class QuadratureError(RuntimeError):
    """Raised when a Fourier integral cannot be trusted."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Regulator ladder (in units of 1/|omega|) and tolerances for the oracle."""

    eps_ladder: Tuple[float, ...] = settings.EPS_LADDER
    half_range_L: Optional[float] = None
    abs_tol: float = settings.QUAD_ABS_TOL
    rel_tol: float = settings.QUAD_REL_TOL
    max_subdivisions: int = settings.MAX_SUBDIVISIONS
    panel_rel_tol: float = 1e-10

    def __post_init__(self):
        ladder = tuple(float(e) for e in self.eps_ladder)
        object.__setattr__(self, "eps_ladder", ladder)
        if len(ladder) < 3:
            raise ValueError(f"eps_ladder needs at least 3 values, got {len(ladder)}")
        if any(e <= 0 for e in ladder) or any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError(f"eps_ladder must be positive and strictly decreasing, got {ladder}")
        if self.half_range_L is not None and not self.half_range_L > 0:
            raise ValueError(f"half_range_L must be positive, got {self.half_range_L}")
        if self.abs_tol <= 0 or self.rel_tol <= 0 or self.panel_rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be positive, got {self.max_subdivisions}")


@dataclass(frozen=True)
class FourierResult:
    value: float
    error: float
    curve: Tuple[Tuple[float, float], ...] = field(default=())


def _kernel_parts(traj: Trajectory, pair: str, kind: str, eps: float) -> Tuple[Optional[Callable], Optional[Callable]]:
    """(real part, imaginary part) of the kernel as scalar functions of u; None when identically zero."""
    component = free_component if kind in (FREE_HADAMARD, FREE_PAULI_JORDAN) else boundary_component

    def wightman(u):
        return complex(component(traj, pair, u, eps, MINUS))

    if kind in (HADAMARD, FREE_HADAMARD):
        return (lambda u: wightman(u).real), None
    return None, (lambda u: wightman(u).imag)


def peak_positions(traj: Trajectory, kind: str) -> List[float]:
    if kind in (FREE_HADAMARD, FREE_PAULI_JORDAN):
        return [0.0]
    return sorted(traj.peak_offsets())


def auto_half_range(traj: Trajectory, kind: str, omega: float, eps: float) -> float:
    """Half width of the finite integration window."""
    if traj.accelerated:
        a = traj.accel
        if kind in (FREE_HADAMARD, FREE_PAULI_JORDAN):
            return 10.0 / a
        return 2.0 / a * (5.0 + math.asinh(a * traj.z))
    reach = max(abs(p) for p in peak_positions(traj, kind))
    return max(4.0 * reach, 16.0 / abs(omega), 20.0 * eps)


def panel_nodes(peaks: List[float], eps: float, omega: float, L: float) -> np.ndarray:
    """Panel boundaries on [-L, L], fine near each peak and geometrically coarser away from it."""
    h = min(eps / 10.0, math.pi / (8.0 * abs(omega)))
    nodes = {-L, L}
    for i, peak in enumerate(peaks):
        left = (peak - peaks[i - 1]) / 2 if i > 0 else peak + L
        right = (peaks[i + 1] - peak) / 2 if i < len(peaks) - 1 else L - peak
        nodes.add(peak)
        for direction, reach in ((-1.0, left), (1.0, right)):
            distance = 0.0
            while distance + h < min(eps, reach):
                distance += h
                nodes.add(peak + direction * distance)
            distance = max(distance, h)
            while 2 * distance < reach:
                distance *= 2
                nodes.add(peak + direction * distance)
            nodes.add(peak + direction * reach)
    return np.array(sorted(n for n in nodes if -L <= n <= L))


def _quad(func, a, b, weight, omega_abs, cfg: QuadratureConfig, tail: bool = False):
    kwargs = dict(weight=weight, wvar=omega_abs, full_output=1)
    if tail:
        b = np.inf
        result = quad(func, a, np.inf, epsabs=cfg.abs_tol * 1e-1, limlst=100, limit=cfg.max_subdivisions, **kwargs)
    else:
        result = quad(
            func, a, b, epsabs=cfg.abs_tol * 1e-2, epsrel=cfg.panel_rel_tol, limit=cfg.max_subdivisions, **kwargs
        )
    value, error = result[0], result[1]
    if len(result) > 3:
        message = str(result[3])
        if "maximum number of subdivisions" in message:
            raise QuadratureError(f"quadrature on [{a:g}, {b:g}] did not converge: {message}")
        logger.warning(f"QUADPACK on [{a:g}, {b:g}]: {message.splitlines()[0]}")
    return value, error


def _integrate(func, sign: float, nodes: np.ndarray, omega_abs: float, cfg: QuadratureConfig, tails: bool):
    """cos and sin transforms of func over the panels (and the infinite tails when requested)."""
    cos_total, sin_total, error = [], [], 0.0
    for a, b in zip(nodes[:-1], nodes[1:]):
        c, ec = _quad(func, a, b, "cos", omega_abs, cfg)
        s, es = _quad(func, a, b, "sin", omega_abs, cfg)
        cos_total.append(c)
        sin_total.append(s)
        error += ec + es
    if tails:
        L = nodes[-1]
        mirrored = lambda u: func(-u)
        for f, parity in ((func, 1.0), (mirrored, -1.0)):
            c, ec = _quad(f, L, None, "cos", omega_abs, cfg, tail=True)
            s, es = _quad(f, L, None, "sin", omega_abs, cfg, tail=True)
            cos_total.append(c)
            sin_total.append(parity * s)
            error += ec + es
    return math.fsum(cos_total), sign * math.fsum(sin_total), error


def _check_frequency(omega: float):
    if omega == 0 or not math.isfinite(omega):
        raise ValueError(f"omega must be finite and nonzero, got {omega}")


def fourier_at(traj: Trajectory, pair: str, omega: float, kind: str, eps: float, cfg: QuadratureConfig) -> Tuple[float, float]:
    """Integral of K(u; eps) exp(i omega u) du at a single regulator value; returns (real part, error)."""
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}")
    _check_frequency(omega)

    omega_abs, sign = abs(omega), math.copysign(1.0, omega)
    L = cfg.half_range_L or auto_half_range(traj, kind, omega, eps)
    nodes = panel_nodes(peak_positions(traj, kind), eps, omega, L)
    tails = not traj.accelerated
    real_part, imag_part = _kernel_parts(traj, pair, kind, eps)

    real, imag, error = 0.0, 0.0, 0.0
    if real_part is not None:
        c, s, e = _integrate(real_part, sign, nodes, omega_abs, cfg, tails)
        real, imag, error = real + c, imag + s, error + e
    if imag_part is not None:
        c, s, e = _integrate(imag_part, sign, nodes, omega_abs, cfg, tails)
        real, imag, error = real - s, imag + c, error + e

    if abs(imag) > max(cfg.abs_tol, cfg.rel_tol * abs(real)):
        raise QuadratureError(
            f"imaginary residual {imag:.3g} of the {kind} {pair} transform exceeds tolerance (real part {real:.6g})"
        )
    logger.debug(f"{kind} {pair} omega={omega:g} eps={eps:g}: {len(nodes) - 1} panels, value {real:.12g}")
    return real, error


def extrapolate_to_zero(eps: List[float], values: List[float]) -> Tuple[float, float]:
    """Polynomial extrapolation of the ladder to eps = 0; error from the spread against a linear fit."""
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=float)
    degree = min(2, len(eps) - 1)
    limit = P.polyfit(eps, values, degree)[0]
    linear = P.polyfit(eps[-2:], values[-2:], 1)[0]
    return float(limit), float(abs(limit - linear))


def fourier_transform(
    traj: Trajectory, pair: str, omega: float, kind: str | Tuple[str, ...], cfg: QuadratureConfig | None = None
) -> FourierResult:
    """Transform extrapolated over the regulator ladder.

    A tuple of kinds is summed at each regulator before extrapolating.
    """
    _check_frequency(omega)
    cfg = cfg or QuadratureConfig()
    kinds = (kind,) if isinstance(kind, str) else tuple(kind)
    ladder = [e / abs(omega) for e in cfg.eps_ladder]
    values, errors = [], []
    for eps in ladder:
        parts = [fourier_at(traj, pair, omega, k, eps, cfg) for k in kinds]
        values.append(math.fsum(v for v, _ in parts))
        errors.append(sum(e for _, e in parts))
    limit, spread = extrapolate_to_zero(ladder, values)
    return FourierResult(value=limit, error=max(errors) + spread, curve=tuple(zip(ladder, values)))


def fourier_kernel(traj: Trajectory, pair: str, omega: float, kind: str, cfg: QuadratureConfig | None = None) -> Tuple[float, float]:
    """eps -> 0 limit of the Fourier transform of a kernel component and its error estimate."""
    result = fourier_transform(traj, pair, omega, kind, cfg)
    return result.value, result.error
