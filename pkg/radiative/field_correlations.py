"""
Electric-field two-point functions along the atom's worldline.

Kernels are regularized by u -> u - i eps (minus branch) or u + i eps (plus
branch), u being the proper-time separation. Spatial indices are x (along the
motion), y, z (normal to the plane). Only xx, yy, zz and xz = zx are nonzero.
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .series import PAIRS
from .special_functions import NumericDomainError

logger = logging.getLogger(__name__)

MINUS = "minus"
PLUS = "plus"
BRANCHES = (MINUS, PLUS)

_INDEX = {"x": 0, "y": 1, "z": 2}


@dataclass(frozen=True)
class Inertial:
    """Motion parallel to the plane with constant velocity v; kernels do not depend on v."""

    v: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.v) or abs(self.v) >= 1:
            raise NumericDomainError(f"|v| must be below 1, got {self.v}")


@dataclass(frozen=True)
class UniformAcceleration:
    """Hyperbolic motion parallel to the plane with proper acceleration a."""

    a: float

    def __post_init__(self):
        if not math.isfinite(self.a) or self.a <= 0:
            raise NumericDomainError(f"acceleration must be positive, got {self.a}")


@dataclass(frozen=True)
class Trajectory:
    z: float
    kind: Union[Inertial, UniformAcceleration] = Inertial()

    def __post_init__(self):
        if not math.isfinite(self.z) or self.z <= 0:
            raise NumericDomainError(f"z must be positive, got {self.z}")

    @property
    def accelerated(self) -> bool:
        return isinstance(self.kind, UniformAcceleration)

    @property
    def accel(self) -> float:
        return self.kind.a if self.accelerated else 0.0

    def peak_offsets(self) -> tuple:
        """Proper-time separations where the boundary kernel is nearly singular."""
        if self.accelerated:
            half = 2.0 / self.accel * math.asinh(self.accel * self.z)
        else:
            half = 2.0 * self.z
        return (-half, half)


def _regularized(u, eps: float, branch: str) -> np.ndarray:
    if not eps > 0:
        raise NumericDomainError(f"eps must be positive, got {eps}")
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    u = np.asarray(u, dtype=float)
    return u - 1j * eps if branch == MINUS else u + 1j * eps


def _check_pair(pair: str):
    if pair not in PAIRS:
        raise NumericDomainError(f"pair must be one of {', '.join(PAIRS)}, got {pair!r}")


def boundary_component(traj: Trajectory, pair: str, u, eps: float, branch: str = MINUS) -> np.ndarray:
    """Reflected part of <E_i(u) E_j(0)>; vectorized over u."""
    _check_pair(pair)
    w = _regularized(u, eps, branch)
    u = w.real
    z = traj.z

    if not traj.accelerated:
        denominator = w * w - 4 * z * z
        if pair in ("xx", "yy"):
            return -(u * u + 4 * z * z) / (np.pi**2 * denominator**3)
        if pair == "zz":
            return (u * u - 4 * z * z) / (np.pi**2 * denominator**3)
        return np.zeros_like(w)

    a = traj.accel
    az2 = (a * z) ** 2
    sh2 = np.sinh(a * u / 2) ** 2
    ch2 = np.cosh(a * u / 2) ** 2
    if pair == "xx":
        numerator = sh2 + az2
    elif pair == "yy":
        numerator = sh2 + az2 * (ch2 + sh2)
    elif pair == "zz":
        numerator = -sh2 + az2 * (ch2 + sh2)
    else:
        numerator = 2 * a * z * sh2
    denominator = np.sinh(a * w / 2) ** 2 - az2
    return -(a**4) / (16 * np.pi**2) * numerator / denominator**3


def free_component(traj: Trajectory, pair: str, u, eps: float, branch: str = MINUS) -> np.ndarray:
    """Minkowski-vacuum <E_i(u) E_j(0)> in the atom frame; isotropic."""
    _check_pair(pair)
    w = _regularized(u, eps, branch)
    if pair == "xz":
        return np.zeros_like(w)
    if not traj.accelerated:
        return 1.0 / (np.pi**2 * w**4)
    a = traj.accel
    return a**4 / (16 * np.pi**2 * np.sinh(a * w / 2) ** 4)


def _matrix(component, traj: Trajectory, u: float, eps: float, branch: str) -> np.ndarray:
    g = np.zeros((3, 3), dtype=complex)
    for pair in PAIRS:
        i, j = _INDEX[pair[0]], _INDEX[pair[1]]
        value = complex(component(traj, pair, float(u), eps, branch))
        g[i, j] = value
        g[j, i] = value
    return g


def wightman_boundary(traj: Trajectory, u: float, eps: float, branch: str = MINUS) -> np.ndarray:
    return _matrix(boundary_component, traj, u, eps, branch)


def wightman_free(traj: Trajectory, u: float, eps: float, branch: str = MINUS) -> np.ndarray:
    return _matrix(free_component, traj, u, eps, branch)


def hadamard(traj: Trajectory, u: float, eps: float, free: bool = False) -> np.ndarray:
    """Symmetric combination (G_minus + G_plus)/2, a real matrix."""
    wightman = wightman_free if free else wightman_boundary
    return np.real(wightman(traj, u, eps, MINUS) + wightman(traj, u, eps, PLUS)) / 2


def pauli_jordan(traj: Trajectory, u: float, eps: float, free: bool = False) -> np.ndarray:
    """Antisymmetric combination (G_minus - G_plus)/2, a purely imaginary matrix."""
    wightman = wightman_free if free else wightman_boundary
    return 1j * np.imag(wightman(traj, u, eps, MINUS) - wightman(traj, u, eps, PLUS)) / 2
