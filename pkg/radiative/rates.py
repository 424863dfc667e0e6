"""
Rates of change of the mean atomic energy near a conducting plane.

For every transition b -> d of the atom and every nonzero field component pair
the breakdown holds:
1. Boundary vacuum-fluctuation and radiation-reaction contributions
2. The unbounded (Minkowski vacuum) total, which is isotropic

Values are in natural units (inverse length squared) and already multiplied
by the coupling e², which is recorded on the breakdown.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

from atoms.atom_model import AtomSpec, AtomSpecError, Transition, transitions_from, validate
from boundary_qed import settings

from .field_correlations import Inertial, Trajectory, UniformAcceleration
from .series import DIAGONAL_PAIRS, PAIRS
from .special_functions import DEFAULT_POLICY, EvalPolicy, NumericDomainError, boundary_factor, planck_n

logger = logging.getLogger(__name__)

VF = "vf"
RR = "rr"
TOTAL = "total"
BOUNDARY = "boundary"
UNBOUNDED = "unbounded"
DEEXCITATION = "deexcitation"
EXCITATION = "excitation"

_INDEX = {"x": 0, "y": 1, "z": 2}


@dataclass(frozen=True)
class RateEntry:
    """One rate contribution, split into its zero-temperature and Planck-factor parts."""

    level: str
    omega: float
    pair: str
    mechanism: str
    part: str
    channel: str
    vacuum: float
    thermal: float = 0.0

    @property
    def rate(self) -> float:
        return self.vacuum + self.thermal


@dataclass(frozen=True)
class RateBreakdown:
    state: str
    coupling: float
    entries: Tuple[RateEntry, ...]
    z: float = math.inf
    accel: float = 0.0

    def select(self, **filters) -> List[RateEntry]:
        """Entries whose fields equal every given filter, e.g. select(part="boundary")."""
        return [e for e in self.entries if all(getattr(e, k) == v for k, v in filters.items())]

    def total(self, **filters) -> float:
        """Exactly rounded sum of the selected entries."""
        entries = self.select(**filters)
        return math.fsum([e.vacuum for e in entries] + [e.thermal for e in entries])

    def rows(self) -> List[tuple]:
        return [(e.omega, e.pair, e.mechanism, e.part, e.channel, e.rate) for e in self.entries]

    def __repr__(self):
        return f"RateBreakdown({self.state!r}, {len(self.entries)} entries, total={self.total():.6g})"


def pair_weight(pair: str) -> int:
    """xz and zx contribute equally to the double sum over field components."""
    return 1 if pair[0] == pair[1] else 2


def polarization(transition: Transition, pair: str) -> float:
    return float(transition.polarization_tensor[_INDEX[pair[0]], _INDEX[pair[1]]])


def _checked_transitions(spec: AtomSpec, b: str) -> List[Transition]:
    violations = validate(spec)
    if violations:
        raise AtomSpecError(f"atom {spec.name!r} is invalid", violations)
    return transitions_from(spec, b)


def _boundary_entries(t: Transition, pair: str, traj: Trajectory, policy: EvalPolicy) -> List[RateEntry]:
    omega = t.omega
    channel = t.channel
    if omega == 0:
        base, n = 0.0, 0.0
    else:
        f = boundary_factor(pair, omega, traj.z, traj.accel, policy)
        base = omega**4 * pair_weight(pair) * polarization(t, pair) * f / (32 * math.pi)
        n = planck_n(abs(omega), traj.accel)
    sign = 1.0 if omega >= 0 else -1.0
    return [
        RateEntry(t.level, omega, pair, VF, BOUNDARY, channel, sign * base, sign * 2 * base * n),
        RateEntry(t.level, omega, pair, RR, BOUNDARY, channel, base),
    ]


def _unbounded_entry(t: Transition, pair: str, accel: float) -> RateEntry:
    omega = t.omega
    channel = t.channel
    if omega == 0:
        return RateEntry(t.level, omega, pair, TOTAL, UNBOUNDED, channel, 0.0)
    w = abs(omega)
    n = planck_n(w, accel)
    unit = w**4 * polarization(t, pair) * (1 + (accel / w) ** 2) / (3 * math.pi)
    if omega > 0:
        return RateEntry(t.level, omega, pair, TOTAL, UNBOUNDED, channel, -unit, -unit * n)
    return RateEntry(t.level, omega, pair, TOTAL, UNBOUNDED, channel, 0.0, unit * n)


def _scaled(entries: List[RateEntry], coupling: float) -> Tuple[RateEntry, ...]:
    return tuple(
        RateEntry(e.level, e.omega, e.pair, e.mechanism, e.part, e.channel, coupling * e.vacuum, coupling * e.thermal)
        for e in entries
    )


def rate_for_trajectory(
    spec: AtomSpec,
    b: str,
    traj: Trajectory,
    coupling: float | None = None,
    policy: EvalPolicy = DEFAULT_POLICY,
) -> RateBreakdown:
    """Full breakdown (boundary and unbounded) for an atom in state b on traj."""
    coupling = settings.COUPLING if coupling is None else coupling
    pairs = PAIRS if traj.accelerated else DIAGONAL_PAIRS
    entries = []
    for t in _checked_transitions(spec, b):
        for pair in pairs:
            entries.extend(_boundary_entries(t, pair, traj, policy))
            if pair in DIAGONAL_PAIRS:
                entries.append(_unbounded_entry(t, pair, traj.accel))
    logger.debug(f"{len(entries)} rate entries for {spec.name!r} in {b!r} at z={traj.z:g}, a={traj.accel:g}")
    return RateBreakdown(state=b, coupling=coupling, entries=_scaled(entries, coupling), z=traj.z, accel=traj.accel)


def rate_inertial(
    spec: AtomSpec,
    b: str,
    z: float,
    v: float = 0.0,
    coupling: float | None = None,
    policy: EvalPolicy = DEFAULT_POLICY,
) -> RateBreakdown:
    """Atom at rest or in uniform motion at distance z from the plane."""
    return rate_for_trajectory(spec, b, Trajectory(z, Inertial(v)), coupling, policy)


def rate_accelerated(
    spec: AtomSpec,
    b: str,
    z: float,
    a: float,
    coupling: float | None = None,
    policy: EvalPolicy = DEFAULT_POLICY,
) -> RateBreakdown:
    """Atom with proper acceleration a parallel to the plane at distance z."""
    return rate_for_trajectory(spec, b, Trajectory(z, UniformAcceleration(a)), coupling, policy)


def unbounded_rate(spec: AtomSpec, b: str, a: float = 0.0, coupling: float | None = None) -> RateBreakdown:
    """Minkowski-vacuum totals only; a = 0 is the inertial case."""
    if not math.isfinite(a) or a < 0:
        raise NumericDomainError(f"acceleration must be non-negative, got {a}")
    coupling = settings.COUPLING if coupling is None else coupling
    entries = [
        _unbounded_entry(t, pair, a)
        for t in _checked_transitions(spec, b)
        for pair in DIAGONAL_PAIRS
    ]
    return RateBreakdown(state=b, coupling=coupling, entries=_scaled(entries, coupling), accel=a)
