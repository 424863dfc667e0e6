"""
Multilevel atom model.

An atom is described by:
1. Its levels (id and energy, natural units with hbar = c = 1)
2. Its dipole matrix elements <from|r|to>, complex 3-vectors in the frame where
   z is normal to the conducting plane and x points along the motion
3. The state whose energy change is being computed

Reverse dipole elements are implied by complex conjugation and may be omitted.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# Explicit reverse elements are compared to the conjugate with these tolerances
HERMITIAN_RTOL = 1e-12
HERMITIAN_ATOL = 1e-15


class AtomSpecError(ValueError):
    """Raised when an atom specification cannot be parsed or is invalid."""

    def __init__(self, message: str, violations: List[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class UnknownLevelError(KeyError):
    """Raised when a level id is not part of the atom specification."""


@dataclass(frozen=True)
class Level:
    id: str
    energy: float


@dataclass(frozen=True)
class DipoleElement:
    """Matrix element <source|r|target> in units of length."""

    source: str
    target: str
    vector: Tuple[complex, complex, complex]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vector, dtype=complex)


@dataclass(frozen=True)
class AtomSpec:
    name: str
    levels: Tuple[Level, ...]
    dipoles: Tuple[DipoleElement, ...]
    initial_state: str

    @property
    def energies(self) -> Dict[str, float]:
        return {level.id: level.energy for level in self.levels}

    def ground_state(self) -> str:
        """Id of the lowest level (first id in sort order on ties)."""
        return min(self.levels, key=lambda level: (level.energy, level.id)).id

    def with_scaled_energies(self, factor: float) -> "AtomSpec":
        levels = tuple(replace(level, energy=level.energy * factor) for level in self.levels)
        return replace(self, levels=levels)

    def with_scaled_dipoles(self, factor: float) -> "AtomSpec":
        dipoles = tuple(
            replace(d, vector=tuple(complex(c) * factor for c in d.vector))
            for d in self.dipoles
        )
        return replace(self, dipoles=dipoles)

    def __repr__(self):
        return f"AtomSpec({self.name!r}, {len(self.levels)} levels, {len(self.dipoles)} dipoles)"


@dataclass(frozen=True, eq=False)
class Transition:
    """Channel from the state b to another level d.

    omega = E_b - E_d is positive for deexcitation and negative for excitation.
    polarization_tensor is P_ij = Re(<b|r_i|d><d|r_j|b>).
    """

    level: str
    omega: float
    polarization_tensor: np.ndarray = field(repr=False)

    @property
    def channel(self) -> str:
        return "deexcitation" if self.omega > 0 else "excitation"


def validate(spec: AtomSpec) -> List[str]:
    """Return every invariant violation of the atom description; an empty list means valid."""
    violations = []

    seen = set()
    for level in spec.levels:
        if level.id in seen:
            violations.append(f"duplicate level id {level.id!r}")
        seen.add(level.id)
        if not math.isfinite(level.energy):
            violations.append(f"level {level.id!r} has non-finite energy {level.energy}")

    if spec.initial_state not in seen:
        violations.append(f"initial_state {spec.initial_state!r} is not a level id")

    by_pair: Dict[frozenset, List[DipoleElement]] = {}
    for dipole in spec.dipoles:
        label = f"dipole {dipole.source!r}->{dipole.target!r}"
        for ref in (dipole.source, dipole.target):
            if ref not in seen:
                violations.append(f"{label} references unknown level {ref!r}")
        if dipole.source == dipole.target:
            violations.append(f"{label} connects a level to itself")
            continue
        if len(dipole.vector) != 3:
            violations.append(f"{label} must have 3 components, got {len(dipole.vector)}")
            continue
        vector = dipole.as_array()
        if not np.all(np.isfinite(vector)):
            violations.append(f"{label} has non-finite components")
            continue
        by_pair.setdefault(frozenset((dipole.source, dipole.target)), []).append(dipole)

    for elements in by_pair.values():
        if len(elements) == 1:
            continue
        first, *rest = elements
        if len(rest) > 1 or rest[0].source == first.source:
            violations.append(
                f"more than one dipole element between {first.source!r} and {first.target!r}"
            )
            continue
        other = rest[0]
        if not np.allclose(
            other.as_array(), first.as_array().conj(), rtol=HERMITIAN_RTOL, atol=HERMITIAN_ATOL
        ):
            violations.append(
                f"dipole {other.source!r}->{other.target!r} is not the complex conjugate "
                f"of {first.source!r}->{first.target!r} (Hermiticity)"
            )

    return violations


def transitions_from(spec: AtomSpec, b: str) -> List[Transition]:
    """One Transition per level d != b with a nonzero dipole to b, ordered by level id."""
    energies = spec.energies
    if b not in energies:
        raise UnknownLevelError(b)

    elements: Dict[str, np.ndarray] = {}
    for dipole in spec.dipoles:
        if dipole.source == b:
            other, vector = dipole.target, dipole.as_array()
        elif dipole.target == b:
            other, vector = dipole.source, dipole.as_array().conj()
        else:
            continue
        # An explicit reverse element carries the same information
        elements.setdefault(other, vector)

    transitions = []
    for d in sorted(elements):
        m = elements[d]
        if not np.any(m):
            continue
        tensor = np.real(np.outer(m, m.conj()))
        transitions.append(Transition(level=d, omega=energies[b] - energies[d], polarization_tensor=tensor))

    logger.debug(f"{len(transitions)} transitions from {b!r} in {spec.name!r}")
    return transitions
