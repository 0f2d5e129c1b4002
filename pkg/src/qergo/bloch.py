"""Qubit state representation and closed-form ergotropy observables.

The Hamiltonian is fixed to ``H = -sigma_z`` (levels -1 and +1), so the
ground state sits at the north pole of the Bloch sphere and ``U = -z``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PHYS_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
HAMILTONIAN = -SIGMA_Z


@dataclass(frozen=True)
class BlochVector:
    """Qubit state as a Bloch vector.

    Vectors that leave the unit ball by no more than ``PHYS_TOL`` (in
    squared norm) are rescaled onto the sphere; anything further out is
    rejected.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        x, y, z = float(self.x), float(self.y), float(self.z)
        if not all(math.isfinite(v) for v in (x, y, z)):
            raise DomainError(f"non-finite Bloch components {(x, y, z)}")
        n2 = x * x + y * y + z * z
        if n2 > 1.0 + PHYS_TOL:
            raise DomainError(f"|r|^2 = {n2!r} exceeds 1: not a physical state")
        if n2 > 1.0:
            s = 1.0 / math.sqrt(n2)
            x, y, z = x * s, y * s, z * s
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    @property
    def r(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def coherence(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def energy(self) -> float:
        return -self.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def rotated(self, angle: float) -> "BlochVector":
        """Rotate about the z axis: (x, y) -> (x cos a + y sin a, y cos a - x sin a)."""
        c, s = math.cos(angle), math.sin(angle)
        return BlochVector(self.x * c + self.y * s, self.y * c - self.x * s, self.z)

    @classmethod
    def from_coherence_energy(cls, C: float, U: float, phi: float = 0.0) -> "BlochVector":
        if C < 0:
            raise DomainError(f"coherence must be non-negative, got {C}")
        return cls(C * math.cos(phi), C * math.sin(phi), -U)


@dataclass(frozen=True)
class Observables:
    """Snapshot of the energetic quantities of a qubit state."""

    C: float
    U: float
    r: float
    E: float
    E_I: float
    E_C: float
    U_pi: float


def polar_init(r0: float, theta0: float, phi0: float = 0.0) -> BlochVector:
    """Bloch vector from radius, polar angle and azimuth."""
    if not 0.0 <= r0 <= 1.0:
        raise DomainError(f"r0 must lie in [0, 1], got {r0}")
    if not 0.0 <= theta0 <= math.pi:
        raise DomainError(f"theta0 must lie in [0, pi], got {theta0}")
    if not 0.0 <= phi0 < 2 * math.pi:
        raise DomainError(f"phi0 must lie in [0, 2pi), got {phi0}")
    st = math.sin(theta0)
    return BlochVector(r0 * st * math.cos(phi0), r0 * st * math.sin(phi0), r0 * math.cos(theta0))


def ergotropy_parts(C, U):
    """Vectorised (E, E_I, E_C) from coherence and energy arrays."""
    C = np.asarray(C, dtype=float)
    U = np.asarray(U, dtype=float)
    rad = np.hypot(C, U)
    E = rad + U
    E_I = 2.0 * np.maximum(0.0, U)
    E_C = rad - np.abs(U)
    return E, E_I, E_C


def ergotropy(C: float, U: float) -> float:
    """Closed-form qubit ergotropy ``sqrt(C^2 + U^2) + U``."""
    if C < 0:
        raise DomainError(f"coherence must be non-negative, got {C}")
    if C * C + U * U > 1.0 + PHYS_TOL:
        raise DomainError(f"C^2 + U^2 = {C * C + U * U!r} exceeds 1")
    return math.hypot(C, U) + U


def observables(b: BlochVector) -> Observables:
    C = math.hypot(b.x, b.y)
    U = -b.z
    r = b.r
    rad = math.hypot(C, U)
    return Observables(
        C=C,
        U=U,
        r=r,
        E=rad + U,
        E_I=2.0 * max(0.0, U),
        E_C=rad - abs(U),
        U_pi=-r,
    )


def density_matrix(b: BlochVector) -> np.ndarray:
    """``(I + r.sigma) / 2``."""
    return 0.5 * (IDENTITY + b.x * SIGMA_X + b.y * SIGMA_Y + b.z * SIGMA_Z)


def bloch_from_density(rho: np.ndarray) -> BlochVector:
    rho = np.asarray(rho)
    return BlochVector(
        2.0 * rho[0, 1].real,
        -2.0 * rho[0, 1].imag,
        (rho[0, 0] - rho[1, 1]).real,
    )
