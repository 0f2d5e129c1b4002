"""Entropy-based first-law bookkeeping along a channel trajectory.

With a constant Hamiltonian the conventional work vanishes and the energy
change splits into heat ``dQ = (U/r) dr = -(z/r) dr`` and the
environment-induced work ``dW* = -dz + (z/r) dr``. Both are integrated
independently so the first-law residual is a genuine check on quadrature.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bloch import HAMILTONIAN, BlochVector, ergotropy_parts, observables
from .channels import R_FLOOR, ChannelSpec, dynamics, trajectory
from .errors import DomainError
from .quadrature import cumulative_simpson

QUAD_TOL = 1e-10
MAX_PANEL = 0.25
DEGENERATE_R = 1e-9


class DegenerateSpectrumWarning(RuntimeWarning):
    """The density matrix became (nearly) maximally mixed along the path."""


class ErgotropyChange(NamedTuple):
    total: float
    incoherent: float
    coherent: float


@dataclass
class ThermoLedger:
    """Time series of energetic quantities on a grid of ``gamma t`` values.

    ``Upi`` is the passive-state energy ``-r`` itself; variations are
    measured from ``times``' reference point ``tau = 0``.
    """

    times: np.ndarray
    C: np.ndarray
    r: np.ndarray
    U: np.ndarray
    E: np.ndarray
    E_I: np.ndarray
    E_C: np.ndarray
    Upi: np.ndarray
    Q: np.ndarray
    Wstar: np.ndarray
    Wconv: np.ndarray
    U0: float
    E0: float
    Upi0: float
    residual_first_law: np.ndarray
    residual_ergotropy: np.ndarray

    @property
    def dU(self) -> np.ndarray:
        return self.U - self.U0

    @property
    def dE(self) -> np.ndarray:
        return self.E - self.E0

    @property
    def dUpi(self) -> np.ndarray:
        return self.Upi - self.Upi0


def _radial_part(d) -> np.ndarray:
    # (z/r) dr/dt; the origin is only reachable along the z axis, where the limit is dz/dt
    at_origin = d.r <= R_FLOOR
    r = np.where(at_origin, 1.0, d.r)
    return np.where(at_origin, d.dz, d.z / r * d.dr)


def heat_rate(spec: ChannelSpec, b0: BlochVector, t) -> np.ndarray:
    return -_radial_part(dynamics(spec, b0, t))


def work_rate(spec: ChannelSpec, b0: BlochVector, t) -> np.ndarray:
    d = dynamics(spec, b0, t)
    return -d.dz + _radial_part(d)


def _refined(grid: np.ndarray, max_step: float) -> tuple[np.ndarray, np.ndarray]:
    """Fine grid from 0 through every point of ``grid``, plus positions of those points."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("time grid must be a non-empty 1-d array")
    if np.any(grid < 0) or np.any(np.diff(grid) < 0):
        raise DomainError("time grid must be non-negative and non-decreasing")
    knots = np.concatenate(([0.0], grid))
    pieces = [np.array([0.0])]
    index = np.empty(grid.size, dtype=np.int64)
    pos = 0
    for i, (a, b) in enumerate(zip(knots[:-1], knots[1:])):
        n = max(1, math.ceil((b - a) / max_step)) if b > a else 0
        if n:
            pieces.append(np.linspace(a, b, n + 1)[1:])
            pos += n
        index[i] = pos
    return np.concatenate(pieces), index


def cumulative_heat(spec: ChannelSpec, b0: BlochVector, grid, tol: float = QUAD_TOL) -> np.ndarray:
    """Q at every point of a sorted grid starting at 0, integrated in one pass."""
    return cumulative_simpson(lambda t: heat_rate(spec, b0, t), np.asarray(grid, float), tol)


def _integrate_to(rate, spec, b0, t, tol):
    if t < 0:
        raise DomainError("t must be non-negative")
    fine, idx = _refined(np.array([float(t)]), MAX_PANEL)
    return float(cumulative_simpson(lambda s: rate(spec, b0, s), fine, tol)[idx[0]])


def heat(spec: ChannelSpec, b0: BlochVector, t: float, tol: float = QUAD_TOL) -> float:
    """Entropy-based heat ``Q(t) = -int_0^t (z/r) dr``."""
    return _integrate_to(heat_rate, spec, b0, t, tol)


def work_env(spec: ChannelSpec, b0: BlochVector, t: float, tol: float = QUAD_TOL) -> float:
    """Environment-induced work ``W*(t) = int_0^t [-dz + (z/r) dr]``.

    Equal to ``-dz(t) - Q(t)`` up to quadrature error; at a heat-zero time it
    is the rotation cost ``-dz``.
    """
    return _integrate_to(work_rate, spec, b0, t, tol)


def passive_variation(spec: ChannelSpec, b0: BlochVector, t: float) -> float:
    """Change of passive-state energy, ``-(r(t) - r(0))``."""
    d = dynamics(spec, b0, float(t))
    return -(float(d.r[0]) - b0.r)


def ergotropy_variation(spec: ChannelSpec, b0: BlochVector, t: float) -> ErgotropyChange:
    d = dynamics(spec, b0, float(t))
    E, E_I, E_C = (float(v[0]) for v in ergotropy_parts(d.C, -d.z))
    o = observables(b0)
    return ErgotropyChange(E - o.E, E_I - o.E_I, E_C - o.E_C)


def ledger(spec: ChannelSpec, b0: BlochVector, t_grid, tol: float = QUAD_TOL) -> ThermoLedger:
    """All energetic quantities on ``t_grid`` from one cumulative pass."""
    times = np.asarray(t_grid, dtype=float)
    fine, idx = _refined(times, MAX_PANEL)
    Q = cumulative_simpson(lambda s: heat_rate(spec, b0, s), fine, tol)[idx]
    W = cumulative_simpson(lambda s: work_rate(spec, b0, s), fine, tol)[idx]
    d = dynamics(spec, b0, times)
    U = -d.z
    E, E_I, E_C = ergotropy_parts(d.C, U)
    o = observables(b0)
    Wconv = np.zeros_like(times)
    Upi = -d.r
    res1 = np.abs((U - o.U) - Q - W - Wconv)
    res2 = np.abs((E - o.E) - Q - W + (Upi - o.U_pi))
    return ThermoLedger(
        times=times, C=d.C, r=d.r, U=U, E=E, E_I=E_I, E_C=E_C, Upi=Upi,
        Q=Q, Wstar=W, Wconv=Wconv, U0=o.U, E0=o.E, Upi0=o.U_pi,
        residual_first_law=res1, residual_ergotropy=res2,
    )


def work_env_spectral(spec: ChannelSpec, b0: BlochVector, t: float, h: float = 1e-4) -> float:
    """W* accumulated straight from the eigen-decomposition of rho.

    Sums ``r_n d<r_n|H|r_n>`` between consecutive density matrices a step
    ``h`` apart, with eigenvalues averaged over the step (second order). If
    the spectrum becomes degenerate (``r < 1e-9``) along the path the
    eigenvectors are undefined; the closed-form integral is returned instead
    and a :class:`DegenerateSpectrumWarning` is issued.
    """
    if not h > 0:
        raise DomainError("h must be positive")
    if t < 0:
        raise DomainError("t must be non-negative")
    if t == 0:
        return 0.0
    n = max(1, math.ceil(t / h))
    grid = np.linspace(0.0, t, n + 1)
    x, y, z = trajectory(spec, b0, grid)
    r = np.sqrt(x * x + y * y + z * z)
    if np.min(r) < DEGENERATE_R:
        warnings.warn(
            "spectrum degenerate along the path; using the closed-form integral",
            DegenerateSpectrumWarning,
            stacklevel=2,
        )
        return work_env(spec, b0, t)
    rho = np.empty((grid.size, 2, 2), dtype=complex)
    rho[:, 0, 0] = 0.5 * (1 + z)
    rho[:, 1, 1] = 0.5 * (1 - z)
    rho[:, 0, 1] = 0.5 * (x - 1j * y)
    rho[:, 1, 0] = 0.5 * (x + 1j * y)
    vals, vecs = np.linalg.eigh(rho)
    vals, vecs = vals[:, ::-1], vecs[:, :, ::-1]
    level = np.einsum("kin,ij,kjn->kn", vecs.conj(), HAMILTONIAN, vecs).real
    weight = 0.5 * (vals[1:] + vals[:-1])
    return float(np.sum(weight * np.diff(level, axis=0)))
