"""Brute-force reference implementations.

Nothing in the production path imports this module. The routines here go
the long way round on purpose (explicit density matrices, eigensolvers,
finite differences, closed-form antiderivatives) so they can check the
closed forms and quadratures elsewhere in the package.
"""
from __future__ import annotations

import math

import numpy as np

from .bloch import BlochVector
from .channels import ChannelSpec, trajectory
from .errors import DomainError

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
H = -SZ
LEVELS = np.array([-1.0, 1.0])


def density(x: float, y: float, z: float) -> np.ndarray:
    return 0.5 * (np.eye(2) + x * SX + y * SY + z * SZ)


def check_density(rho: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DomainError("expected a 2x2 matrix")
    if not np.allclose(rho, rho.conj().T, atol=tol):
        raise DomainError("matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise DomainError("trace differs from 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise DomainError("matrix has a negative eigenvalue")
    return rho


def ergotropy_spectral(rho: np.ndarray) -> float:
    """tr(rho H) minus the energy of the passive state.

    Populations sorted high to low are placed on levels sorted low to high.
    """
    rho = check_density(rho)
    pops = np.sort(np.linalg.eigvalsh(rho))[::-1]
    energy = np.trace(rho @ H).real
    return float(energy - np.dot(pops, LEVELS))


def ergotropy_incoherent_spectral(rho: np.ndarray) -> float:
    rho = check_density(rho)
    return ergotropy_spectral(np.diag(np.diag(rho)))


def heat_trapezoid(spec: ChannelSpec, b0: BlochVector, t: float, n_steps: int) -> float:
    """Composite trapezoid on ``-(z/r) dr/dt`` with finite-difference ``dr/dt``.

    Central differences inside. The one-sided end formulas are chosen to
    carry the same leading error ``h^2 r'''/6`` as the central ones; with a
    mismatch, the jump in derivative error at the two ends leaves an
    ``O(h^3)`` term and the observed order creeps up to 2 from below. The
    radius comes from the full Bloch vector, rotation included.
    """
    if n_steps < 3:
        raise DomainError("need at least three steps")
    ts = np.linspace(0.0, t, n_steps + 1)
    h = ts[1] - ts[0]
    x, y, z = trajectory(spec, b0, ts)
    r = np.sqrt(x * x + y * y + z * z)
    dr = np.empty_like(r)
    dr[1:-1] = (r[2:] - r[:-2]) / (2 * h)
    dr[0] = (-4 * r[0] + 7 * r[1] - 4 * r[2] + r[3]) / (2 * h)
    dr[-1] = (4 * r[-1] - 7 * r[-2] + 4 * r[-3] - r[-4]) / (2 * h)
    f = -(z / np.maximum(r, 1e-12)) * dr
    return float(h * (f.sum() - 0.5 * (f[0] + f[-1])))


def equator_antiderivative(u: float) -> float:
    """Antiderivative of the heat integrand for the pure equatorial state.

    Under Markovian amplitude damping with ``u = exp(-gamma t)``,
    ``Q(t) = F(1) - F(u)``.
    """
    if not 0.0 < u <= 1.0:
        raise DomainError("u must lie in (0, 1]")
    s3 = math.sqrt(3.0)
    return -u + 0.25 * math.log(u * u - u + 1.0) + 0.5 * s3 * math.atan((2.0 * u - 1.0) / s3)


def equator_adiabatic_point(xtol: float = 1e-15) -> dict:
    """Heat-zero time and energetics for the pure equatorial state, Markovian AD.

    Bisection of ``F(u) = F(1)`` on ``(0, 1/2)``, where ``F`` has its only
    interior minimum at ``u = 1/2``.
    """
    target = equator_antiderivative(1.0)
    lo, hi = 1e-300, 0.5
    g_lo = equator_antiderivative(lo) - target
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        g = equator_antiderivative(mid) - target
        if (g > 0) == (g_lo > 0):
            lo, g_lo = mid, g
        else:
            hi = mid
    u = 0.5 * (lo + hi)
    r = math.sqrt(u * u - u + 1.0)
    W = u - 1.0
    dUpi = -(r - 1.0)
    return {"u": u, "tau_c": -math.log(u), "Wstar": W, "dUpi": dUpi, "dE": W - dUpi}


def work_env_eigendiff(spec: ChannelSpec, b0: BlochVector, t_grid) -> float:
    """W* from the eigenvectors of explicit density matrices along ``t_grid``.

    Each step adds ``sum_n r_n (<r_n|H|dr_n> + c.c.)`` evaluated at the
    midpoint, with eigenvectors sorted by descending eigenvalue and their
    phase fixed so the first non-negligible component is real positive.
    """
    ts = np.asarray(t_grid, dtype=float)
    x, y, z = trajectory(spec, b0, ts)
    vals_prev = vecs_prev = None
    total = 0.0
    for k in range(ts.size):
        vals, vecs = np.linalg.eigh(density(x[k], y[k], z[k]))
        order = np.argsort(vals)[::-1]
        vals, vecs = vals[order], vecs[:, order]
        for n in range(2):
            v = vecs[:, n]
            j = 0 if abs(v[0]) > 1e-12 else 1
            vecs[:, n] = v * (abs(v[j]) / v[j])
        if vals_prev is not None:
            for n in range(2):
                mid = 0.5 * (vecs[:, n] + vecs_prev[:, n])
                d = vecs[:, n] - vecs_prev[:, n]
                w = 0.5 * (vals[n] + vals_prev[n])
                total += w * 2.0 * (mid.conj() @ H @ d).real
        vals_prev, vecs_prev = vals, vecs
    return total
