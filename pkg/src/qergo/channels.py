"""Phase- and amplitude-damping channels in Markovian and non-Markovian regimes.

Time is always the dimensionless ``tau = gamma * t``. The non-Markovian
kernels depend on the ratio ``g = Gamma / gamma`` only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bloch import IDENTITY, SIGMA_Z, BlochVector, bloch_from_density, density_matrix
from .errors import DomainError

KINDS = ("pd", "ad")
REGIMES = ("markov", "nm")
R_FLOOR = 1e-12


@dataclass(frozen=True)
class ChannelSpec:
    """Which channel, which regime.

    ``gamma`` only enters through the Hamiltonian rotation of a ``rotating``
    channel (angle ``2 tau / gamma``); kernels are functions of ``tau`` and
    ``gamma_ratio``.
    """

    kind: str
    regime: str = "markov"
    gamma_ratio: float | None = None
    gamma: float = 1.0
    rotating: bool = False

    def __post_init__(self):
        kind = self.kind.lower()
        regime = {"markovian": "markov", "nonmarkovian": "nm", "non-markovian": "nm"}.get(
            self.regime.lower(), self.regime.lower()
        )
        if kind not in KINDS:
            raise DomainError(f"unknown channel kind {self.kind!r}")
        if regime not in REGIMES:
            raise DomainError(f"unknown regime {self.regime!r}")
        if regime == "nm":
            if self.gamma_ratio is None or not self.gamma_ratio > 0 or not math.isfinite(self.gamma_ratio):
                raise DomainError("non-Markovian channels need gamma_ratio > 0")
        if not self.gamma > 0:
            raise DomainError("gamma must be positive")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "regime", regime)
        if regime == "markov":
            object.__setattr__(self, "gamma_ratio", None)

    @property
    def markovian(self) -> bool:
        return self.regime == "markov"

    def label(self) -> str:
        if self.markovian:
            return f"{self.kind}-markov"
        return f"{self.kind}-nm({self.gamma_ratio:g})"


class KrausPair(NamedTuple):
    K0: np.ndarray
    K1: np.ndarray

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return self.K0 @ rho @ self.K0.conj().T + self.K1 @ rho @ self.K1.conj().T

    def completeness_defect(self) -> float:
        s = self.K0.conj().T @ self.K0 + self.K1.conj().T @ self.K1
        return float(np.linalg.norm(s - IDENTITY))


class Dynamics(NamedTuple):
    """Rotation-invariant trajectory data on a time grid."""

    C: np.ndarray
    z: np.ndarray
    r: np.ndarray
    dr: np.ndarray
    dz: np.ndarray


def _times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("times must be finite and non-negative")
    return t


def _phi(x: np.ndarray) -> np.ndarray:
    # x - 1 + exp(-x) without cancellation at small x
    out = x + np.expm1(-x)
    small = x < 1e-2
    if np.any(small):
        xs = x[small]
        term = xs * xs / 2.0
        acc = term.copy()
        for k in range(3, 11):
            term = -term * xs / k
            acc += term
        out[small] = acc
    return out


def _ad_nm(g: float, tau: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d2 = 2.0 * g - g * g
    if d2 > 0:
        d = math.sqrt(d2)
        c, s = np.cos(0.5 * d * tau), np.sin(0.5 * d * tau)
        B = c + (g / d) * s
        dB = -0.5 * d * s + 0.5 * g * c
        env = np.exp(-g * tau)
        return env * B * B, env * B * (2.0 * dB - g * B)
    if d2 < 0:
        k = math.sqrt(-d2)
        w = np.exp(-k * tau)
        A = (1.0 + g / k) + (1.0 - g / k) * w
        D = (k + g) + (g - k) * w
        env = 0.25 * np.exp(-(2.0 * g / (g + k)) * tau)
        return env * A * A, env * A * (D - g * A)
    env = np.exp(-g * tau)
    B = 1.0 + 0.5 * g * tau
    return env * B * B, env * B * (g - g * B)


def kernel_and_rate(spec: ChannelSpec, t) -> tuple[np.ndarray, np.ndarray]:
    """``(q(tau), dq/dtau)`` for the channel.

    For PD, ``q`` is the dephasing exponent (coherence scales as ``e^-q``);
    for AD, ``q`` is the excited-population survival factor in [0, 1].
    """
    tau = _times(t)
    scalar = tau.ndim == 0
    tau = np.atleast_1d(tau)
    if spec.kind == "pd":
        if spec.markovian:
            q, dq = 0.5 * tau, np.full_like(tau, 0.5)
        else:
            g = spec.gamma_ratio
            q = _phi(g * tau) / (2.0 * g)
            dq = -0.5 * np.expm1(-g * tau)
    else:
        if spec.markovian:
            q = np.exp(-tau)
            dq = -q
        else:
            q, dq = _ad_nm(spec.gamma_ratio, tau)
    if scalar:
        return q[0], dq[0]
    return q, dq


def kernel(spec: ChannelSpec, t):
    return kernel_and_rate(spec, t)[0]


def kernel_rate(spec: ChannelSpec, t):
    return kernel_and_rate(spec, t)[1]


def kraus(spec: ChannelSpec, t: float) -> KrausPair:
    q = float(kernel(spec, t))
    if spec.kind == "pd":
        e = math.exp(-q)
        return KrausPair(
            math.sqrt((1.0 + e) / 2.0) * IDENTITY,
            math.sqrt(max(0.0, 1.0 - e) / 2.0) * SIGMA_Z,
        )
    q = min(max(q, 0.0), 1.0)
    K0 = np.array([[1.0, 0.0], [0.0, math.sqrt(q)]], dtype=complex)
    K1 = np.array([[0.0, math.sqrt(1.0 - q)], [0.0, 0.0]], dtype=complex)
    return KrausPair(K0, K1)


def _rotation_angle(spec: ChannelSpec, tau):
    return 2.0 * tau / spec.gamma


def trajectory(spec: ChannelSpec, b0: BlochVector, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised closed-form Bloch components ``(x, y, z)`` at times ``t``."""
    tau = _times(t)
    q, _ = kernel_and_rate(spec, tau)
    if spec.kind == "pd":
        s = np.exp(-q)
        z = np.full(np.shape(q), b0.z) if np.ndim(q) else b0.z
    else:
        qc = np.clip(q, 0.0, 1.0)
        s = np.sqrt(qc)
        z = 1.0 - qc * (1.0 - b0.z)
    x, y = s * b0.x, s * b0.y
    if spec.rotating:
        a = _rotation_angle(spec, tau)
        c, sn = np.cos(a), np.sin(a)
        x, y = x * c + y * sn, y * c - x * sn
    return x, y, z


def evolve(spec: ChannelSpec, b0: BlochVector, t: float) -> BlochVector:
    x, y, z = trajectory(spec, b0, float(t))
    return BlochVector(float(x), float(y), float(z))


def evolve_kraus(spec: ChannelSpec, b0: BlochVector, t: float) -> BlochVector:
    """Same map as :func:`evolve`, applied to the density matrix through Kraus operators."""
    rho = kraus(spec, t).apply(density_matrix(b0))
    b = bloch_from_density(rho)
    if spec.rotating:
        b = b.rotated(_rotation_angle(spec, float(t)))
    return b


def dynamics(spec: ChannelSpec, b0: BlochVector, t) -> Dynamics:
    """Coherence, z, radius and their analytic time derivatives.

    ``r`` is floored at ``R_FLOOR`` when forming ``dr``; since ``|z| <= r``
    the heat integrand ``(z/r) dr`` stays bounded through the origin.
    """
    tau = np.atleast_1d(_times(t))
    q, dq = kernel_and_rate(spec, tau)
    C0sq = b0.x * b0.x + b0.y * b0.y
    if spec.kind == "pd":
        s2 = np.exp(-2.0 * q)
        ds2 = -2.0 * dq * s2
        z = np.full_like(tau, b0.z)
        dz = np.zeros_like(tau)
    else:
        s2 = np.clip(q, 0.0, 1.0)
        ds2 = dq
        z = 1.0 - s2 * (1.0 - b0.z)
        dz = -dq * (1.0 - b0.z)
    C2 = s2 * C0sq
    r = np.sqrt(C2 + z * z)
    dr = (ds2 * C0sq + 2.0 * z * dz) / (2.0 * np.maximum(r, R_FLOOR))
    return Dynamics(np.sqrt(C2), z, r, dr, dz)


def markovian_trajectory(b0: BlochVector, t, gamma: float = 1.0):
    """Closed-form solution of the Markovian spontaneous-emission master equation."""
    tau = _times(t)
    a = 2.0 * tau / gamma
    e = np.exp(-0.5 * tau)
    x = e * (b0.x * np.cos(a) + b0.y * np.sin(a))
    y = e * (b0.y * np.cos(a) - b0.x * np.sin(a))
    z = np.exp(-tau) * (-1.0 + b0.z + np.exp(tau))
    return x, y, z


def markovian_solution(b0: BlochVector, t: float, gamma: float = 1.0) -> BlochVector:
    tau = float(t)
    x, y, z = markovian_trajectory(b0, tau, gamma)
    # the printed z form overflows for large tau; the rearranged form does not
    z = 1.0 - math.exp(-tau) * (1.0 - b0.z) if tau > 700 else float(z)
    return BlochVector(float(x), float(y), z)


SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T


def master_generator(gamma: float = 1.0) -> np.ndarray:
    """Liouvillian acting on the row-major flattened density matrix, in tau units."""
    I = IDENTITY

    def left(A):
        return np.kron(A, I)

    def right(B):
        return np.kron(I, B.T)

    P = SIGMA_PLUS @ SIGMA_MINUS
    coherent = (1j / gamma) * (left(SIGMA_Z) - right(SIGMA_Z))
    dissipator = np.kron(SIGMA_MINUS, SIGMA_PLUS.T) - 0.5 * (left(P) + right(P))
    return coherent + dissipator


def evolve_master(
    b0: BlochVector,
    t: float,
    step: float,
    gamma: float = 1.0,
    return_path: bool = False,
):
    """Fixed-step RK4 integration of the Markovian master equation.

    The step is shrunk so that an integer number of steps lands on ``t``.
    With ``return_path`` the Bloch components at every step are returned as
    ``(times, x, y, z)`` instead of the final state.
    """
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    if t < 0:
        raise DomainError("t must be non-negative")
    n = max(1, math.ceil(t / step - 1e-9)) if t > 0 else 0
    h = t / n if n else 0.0
    L = master_generator(gamma)

    def rhs(v):
        return L @ v

    v = density_matrix(b0).reshape(-1)
    path = [v] if return_path else None
    for _ in range(n):
        k1 = rhs(v)
        k2 = rhs(v + 0.5 * h * k1)
        k3 = rhs(v + 0.5 * h * k2)
        k4 = rhs(v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if return_path:
            path.append(v)
    if return_path:
        rho = np.array(path).reshape(-1, 2, 2)
        x = 2.0 * rho[:, 0, 1].real
        y = -2.0 * rho[:, 0, 1].imag
        z = (rho[:, 0, 0] - rho[:, 1, 1]).real
        return np.arange(n + 1) * h, x, y, z
    return bloch_from_density(v.reshape(2, 2))
