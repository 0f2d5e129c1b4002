"""Event detection along channel trajectories.

Sudden changes of ergotropy (zeros of ``q(t) - 1/(1+U0)`` for amplitude
damping), the eternal-death time, ergotropy freezing, and the
characteristic adiabatic times at which the accumulated heat vanishes.
All searches bracket on a uniform grid and then bisect.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bloch import BlochVector, ergotropy_parts, observables
from .channels import ChannelSpec, dynamics, kernel
from .errors import DomainError
from .quadrature import adaptive_simpson, bisect, cumulative_simpson, sign_change_intervals
from .thermo import heat_rate

ROOT_XTOL = 1e-12
TANGENCY_TOL = 1e-7
DEGENERATE_Q = 1e-14

ROOT = "root"
NONE = "none"
DEGENERATE = "degenerate"


def default_horizon(spec: ChannelSpec) -> float:
    return 50.0 if spec.markovian else 600.0


def default_grid_step(spec: ChannelSpec) -> float:
    return 1e-3 if spec.markovian else 1e-2


def time_grid(horizon: float, step: float) -> np.ndarray:
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    if not step > 0:
        raise DomainError("grid step must be positive")
    n = max(1, int(round(horizon / step)))
    return np.linspace(0.0, horizon, n + 1)


class SuddenChanges(NamedTuple):
    roots: list
    tangencies: list


class Freezing(NamedTuple):
    frozen: bool
    value: float | None
    analytic: bool
    incoherent_frozen: bool
    incoherent_value: float | None


class CharacteristicTimes(NamedTuple):
    times: list
    status: str

    @property
    def largest(self) -> float | None:
        return self.times[-1] if self.times else None


@dataclass
class EventReport:
    sudden_times: list = field(default_factory=list)
    tangencies: list = field(default_factory=list)
    eternal_death: float | None = None
    frozen: bool = False
    frozen_value: float | None = None
    frozen_analytic: bool = False
    incoherent_frozen: bool = False
    incoherent_value: float | None = None
    characteristic_times: list = field(default_factory=list)
    characteristic_status: str = NONE
    largest_characteristic: float | None = None
    horizon: float = 0.0
    grid_step: float = 0.0

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["sudden_labels"] = ["death" if i % 2 == 0 else "birth" for i in range(len(self.sudden_times))]
        return d


def _threshold(U0: float) -> float:
    if not 0.0 < U0 <= 1.0:
        raise DomainError(f"sudden changes need 0 < U0 <= 1, got {U0}")
    return 1.0 / (1.0 + U0)


def _golden_extremum(f, a, b, sign, iters=80):
    """Point in [a, b] minimising ``sign * f``."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - inv * (b - a), a + inv * (b - a)
    fc, fd = sign * f(c), sign * f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = sign * f(d)
    return 0.5 * (a + b)


def sudden_change_analysis(
    spec: ChannelSpec,
    U0: float,
    horizon: float | None = None,
    grid_step: float | None = None,
) -> SuddenChanges:
    """Crossings and tangencies of ``q(t) = 1/(1+U0)`` on (0, horizon]."""
    if spec.kind != "ad":
        raise DomainError("sudden changes are defined for amplitude damping")
    thr = _threshold(U0)
    horizon = default_horizon(spec) if horizon is None else horizon
    grid_step = default_grid_step(spec) if grid_step is None else grid_step
    ts = time_grid(horizon, grid_step)
    f = kernel(spec, ts) - thr

    def fs(t):
        return float(kernel(spec, t)) - thr

    roots = []
    for i in sign_change_intervals(f):
        roots.append(bisect(fs, ts[i], ts[i + 1], f[i], f[i + 1], xtol=ROOT_XTOL))
    for i in np.flatnonzero(f[1:-1] == 0.0) + 1:
        if f[i - 1] * f[i + 1] < 0:
            roots.append(float(ts[i]))

    # interior extrema of f that stay on one side of zero but come close
    tangencies = []
    af = np.abs(f)
    cand = np.flatnonzero(
        (af[1:-1] <= af[:-2]) & (af[1:-1] <= af[2:]) & (f[:-2] * f[1:-1] > 0) & (f[1:-1] * f[2:] > 0)
        & (af[1:-1] < 1e-3)
    ) + 1
    for i in cand:
        sign = 1.0 if f[i] > 0 else -1.0
        te = _golden_extremum(fs, ts[i - 1], ts[i + 1], sign)
        fe = fs(te)
        if abs(fe) < TANGENCY_TOL:
            tangencies.append(te)
        elif fe * f[i] < 0:
            # two genuine crossings inside one grid cell
            roots.append(bisect(fs, ts[i - 1], te, f[i - 1], fe, xtol=ROOT_XTOL))
            roots.append(bisect(fs, te, ts[i + 1], fe, f[i + 1], xtol=ROOT_XTOL))
    return SuddenChanges(sorted(roots), sorted(tangencies))


def sudden_change_times(
    spec: ChannelSpec,
    U0: float,
    horizon: float | None = None,
    grid_step: float | None = None,
) -> list:
    """Ordered sudden-change times; even positions are deaths, odd ones births."""
    return sudden_change_analysis(spec, U0, horizon, grid_step).roots


def eternal_death_time(
    spec: ChannelSpec,
    U0: float,
    horizon: float | None = None,
    grid_step: float | None = None,
) -> float | None:
    """Last sudden-change time, if q stays below threshold from there to the horizon."""
    horizon = default_horizon(spec) if horizon is None else horizon
    grid_step = default_grid_step(spec) if grid_step is None else grid_step
    return _eternal(spec, U0, sudden_change_times(spec, U0, horizon, grid_step), horizon, grid_step)


def _eternal(spec, U0, roots, horizon, grid_step):
    if not roots:
        return None
    last = roots[-1]
    tail = np.linspace(last, horizon, max(2, int((horizon - last) / grid_step) + 2))[1:]
    if np.all(kernel(spec, tail) < _threshold(U0)):
        return last
    return None


def detect_freezing(
    spec: ChannelSpec,
    b0: BlochVector,
    horizon: float | None = None,
    tol: float = 1e-9,
    grid_step: float | None = None,
) -> Freezing:
    """Sampled test of constant ergotropy (and of its incoherent part).

    ``analytic`` is the closed-form criterion: phase damping, no initial
    coherence, positive initial energy.
    """
    horizon = default_horizon(spec) if horizon is None else horizon
    grid_step = default_grid_step(spec) if grid_step is None else grid_step
    ts = time_grid(horizon, grid_step)
    d = dynamics(spec, b0, ts)
    E, E_I, _ = ergotropy_parts(d.C, -d.z)
    o = observables(b0)
    frozen = bool(np.max(np.abs(E - o.E)) < tol)
    inc = bool(np.max(np.abs(E_I - o.E_I)) < tol)
    analytic = spec.kind == "pd" and o.C == 0.0 and o.U > 0
    return Freezing(frozen, o.E if frozen else None, analytic, inc, o.E_I if inc else None)


def _heat_brackets(spec, b0, horizon, grid_step):
    ts = time_grid(horizon, grid_step)
    Q = cumulative_simpson(lambda t: heat_rate(spec, b0, t), ts)
    if np.max(np.abs(Q)) <= DEGENERATE_Q:
        return ts, Q, None
    t_min = 10.0 * grid_step
    idx = [i for i in sign_change_intervals(Q) if ts[i] >= t_min]
    zeros = np.flatnonzero(Q[1:-1] == 0.0) + 1
    idx += [i for i in zeros if ts[i] >= t_min and Q[i - 1] * Q[i + 1] < 0]
    return ts, Q, sorted(idx)


def _refine_heat_root(spec, b0, ts, Q, i):
    if Q[i] == 0.0:
        return float(ts[i])

    def rate(t):
        return float(heat_rate(spec, b0, np.array([t]))[0])

    a = float(ts[i])

    def g(t):
        return Q[i] + adaptive_simpson(rate, a, t, tol=1e-13)[0]

    return bisect(g, a, float(ts[i + 1]), Q[i], Q[i + 1], xtol=ROOT_XTOL)


def characteristic_times(
    spec: ChannelSpec,
    b0: BlochVector,
    horizon: float | None = None,
    grid_step: float | None = None,
    largest_only: bool = False,
) -> CharacteristicTimes:
    """Positive zeros of the accumulated heat Q(t).

    Roots closer to 0 than ``10 * grid_step`` are ignored (Q(0) = 0 is
    trivial). A trajectory whose Q vanishes identically is reported with
    status ``"degenerate"`` and no times. With ``largest_only`` only the last
    bracket is refined.
    """
    horizon = default_horizon(spec) if horizon is None else horizon
    grid_step = default_grid_step(spec) if grid_step is None else grid_step
    ts, Q, idx = _heat_brackets(spec, b0, horizon, grid_step)
    if idx is None:
        return CharacteristicTimes([], DEGENERATE)
    if not idx:
        return CharacteristicTimes([], NONE)
    if largest_only:
        idx = idx[-1:]
    times = [_refine_heat_root(spec, b0, ts, Q, i) for i in idx]
    return CharacteristicTimes(times, ROOT)


def largest_characteristic(
    spec: ChannelSpec,
    b0: BlochVector,
    horizon: float | None = None,
    grid_step: float | None = None,
) -> float | None:
    return characteristic_times(spec, b0, horizon, grid_step, largest_only=True).largest


def analyze(
    spec: ChannelSpec,
    b0: BlochVector,
    horizon: float | None = None,
    grid_step: float | None = None,
    tol: float = 1e-9,
) -> EventReport:
    """Full event report for one channel and initial state."""
    horizon = default_horizon(spec) if horizon is None else horizon
    grid_step = default_grid_step(spec) if grid_step is None else grid_step
    rep = EventReport(horizon=horizon, grid_step=grid_step)
    U0 = -b0.z
    if spec.kind == "ad" and U0 > 0:
        sc = sudden_change_analysis(spec, U0, horizon, grid_step)
        rep.sudden_times, rep.tangencies = sc.roots, sc.tangencies
        rep.eternal_death = _eternal(spec, U0, sc.roots, horizon, grid_step)
    fr = detect_freezing(spec, b0, horizon, tol, grid_step)
    rep.frozen, rep.frozen_value, rep.frozen_analytic = fr.frozen, fr.value, fr.analytic
    rep.incoherent_frozen, rep.incoherent_value = fr.incoherent_frozen, fr.incoherent_value
    ct = characteristic_times(spec, b0, horizon, grid_step)
    rep.characteristic_times, rep.characteristic_status = ct.times, ct.status
    rep.largest_characteristic = ct.largest
    return rep
