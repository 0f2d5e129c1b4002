"""Scans of the adiabatic point over families of initial states.

For every initial state the largest positive zero of the accumulated heat
is located and the energetics there (W*, ergotropy change, passive-energy
cost) are recorded. Cells without a root keep NaN in the numeric arrays and
carry a status string; serializers decide how to render them.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .bloch import ergotropy_parts, observables, polar_init
from .channels import ChannelSpec, dynamics
from .errors import NumericalError
from .events import DEGENERATE, NONE, ROOT, characteristic_times, default_grid_step, default_horizon

ERROR = "error"


class AdiabaticPoint(NamedTuple):
    status: str
    tau_c: float | None = None
    Wstar: float | None = None
    dE: float | None = None
    dUpi: float | None = None


def comparison_horizon(gamma_ratio: float) -> float:
    """Non-Markovian horizon long enough for q(t) to decay past Markovian heat zeros.

    The kernel envelope decays as ``exp(-Gamma t)``, so a Markovian root at
    ``gamma t_c`` reappears near ``gamma t_c / (Gamma/gamma)``; ten units of
    Markovian time cover every root the Markovian search can see with margin.
    """
    return max(600.0, 10.0 / gamma_ratio)


def adiabatic_point(
    spec: ChannelSpec,
    r0: float,
    theta0: float,
    phi0: float = 0.0,
    horizon: float | None = None,
    grid_step: float | None = None,
) -> AdiabaticPoint:
    """Energetics at the largest heat-zero time for one initial state."""
    b0 = polar_init(r0, theta0, phi0)
    try:
        ct = characteristic_times(spec, b0, horizon, grid_step, largest_only=True)
    except NumericalError:
        return AdiabaticPoint(ERROR)
    if ct.status != ROOT:
        return AdiabaticPoint(ct.status)
    tc = ct.largest
    d = dynamics(spec, b0, tc)
    o = observables(b0)
    z, r = float(d.z[0]), float(d.r[0])
    E = float(ergotropy_parts(d.C, -d.z)[0][0])
    W = -(z - b0.z)
    return AdiabaticPoint(ROOT, tc, W, E - o.E, -(r - o.r))


def _cell(args):
    return adiabatic_point(*args)


@dataclass
class ScanGrid:
    """Initial-state grid over (r0, theta0) and, once scanned, its results.

    Result arrays have shape ``(len(r0_values), len(theta0_values))``.
    """

    r0_values: np.ndarray
    theta0_values: np.ndarray
    channel: ChannelSpec
    phi0: float = 0.0
    horizon: float | None = None
    grid_step: float | None = None
    tau_c: np.ndarray | None = None
    Wstar: np.ndarray | None = None
    dE: np.ndarray | None = None
    dUpi: np.ndarray | None = None
    status: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.r0_values = np.asarray(self.r0_values, dtype=float)
        self.theta0_values = np.asarray(self.theta0_values, dtype=float)
        if self.r0_values.size == 0 or self.theta0_values.size == 0:
            raise ValueError("scan value lists must be non-empty")

    @property
    def shape(self) -> tuple[int, int]:
        return self.r0_values.size, self.theta0_values.size


def default_grid(
    channel: ChannelSpec,
    n_r: int = 50,
    n_theta: int = 50,
    full_range: bool = False,
) -> ScanGrid:
    """Uniform grid; non-Markovian scans stay in the z >= 0 hemisphere unless ``full_range``."""
    theta_max = math.pi if (channel.markovian or full_range) else math.pi / 2
    return ScanGrid(np.linspace(0.0, 1.0, n_r), np.linspace(0.0, theta_max, n_theta), channel)


def grid_scan(grid: ScanGrid, workers: int = 1) -> ScanGrid:
    """Fill every cell of ``grid``; returns a new ScanGrid.

    Cells are independent. With ``workers > 1`` they are farmed out to a
    process pool and written back by index, so the result does not depend
    on completion order.
    """
    spec = grid.channel
    horizon = default_horizon(spec) if grid.horizon is None else grid.horizon
    step = default_grid_step(spec) if grid.grid_step is None else grid.grid_step
    n_r, n_t = grid.shape
    jobs = [
        (spec, float(r0), float(th), grid.phi0, horizon, step)
        for r0 in grid.r0_values
        for th in grid.theta0_values
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_cell, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        points = [_cell(j) for j in jobs]

    out = {k: np.full((n_r, n_t), np.nan) for k in ("tau_c", "Wstar", "dE", "dUpi")}
    status = np.empty((n_r, n_t), dtype=object)
    for k, p in enumerate(points):
        i, j = divmod(k, n_t)
        status[i, j] = p.status
        if p.status == ROOT:
            out["tau_c"][i, j] = p.tau_c
            out["Wstar"][i, j] = p.Wstar
            out["dE"][i, j] = p.dE
            out["dUpi"][i, j] = p.dUpi
    return replace(grid, horizon=horizon, grid_step=step, status=status, **out)


@dataclass
class LineTable:
    """Markovian and non-Markovian adiabatic energetics along a line of states."""

    parameter: str
    values: np.ndarray
    gamma_ratio: float
    fixed: dict
    markov: list
    nonmarkov: list

    def column(self, name: str, regime: str = "markov", fill: float | None = np.nan) -> np.ndarray:
        pts = self.markov if regime == "markov" else self.nonmarkov
        vals = [getattr(p, name) for p in pts]
        return np.array([fill if v is None else v for v in vals], dtype=float)

    def rows(self, fill: float = 0.0):
        """Rows for serialisation; missing adiabatic points are rendered as ``fill``."""
        for k, v in enumerate(self.values):
            m, n = self.markov[k], self.nonmarkov[k]

            def f(x):
                return fill if x is None else x

            yield {
                self.parameter: float(v),
                "Wstar": f(m.Wstar), "dE": f(m.dE), "dUpi": f(m.dUpi),
                "Wstar_n": f(n.Wstar), "dE_n": f(n.dE), "dUpi_n": f(n.dUpi),
                "tau_c": f(m.tau_c), "tau_c_n": f(n.tau_c),
                "status": m.status, "status_n": n.status,
            }


def _line(parameter, values, states, gamma_ratio, fixed, horizon_nm, grid_step_nm, workers):
    mk = ChannelSpec("ad", "markov")
    nm = ChannelSpec("ad", "nm", gamma_ratio)
    horizon_nm = comparison_horizon(gamma_ratio) if horizon_nm is None else horizon_nm
    jobs = [(mk, r0, th, phi0, None, None) for r0, th, phi0 in states]
    jobs += [(nm, r0, th, phi0, horizon_nm, grid_step_nm) for r0, th, phi0 in states]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_cell, jobs))
    else:
        points = [_cell(j) for j in jobs]
    n = len(states)
    return LineTable(parameter, np.asarray(values, float), gamma_ratio, fixed, points[:n], points[n:])


def line_scan_equator(
    r0_values,
    gamma_ratio: float = 0.01,
    phi0: float = 0.0,
    horizon_nm: float | None = None,
    grid_step_nm: float | None = None,
    workers: int = 1,
) -> LineTable:
    """Equatorial family ``theta0 = pi/2`` as a function of ``r0``."""
    states = [(float(r), math.pi / 2, phi0) for r in r0_values]
    return _line("r0", r0_values, states, gamma_ratio, {"theta0": math.pi / 2, "phi0": phi0},
                 horizon_nm, grid_step_nm, workers)


def line_scan_pure(
    theta0_values,
    gamma_ratio: float = 0.01,
    phi0: float = 0.0,
    horizon_nm: float | None = None,
    grid_step_nm: float | None = None,
    workers: int = 1,
) -> LineTable:
    """Pure-state family ``r0 = 1`` as a function of ``theta0``."""
    states = [(1.0, float(t), phi0) for t in theta0_values]
    return _line("theta0", theta0_values, states, gamma_ratio, {"r0": 1.0, "phi0": phi0},
                 horizon_nm, grid_step_nm, workers)


__all__ = [
    "AdiabaticPoint", "ScanGrid", "LineTable", "adiabatic_point", "comparison_horizon",
    "default_grid", "grid_scan", "line_scan_equator", "line_scan_pure",
    "ROOT", "NONE", "DEGENERATE", "ERROR",
]
