"""Quick oracle-equivalence and identity checks runnable without pytest."""
from __future__ import annotations

import math

import numpy as np

from . import oracle
from .bloch import BlochVector, ergotropy, observables
from .channels import ChannelSpec, evolve_master, markovian_trajectory
from .events import characteristic_times, sudden_change_times
from .scan import adiabatic_point
from .thermo import heat, ledger, work_env


def _random_states(rng, n):
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return v * rng.uniform(0, 1, size=(n, 1)) ** (1 / 3)


def check_ergotropy(rng):
    worst = 0.0
    for x, y, z in _random_states(rng, 500):
        b = BlochVector(x, y, z)
        o = observables(b)
        rho = oracle.density(x, y, z)
        worst = max(worst, abs(o.E - oracle.ergotropy_spectral(rho)),
                    abs(o.E_I - oracle.ergotropy_incoherent_spectral(rho)))
    return worst < 1e-12, f"max deviation {worst:.3e}"


def check_sudden_death(rng):
    worst = 0.0
    for U0 in (0.1, 0.3, 0.5, 0.7, 0.9):
        t = sudden_change_times(ChannelSpec("ad"), U0)[0]
        worst = max(worst, abs(t / math.log1p(U0) - 1.0))
    return worst < 1e-6, f"max relative error {worst:.3e}"


def check_first_law(rng):
    worst = 0.0
    specs = [ChannelSpec("ad"), ChannelSpec("pd"), ChannelSpec("ad", "nm", 0.05), ChannelSpec("pd", "nm", 0.05)]
    for k, (x, y, z) in enumerate(_random_states(rng, 40)):
        L = ledger(specs[k % 4], BlochVector(x, y, z), np.sort(rng.uniform(0, 20, 5)))
        worst = max(worst, L.residual_first_law.max(), L.residual_ergotropy.max())
    return worst < 1e-8, f"max residual {worst:.3e}"


def check_equator_point(rng):
    ref = oracle.equator_adiabatic_point()
    p = adiabatic_point(ChannelSpec("ad"), 1.0, math.pi / 2)
    dev = max(abs(p.tau_c - ref["tau_c"]), abs(p.Wstar - ref["Wstar"]),
              abs(p.dUpi - ref["dUpi"]), abs(p.dE - ref["dE"]))
    return dev < 1e-6, f"tau_c={p.tau_c:.9f} oracle={ref['tau_c']:.9f} max dev {dev:.3e}"


def check_integrator(rng):
    b = BlochVector(0.6, -0.3, 0.2)
    ts, x, y, z = evolve_master(b, 2.0, 1e-3, return_path=True)
    xe, ye, ze = markovian_trajectory(b, ts)
    dev = max(np.abs(x - xe).max(), np.abs(y - ye).max(), np.abs(z - ze).max())
    return dev < 1e-8, f"max deviation {dev:.3e}"


def check_heat_oracle(rng):
    spec, b = ChannelSpec("ad"), BlochVector(1.0, 0.0, 0.0)
    t = 2.0
    ref = heat(spec, b, t)
    e1 = abs(oracle.heat_trapezoid(spec, b, t, 200) - ref)
    e2 = abs(oracle.heat_trapezoid(spec, b, t, 400) - ref)
    order = math.log2(e1 / e2)
    anti = oracle.equator_antiderivative(1.0) - oracle.equator_antiderivative(math.exp(-t))
    return order >= 1.9 and abs(anti - ref) < 1e-9, f"observed order {order:.2f}"


def check_eigendiff(rng):
    spec, b = ChannelSpec("ad", "nm", 0.1), BlochVector(0.5, 0.2, -0.3)
    t = 3.0
    dev = abs(oracle.work_env_eigendiff(spec, b, np.linspace(0, t, 4001)) - work_env(spec, b, t))
    return dev < 1e-6, f"deviation {dev:.3e}"


def check_characteristic(rng):
    ct = characteristic_times(ChannelSpec("ad"), BlochVector(1.0, 0.0, 0.0))
    return ct.status == "root" and len(ct.times) == 1, f"{ct.status} {ct.times}"


CHECKS = [
    ("closed-form vs spectral ergotropy", check_ergotropy),
    ("Markovian sudden death", check_sudden_death),
    ("first-law ledger identities", check_first_law),
    ("equator adiabatic point vs antiderivative", check_equator_point),
    ("RK4 master equation vs closed form", check_integrator),
    ("trapezoid heat convergence", check_heat_oracle),
    ("eigen-differenced W*", check_eigendiff),
    ("characteristic-time search", check_characteristic),
    ("ergotropy formula sanity", lambda rng: (abs(ergotropy(0.6, -0.8) - 0.2) < 1e-15, "E(0.6,-0.8)")),
]


def run(stream=print, seed: int = 20240101) -> bool:
    rng = np.random.default_rng(seed)
    ok_all = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, not a crashed run
            ok, detail = False, f"raised {exc!r}"
        ok_all &= bool(ok)
        stream(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok_all
