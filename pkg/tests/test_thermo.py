import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qergo import oracle
from qergo.bloch import BlochVector, observables
from qergo.channels import ChannelSpec, kernel
from qergo.errors import DomainError
from qergo.thermo import (
    DegenerateSpectrumWarning,
    ergotropy_variation,
    heat,
    ledger,
    passive_variation,
    work_env,
    work_env_spectral,
)

from conftest import EQUATOR_DE, EQUATOR_DUPI, EQUATOR_TAU_C, EQUATOR_WSTAR, random_bloch

AD = ChannelSpec("ad")
PD_NM = ChannelSpec("pd", "nm", 0.01)
EQUATOR = BlochVector(1.0, 0.0, 0.0)
SPECS = [AD, ChannelSpec("pd"), ChannelSpec("ad", "nm", 0.01), ChannelSpec("ad", "nm", 0.5),
         ChannelSpec("ad", "nm", 4.0), PD_NM, ChannelSpec("pd", "nm", 2.0), ChannelSpec("ad", rotating=True)]


def test_heat_vanishes_for_equatorial_dephasing_and_ground_state():
    for t in (0.5, 3.0, 40.0):
        assert heat(PD_NM, BlochVector(0.4, -0.3, 0.0), t) == 0.0
        assert heat(AD, BlochVector(0.0, 0.0, 1.0), t) == 0.0
        assert work_env(AD, BlochVector(0.0, 0.0, 1.0), t) == 0.0
        assert passive_variation(AD, BlochVector(0.0, 0.0, 1.0), t) == 0.0


def test_equator_energetics_at_heat_zero():
    assert abs(heat(AD, EQUATOR, EQUATOR_TAU_C)) < 1e-9
    assert work_env(AD, EQUATOR, EQUATOR_TAU_C) == pytest.approx(EQUATOR_WSTAR, abs=1e-9)
    assert passive_variation(AD, EQUATOR, EQUATOR_TAU_C) == pytest.approx(EQUATOR_DUPI, abs=1e-12)
    assert ergotropy_variation(AD, EQUATOR, EQUATOR_TAU_C).total == pytest.approx(EQUATOR_DE, abs=1e-12)


def test_heat_matches_antiderivative_along_equator():
    F = oracle.equator_antiderivative
    for t in np.linspace(0.05, 12.0, 25):
        assert heat(AD, EQUATOR, t) == pytest.approx(F(1.0) - F(math.exp(-t)), abs=1e-10)


def test_dephasing_work_is_minus_heat(rng):
    for x, y, z in random_bloch(rng, 20):
        b = BlochVector(x, y, z)
        t = float(rng.uniform(0.1, 50.0))
        assert work_env(PD_NM, b, t) == pytest.approx(-heat(PD_NM, b, t), abs=1e-9)
    b = BlochVector(0.6, 0.0, 0.0)
    assert work_env(PD_NM, b, 20.0) == 0.0


def test_dephasing_passive_variation_on_equator():
    b = BlochVector(0.0, 0.7, 0.0)
    for t in (0.3, 5.0, 49.0):
        expected = 0.7 * (1.0 - math.exp(-float(kernel(PD_NM, t))))
        assert passive_variation(PD_NM, b, t) == pytest.approx(expected, abs=1e-14)
        assert expected >= 0


def test_frozen_and_dead_ergotropy_variation():
    b = BlochVector.from_coherence_energy(0.0, 0.5)
    for t in (1.0, 25.0):
        assert ergotropy_variation(PD_NM, b, t) == (0.0, 0.0, 0.0)
    change = ergotropy_variation(AD, b, 2.0)
    assert change.total == pytest.approx(-observables(b).E, abs=1e-15)


def test_ergotropy_variation_split_adds_up(rng):
    for x, y, z in random_bloch(rng, 20):
        c = ergotropy_variation(ChannelSpec("ad", "nm", 0.1), BlochVector(x, y, z), 7.0)
        assert c.total == pytest.approx(c.incoherent + c.coherent, abs=1e-12)


def test_ledger_identities_random_triples(rng):
    states = random_bloch(rng, 200)
    for k, (x, y, z) in enumerate(states):
        spec = SPECS[k % len(SPECS)]
        L = ledger(spec, BlochVector(x, y, z), np.sort(rng.uniform(0.0, 30.0, 5)))
        assert L.residual_first_law.max() < 1e-8
        assert L.residual_ergotropy.max() < 1e-8
        assert np.all(L.Wconv == 0.0)


def test_ledger_agrees_with_pointwise_quantities():
    b = BlochVector(0.3, 0.5, -0.4)
    spec = ChannelSpec("ad", "nm", 0.05)
    ts = np.array([0.0, 0.7, 3.0, 11.0, 40.0])
    L = ledger(spec, b, ts)
    for k, t in enumerate(ts):
        assert L.Q[k] == pytest.approx(heat(spec, b, t), abs=1e-10)
        assert L.Wstar[k] == pytest.approx(work_env(spec, b, t), abs=1e-10)
        assert L.dUpi[k] == pytest.approx(passive_variation(spec, b, t), abs=1e-14)
        assert L.dE[k] == pytest.approx(ergotropy_variation(spec, b, t).total, abs=1e-14)


def test_ledger_rejects_negative_times():
    with pytest.raises(DomainError):
        ledger(AD, EQUATOR, [-1.0, 2.0])


@given(st.floats(0.0, 2 * math.pi), st.floats(0.05, 15.0))
def test_scalars_invariant_under_azimuthal_rotation(angle, t):
    b = BlochVector(0.5, -0.2, 0.35)
    for spec in (AD, ChannelSpec("ad", "nm", 0.2), PD_NM):
        a, c = ledger(spec, b, [t]), ledger(spec, b.rotated(angle), [t])
        for name in ("Q", "Wstar", "dUpi", "dE", "C", "U", "r"):
            assert getattr(a, name) == pytest.approx(getattr(c, name), abs=1e-10)


def test_hamiltonian_rotation_leaves_thermodynamics_unchanged():
    b = BlochVector(0.5, -0.2, 0.35)
    ts = np.linspace(0.0, 6.0, 13)
    still, turning = ledger(AD, b, ts), ledger(ChannelSpec("ad", rotating=True), b, ts)
    for name in ("Q", "Wstar", "dUpi", "dE"):
        assert getattr(still, name) == pytest.approx(getattr(turning, name), abs=1e-10)
    # the oracle differentiates the full rotating Bloch vector, not the invariant radius
    rotating_trapezoid = oracle.heat_trapezoid(ChannelSpec("ad", rotating=True), b, 6.0, 20000)
    assert rotating_trapezoid == pytest.approx(still.Q[-1], abs=1e-8)


def test_spectral_work_examples():
    assert work_env_spectral(AD, BlochVector(0.0, 0.0, 1.0), 3.0) == pytest.approx(0.0, abs=1e-15)
    assert work_env_spectral(PD_NM, BlochVector(0.3, 0.4, 0.0), 3.0) == pytest.approx(0.0, abs=1e-12)
    assert work_env_spectral(AD, EQUATOR, 1.0, h=1e-5) == pytest.approx(work_env(AD, EQUATOR, 1.0), abs=1e-6)


def test_spectral_work_on_nonmarkovian_damping(rng):
    spec = ChannelSpec("ad", "nm", 0.1)
    for x, y, z in random_bloch(rng, 5):
        b = BlochVector(x, y, z)
        assert work_env_spectral(spec, b, 4.0, h=1e-4) == pytest.approx(work_env(spec, b, 4.0), abs=1e-6)


def test_spectral_work_falls_back_at_degenerate_spectrum():
    b = BlochVector(0.0, 0.0, 0.0)
    with pytest.warns(DegenerateSpectrumWarning):
        value = work_env_spectral(AD, b, 2.0)
    assert value == pytest.approx(work_env(AD, b, 2.0), abs=1e-12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        work_env_spectral(AD, EQUATOR, 0.5)
