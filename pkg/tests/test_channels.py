import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qergo.bloch import BlochVector, density_matrix
from qergo.channels import (
    ChannelSpec,
    dynamics,
    evolve,
    evolve_kraus,
    evolve_master,
    kernel,
    kernel_and_rate,
    kraus,
    markovian_solution,
    markovian_trajectory,
    trajectory,
)
from qergo.errors import DomainError

from conftest import random_bloch

AD = ChannelSpec("ad")
PD = ChannelSpec("pd")
ALL_SPECS = [
    AD, PD,
    ChannelSpec("ad", "nm", 0.001), ChannelSpec("ad", "nm", 0.1), ChannelSpec("ad", "nm", 2.0),
    ChannelSpec("ad", "nm", 5.0), ChannelSpec("pd", "nm", 0.01), ChannelSpec("pd", "nm", 3.0),
]


def test_spec_validation():
    with pytest.raises(DomainError):
        ChannelSpec("ad", "nm")
    with pytest.raises(DomainError):
        ChannelSpec("ad", "nm", -1.0)
    with pytest.raises(DomainError):
        ChannelSpec("xx")
    assert ChannelSpec("AD", "non-markovian", 0.1).regime == "nm"
    assert ChannelSpec("ad", "markov", 0.3).gamma_ratio is None


@pytest.mark.parametrize("spec", [s for s in ALL_SPECS if s.kind == "ad"])
def test_ad_kernel_starts_at_one(spec):
    assert kernel(spec, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_markov_ad_kernel_at_sudden_time():
    assert kernel(AD, math.log(1.5)) == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_pd_small_time_series():
    spec = ChannelSpec("pd", "nm", 0.01)
    for t in (1e-4, 1e-5):
        assert kernel(spec, t) / t**2 == pytest.approx(0.01 / 4, rel=1e-4)


def test_pd_series_branch_is_continuous():
    spec = ChannelSpec("pd", "nm", 1.0)
    t = np.linspace(0.009, 0.011, 2001)
    q = kernel(spec, t)
    assert np.all(np.diff(q) > 0)
    assert np.max(np.abs(np.diff(q, 2))) < 1e-9


def test_kraus_at_zero_is_identity():
    for spec in (AD, PD):
        k = kraus(spec, 0.0)
        assert np.allclose(k.K0, np.eye(2), atol=1e-15)
        assert np.allclose(k.K1, 0.0, atol=1e-15)


def test_ad_kraus_at_ln2():
    k = kraus(AD, math.log(2.0))
    assert np.allclose(k.K0, np.diag([1.0, 1 / math.sqrt(2.0)]), atol=1e-15)
    assert k.K1[0, 1] == pytest.approx(1 / math.sqrt(2.0), abs=1e-15)
    assert k.K1[0, 0] == k.K1[1, 0] == k.K1[1, 1] == 0


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_completeness_at_many_times(spec):
    for t in np.linspace(0.0, 100.0, 1000):
        assert kraus(spec, t).completeness_defect() < 1e-12


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_kraus_matches_closed_form(spec, rng):
    for (x, y, z), t in zip(random_bloch(rng, 50), rng.uniform(0, 30, 50)):
        b = BlochVector(x, y, z)
        assert evolve_kraus(spec, b, t).as_array() == pytest.approx(evolve(spec, b, t).as_array(), abs=1e-12)


def test_evolve_examples():
    ts = np.linspace(0, 40, 50)
    for spec in (AD, ChannelSpec("ad", "nm", 0.01)):
        x, y, z = trajectory(spec, BlochVector(0, 0, 1), ts)
        assert np.all(x == 0) and np.all(y == 0) and np.allclose(z, 1.0, atol=1e-15)
    assert evolve(AD, BlochVector(1, 0, 0), math.log(2)).as_array() == pytest.approx([1 / math.sqrt(2), 0, 0.5], abs=1e-15)
    for spec in (PD, ChannelSpec("pd", "nm", 0.01)):
        assert evolve(spec, BlochVector(0, 0, -0.5), 7.3).as_array() == pytest.approx([0, 0, -0.5], abs=1e-15)


@pytest.mark.parametrize("spec", [s for s in ALL_SPECS if s.kind == "ad"], ids=lambda s: s.label())
def test_ad_kernel_in_unit_interval(spec):
    q = kernel(spec, np.linspace(0, 2000, 200001))
    assert q.min() >= 0.0 and q.max() <= 1.0 + 1e-15


@pytest.mark.parametrize("spec", [s for s in ALL_SPECS if s.kind == "pd"], ids=lambda s: s.label())
def test_pd_exponent_nonnegative_nondecreasing(spec):
    q = kernel(spec, np.linspace(0, 200, 20001))
    assert q.min() >= 0.0
    assert np.all(np.diff(q) >= 0.0)


def test_radius_stays_physical(rng):
    ts = np.linspace(0, 600, 6001)
    for spec in ALL_SPECS:
        for x, y, z in random_bloch(rng, 5):
            assert dynamics(spec, BlochVector(x, y, z), ts).r.max() <= 1.0 + 1e-12


def test_markov_limit_of_nonmarkov_kernels():
    ts = np.linspace(0, 10, 2001)
    for kind in ("ad", "pd"):
        gap = np.abs(kernel(ChannelSpec(kind, "nm", 1e4), ts) - kernel(ChannelSpec(kind), ts))
        assert gap.max() < 1e-3


def test_ad_continuity_across_critical_ratio():
    ts = np.linspace(0, 20, 401)
    at = kernel(ChannelSpec("ad", "nm", 2.0), ts)
    assert at == pytest.approx(np.exp(-2 * ts) * (1 + ts) ** 2, abs=1e-15)
    for eps in (1e-6, -1e-6):
        near = kernel(ChannelSpec("ad", "nm", 2.0 + eps), ts)
        assert np.max(np.abs(near - at)) < 1e-5


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_kernel_rate_matches_finite_difference(spec):
    ts = np.linspace(0.05, 30, 300)
    h = 1e-6
    _, dq = kernel_and_rate(spec, ts)
    fd = (kernel(spec, ts + h) - kernel(spec, ts - h)) / (2 * h)
    assert np.max(np.abs(dq - fd)) < 1e-7


def test_dynamics_radial_rate_matches_finite_difference(rng):
    ts = np.linspace(0.1, 20, 200)
    h = 1e-6
    for spec in ALL_SPECS:
        b = BlochVector(*random_bloch(rng, 1)[0])
        d = dynamics(spec, b, ts)
        fd = (dynamics(spec, b, ts + h).r - dynamics(spec, b, ts - h).r) / (2 * h)
        assert np.max(np.abs(d.dr - fd)) < 1e-7


def test_master_equation_examples():
    assert evolve_master(BlochVector(0, 0, 1), 5.0, 1e-3).as_array() == pytest.approx([0, 0, 1], abs=1e-14)
    b = evolve_master(BlochVector(1, 0, 0), 1.0, 1e-3)
    assert b.z == pytest.approx(1 - math.exp(-1), abs=1e-12)
    assert markovian_solution(BlochVector(1, 0, 0), 1.0).z == pytest.approx(0.63212, abs=1e-5)


def test_master_equation_matches_closed_form():
    b0 = BlochVector(0.5, -0.4, 0.3)
    ts, x, y, z = evolve_master(b0, 10.0, 1e-3, return_path=True)
    xe, ye, ze = markovian_trajectory(b0, ts)
    assert max(np.abs(x - xe).max(), np.abs(y - ye).max(), np.abs(z - ze).max()) < 1e-8


def test_master_radius_equals_kraus_radius():
    b0 = BlochVector(0.3, 0.6, -0.2)
    ts, x, y, z = evolve_master(b0, 8.0, 1e-3, return_path=True)
    r_master = np.sqrt(x**2 + y**2 + z**2)
    assert np.max(np.abs(r_master - dynamics(AD, b0, ts).r)) < 1e-10


def test_rotating_spec_reproduces_master_equation():
    b0 = BlochVector(0.5, -0.4, 0.3)
    spec = ChannelSpec("ad", rotating=True)
    ts, x, y, z = evolve_master(b0, 6.0, 1e-3, return_path=True)
    xr, yr, zr = trajectory(spec, b0, ts)
    assert max(np.abs(x - xr).max(), np.abs(y - yr).max(), np.abs(z - zr).max()) < 1e-8


def test_master_step_must_be_positive():
    with pytest.raises(DomainError):
        evolve_master(BlochVector(0, 0, 0), 1.0, 0.0)


@given(st.floats(0.0, 50.0), st.floats(0.001, 10.0))
def test_kraus_density_is_physical(t, g):
    rho = kraus(ChannelSpec("ad", "nm", g), t).apply(density_matrix(BlochVector(0.6, 0.0, -0.7)))
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho).min() >= -1e-12
