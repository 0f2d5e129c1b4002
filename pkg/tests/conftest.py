import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# Equator pure state under Markovian amplitude damping, from the closed-form
# heat antiderivative (oracle.equator_adiabatic_point, bisection to 1e-15).
EQUATOR_U_C = 0.25551857236134157
EQUATOR_TAU_C = 1.3644601817205328
EQUATOR_WSTAR = -0.7444814276386584
EQUATOR_DUPI = 0.1001271376131867
EQUATOR_DE = -0.8446085652518451
ANTIDERIVATIVE_AT_ONE = -1.0 + math.pi * math.sqrt(3.0) / 12.0


def random_bloch(rng, n):
    """Uniform samples from the closed unit ball."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return v * rng.uniform(0.0, 1.0, size=(n, 1)) ** (1.0 / 3.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
