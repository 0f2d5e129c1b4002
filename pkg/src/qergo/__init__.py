"""Ergotropy dynamics and environment-induced work for a qubit under damping channels."""

__version__ = "0.1.0"

from .bloch import BlochVector, Observables, ergotropy, observables, polar_init  # noqa: E402
from .channels import ChannelSpec, evolve, evolve_master, kernel, kraus, markovian_solution  # noqa: E402
from .errors import DomainError, NumericalError, QuadratureError  # noqa: E402
from .events import (  # noqa: E402
    EventReport,
    analyze,
    characteristic_times,
    detect_freezing,
    eternal_death_time,
    largest_characteristic,
    sudden_change_times,
)
from .thermo import (  # noqa: E402
    ThermoLedger,
    ergotropy_variation,
    heat,
    ledger,
    passive_variation,
    work_env,
    work_env_spectral,
)

__all__ = [
    "BlochVector", "Observables", "ergotropy", "observables", "polar_init",
    "ChannelSpec", "evolve", "evolve_master", "kernel", "kraus", "markovian_solution",
    "DomainError", "NumericalError", "QuadratureError",
    "EventReport", "analyze", "characteristic_times", "detect_freezing", "eternal_death_time",
    "largest_characteristic", "sudden_change_times",
    "ThermoLedger", "ergotropy_variation", "heat", "ledger", "passive_variation", "work_env",
    "work_env_spectral",
]
