"""photonenv: two qubits decaying into a shared electromagnetic environment.

Analytic evolution of the collective-decay channel, its Kraus and Stinespring
presentations, concurrence and witness bounds, and a linear-optics simulator
that reproduces the channel and the witness measurement on a single photon.
"""

from .__version__ import __version__
from .channel import (
    DICKE,
    Basis,
    DensityMatrix4,
    EnvironmentModel,
    KrausSet,
    apply_model,
    evolve_analytic,
    initial_state,
    kraus_closed_form,
    kraus_from_choi,
)
from .core.registry import Registry, registry
from .entanglement import concurrence, static_witness, witness_from_state
from .photonics import compile_circuit, parse_netlist, propagate, run_experiment

__all__ = [
    "__version__",
    "DICKE",
    "Basis",
    "DensityMatrix4",
    "EnvironmentModel",
    "KrausSet",
    "apply_model",
    "evolve_analytic",
    "initial_state",
    "kraus_closed_form",
    "kraus_from_choi",
    "Registry",
    "registry",
    "concurrence",
    "static_witness",
    "witness_from_state",
    "compile_circuit",
    "parse_netlist",
    "propagate",
    "run_experiment",
]
