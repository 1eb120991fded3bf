"""Linear-optics simulation of the collective-decay channel and its witness measurement."""

from .circuits import (
    BUNDLED_NETLISTS,
    TEMPLATE_DEFAULTS,
    AngleSetting,
    build_evolution_circuit,
    build_measurement_circuit,
    build_preparation_circuit,
    load_bundled,
    solve_angles,
)
from .compiler import (
    CompiledCircuit,
    PhotonState,
    compile_circuit,
    computational_from_internal,
    internal_from_computational,
    propagate,
)
from .elements import (
    bs_action,
    cnot_matrix,
    dove_matrix,
    gp_phase,
    hwp_matrix,
    mzim_action,
    pbs_action,
)
from .experiment import (
    DETECTORS,
    WITNESS_WEIGHTS,
    DetectorRecord,
    ExperimentResult,
    WitnessEstimate,
    branch_detector_probabilities,
    detector_probabilities,
    exact_witness,
    reduced_system_state,
    repeat_experiment,
    run_experiment,
    sample_counts,
    witness_expectation,
    witness_expectation_from_counts,
)
from .netlist import CircuitIR, Preparation, parse_netlist, render_netlist, serialize

__all__ = [
    "BUNDLED_NETLISTS",
    "TEMPLATE_DEFAULTS",
    "AngleSetting",
    "build_evolution_circuit",
    "build_measurement_circuit",
    "build_preparation_circuit",
    "load_bundled",
    "solve_angles",
    "CompiledCircuit",
    "PhotonState",
    "compile_circuit",
    "computational_from_internal",
    "internal_from_computational",
    "propagate",
    "bs_action",
    "cnot_matrix",
    "dove_matrix",
    "gp_phase",
    "hwp_matrix",
    "mzim_action",
    "pbs_action",
    "DETECTORS",
    "WITNESS_WEIGHTS",
    "DetectorRecord",
    "ExperimentResult",
    "WitnessEstimate",
    "branch_detector_probabilities",
    "detector_probabilities",
    "exact_witness",
    "reduced_system_state",
    "repeat_experiment",
    "run_experiment",
    "sample_counts",
    "witness_expectation",
    "witness_expectation_from_counts",
    "CircuitIR",
    "Preparation",
    "parse_netlist",
    "render_netlist",
    "serialize",
]
