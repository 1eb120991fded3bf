"""Simulated witness measurement.

The evolution circuit is run at the angles for the requested time, the path
is traced out, the reduced two-qubit state goes through the measurement
circuit and photon counts are drawn from the detector probabilities.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..channel.coefficients import MULTIMODE_VACUUM, EnvironmentModel
from ..channel.states import Basis, DensityMatrix4
from ..entanglement.witness import WITNESS_TO_CONCURRENCE, static_witness
from ..sampling import spawn_generators
from .circuits import AngleSetting, build_evolution_circuit, build_measurement_circuit, solve_angles
from .compiler import (
    INTERNAL_TO_COMPUTATIONAL,
    CompiledCircuit,
    PhotonState,
    compile_circuit,
    propagate,
)

logger = logging.getLogger(__name__)

_R2 = 1.0 / np.sqrt(2.0)

DETECTORS: Tuple[str, ...] = ("D1", "D2", "D3", "D4")

# Static witness eigenvalue belonging to the collective state each detector sees
WITNESS_WEIGHTS: Dict[str, float] = {
    "D1": _R2,
    "D2": -_R2,
    "D3": 1 + _R2,
    "D4": 1 - _R2,
}


@dataclass(frozen=True)
class DetectorRecord:
    counts: Dict[str, int]
    shots: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be nonnegative")
        if sum(self.counts.values()) != self.shots:
            raise ValueError(f"counts sum to {sum(self.counts.values())}, expected {self.shots}")

    def frequencies(self) -> Dict[str, float]:
        return {name: count / self.shots for name, count in self.counts.items()}


@dataclass(frozen=True)
class WitnessEstimate:
    value: float
    standard_error: float

    @property
    def concurrence(self) -> float:
        return self.value / WITNESS_TO_CONCURRENCE

    @property
    def concurrence_standard_error(self) -> float:
        return self.standard_error / abs(WITNESS_TO_CONCURRENCE)


def witness_expectation(probabilities: Mapping[str, float], shots: Optional[int] = None) -> WitnessEstimate:
    """sum_i w_i p_i with the multinomial standard error for ``shots`` samples."""
    mean = sum(WITNESS_WEIGHTS[d] * probabilities.get(d, 0.0) for d in DETECTORS)
    second = sum(WITNESS_WEIGHTS[d] ** 2 * probabilities.get(d, 0.0) for d in DETECTORS)
    if shots is None:
        return WitnessEstimate(float(mean), 0.0)
    variance = max(second - mean ** 2, 0.0)
    return WitnessEstimate(float(mean), float(np.sqrt(variance / shots)))


def witness_expectation_from_counts(record: DetectorRecord) -> WitnessEstimate:
    """Witness estimate from photon counts, standard error from the observed frequencies."""
    return witness_expectation(record.frequencies(), record.shots)


def reduced_system_state(final: PhotonState) -> DensityMatrix4:
    """Trace over the path: sum of the per-path branch projectors."""
    branches = final.amplitudes.reshape(4, final.path_count)
    rho_internal = branches @ branches.conj().T
    rho = INTERNAL_TO_COMPUTATIONAL @ rho_internal @ INTERNAL_TO_COMPUTATIONAL.T
    return DensityMatrix4(rho, Basis.COMPUTATIONAL)


def detector_probabilities(measurement: CompiledCircuit, rho: DensityMatrix4) -> Dict[str, float]:
    """Detection probabilities of a mixed two-qubit state entering at the source path."""
    r = rho.in_basis(Basis.COMPUTATIONAL).matrix
    rho_internal = INTERNAL_TO_COMPUTATIONAL @ r @ INTERNAL_TO_COMPUTATIONAL.T
    n = measurement.path_count
    source = measurement.slot(measurement.ir.source_path or measurement.ir.inputs[0])
    columns = measurement.unitary[:, [a * n + source for a in range(4)]]
    populations = np.real(np.einsum("ij,jk,ik->i", columns, rho_internal, columns.conj()))
    populations = populations.reshape(4, n).sum(axis=0)
    return {name: float(populations[measurement.slot(path)]) for path, name in measurement.ir.detectors.items()}


def branch_detector_probabilities(measurement: CompiledCircuit, final: PhotonState) -> Dict[str, float]:
    """Send each environment branch through the measurement separately and add the counts."""
    totals = {name: 0.0 for name in measurement.ir.detectors.values()}
    for label in final.labels:
        branch = final.branch(label)
        if np.linalg.norm(branch) == 0.0:
            continue
        out = propagate(measurement, measurement.state_on(branch))
        for name, p in measurement.detector_probabilities(out).items():
            totals[name] += p
    return totals


def sample_counts(probabilities: Mapping[str, float], shots: int, rng: np.random.Generator) -> DetectorRecord:
    p = np.clip(np.array([probabilities[d] for d in DETECTORS]), 0.0, None)
    counts = rng.multinomial(shots, p / p.sum())
    return DetectorRecord({d: int(c) for d, c in zip(DETECTORS, counts)}, shots)


@dataclass(frozen=True)
class ExperimentResult:
    angles: AngleSetting
    record: DetectorRecord
    probabilities: Dict[str, float]
    estimate: WitnessEstimate
    exact: WitnessEstimate
    reduced_state: DensityMatrix4 = field(repr=False)

    @property
    def witness_estimate(self) -> float:
        return self.estimate.value

    @property
    def concurrence_estimate(self) -> float:
        return self.estimate.concurrence


def _measured_probabilities(
    param: float,
    model: EnvironmentModel
) -> Tuple[AngleSetting, DensityMatrix4, Dict[str, float]]:
    angles = solve_angles(param, model)
    evolution = compile_circuit(build_evolution_circuit(angles))
    final = propagate(evolution, evolution.prepared_state())
    rho = reduced_system_state(final)

    measurement = compile_circuit(build_measurement_circuit())
    probabilities = detector_probabilities(measurement, rho)
    logger.info(f"Detector probabilities at {model.parameter}={param}: "
                + ", ".join(f"{d}={probabilities[d]:.6f}" for d in DETECTORS))
    return angles, rho, probabilities


def _sampled_result(
    measured: Tuple[AngleSetting, DensityMatrix4, Dict[str, float]],
    shots: int,
    rng: np.random.Generator,
    exact: bool
) -> ExperimentResult:
    angles, rho, probabilities = measured
    record = sample_counts(probabilities, shots, rng)
    exact_estimate = witness_expectation(probabilities, shots)
    estimate = exact_estimate if exact else witness_expectation_from_counts(record)
    return ExperimentResult(
        angles=angles,
        record=record,
        probabilities=probabilities,
        estimate=estimate,
        exact=exact_estimate,
        reduced_state=rho,
    )


def run_experiment(
    param: float,
    shots: int,
    seed: int,
    model: EnvironmentModel = MULTIMODE_VACUUM,
    exact: bool = False
) -> ExperimentResult:
    """Simulate the evolve-then-measure experiment at one time.

    Counts are always drawn from ``numpy.random.default_rng(seed)``; with
    ``exact=True`` the reported estimate uses the exact probabilities.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")

    result = _sampled_result(_measured_probabilities(param, model), shots, np.random.default_rng(seed), exact)
    logger.info(f"Sampled {shots} shots (seed {seed}): witness {result.estimate.value:.6f} "
                f"± {result.estimate.standard_error:.2e}")
    return result


def repeat_experiment(
    param: float,
    shots: int,
    seed: int,
    repeats: int,
    model: EnvironmentModel = MULTIMODE_VACUUM,
    workers: int = 1
) -> List[ExperimentResult]:
    """Independent repetitions of the sampled experiment.

    Repetition ``i`` draws its counts from the ``i``-th generator spawned from
    ``seed``, so the results do not depend on ``workers``.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")

    measured = _measured_probabilities(param, model)
    generators = spawn_generators(seed, repeats)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(lambda rng: _sampled_result(measured, shots, rng, False), generators))

    estimates = np.array([r.estimate.concurrence for r in results])
    logger.info(f"{repeats} repetitions of {shots} shots (seed {seed}): "
                f"mean concurrence {estimates.mean():.6f}, spread {estimates.std():.2e}")
    return results


def exact_witness(rho: DensityMatrix4) -> float:
    """Tr(W rho) for the static witness, for comparison with the count estimator."""
    return static_witness().expectation(rho)
