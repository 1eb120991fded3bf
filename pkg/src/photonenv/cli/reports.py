"""Tables produced by the command-line tools."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..channel import (
    DensityMatrix4,
    KrausSet,
    apply_model,
    emission_rate,
    environment_for,
    evolve_analytic,
    initial_state,
    kraus_closed_form,
    kraus_from_choi,
)
from ..entanglement import (
    concurrence,
    concurrence_cavity_eg,
    concurrence_ee_closed_form,
    concurrence_eg_closed_form,
    static_witness,
)
from ..numerics import dagger
from ..photonics import DETECTORS, CompiledCircuit, PhotonState
from ..photonics.experiment import ExperimentResult
from ..sampling import random_state

logger = logging.getLogger(__name__)

SELF_CHECK_TOL = 1e-6
PARAMETERS = ("gammaT", "gt")


@dataclass(frozen=True)
class SweepSpec:
    """Linear grid of ``points`` values of a time parameter."""

    parameter: str
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"parameter must be one of {', '.join(PARAMETERS)}, got '{self.parameter}'")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise ValueError("start and stop must be finite")
        if self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if not self.start < self.stop:
            raise ValueError(f"start ({self.start}) must be below stop ({self.stop})")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


def _analytic_concurrence(parameter: str, initial: str, value: float) -> float:
    if parameter == "gammaT":
        if initial in ("eg", "ge"):
            return concurrence_eg_closed_form(value)
        if initial == "ee":
            return concurrence_ee_closed_form(value)
    elif initial in ("eg", "ge"):
        return concurrence_cavity_eg(value)
    return float("nan")


def curve_point(parameter: str, value: float, rho0: DensityMatrix4, initial: str) -> Dict[str, float]:
    model = environment_for(parameter)
    rho = apply_model(rho0, value, model) if model.is_cavity else evolve_analytic(rho0, value)
    return {
        parameter: float(value),
        "concurrence_analytic": _analytic_concurrence(parameter, initial, value),
        "concurrence_numeric": concurrence(rho).concurrence,
        "witness_trace": static_witness().expectation(rho),
        "emission_rate": emission_rate(rho),
    }


def curve_table(
    spec: SweepSpec,
    initial: str = "eg",
    alpha: Optional[float] = None,
    workers: int = 1
) -> pd.DataFrame:
    """Concurrence, witness and emission rate along the sweep, rows in grid order."""
    rho0 = initial_state(initial, alpha)
    grid = spec.grid()
    logger.info(f"Sweeping {spec.parameter} over [{spec.start}, {spec.stop}] ({spec.points} points) from '{initial}'")

    def evaluate(value: float) -> Dict[str, float]:
        return curve_point(spec.parameter, value, rho0, initial)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(tqdm(executor.map(evaluate, grid), total=len(grid), desc="curve", disable=None))
    return pd.DataFrame(rows)


def _action(ks: KrausSet, rho: DensityMatrix4) -> np.ndarray:
    """sum K rho K^H in the Kraus basis, without the completeness check."""
    r = rho.in_basis(ks.basis).matrix
    return sum(k @ r @ dagger(k) for k in ks.operators)


@dataclass(frozen=True)
class KrausReport:
    gamma_t: float
    closed_form: KrausSet
    choi: KrausSet
    closed_form_residual: float
    choi_residual: float
    max_action_discrepancy: float

    @property
    def passed(self) -> bool:
        return max(self.closed_form_residual, self.choi_residual, self.max_action_discrepancy) <= SELF_CHECK_TOL

    def summary(self) -> Dict[str, Any]:
        return {
            "gamma_t": self.gamma_t,
            "closed_form_residual": self.closed_form_residual,
            "choi_residual": self.choi_residual,
            "choi_rank": len(self.choi),
            "max_action_discrepancy": self.max_action_discrepancy,
        }

    def operator_table(self) -> pd.DataFrame:
        rows = []
        for name, ks in (("closed_form", self.closed_form), ("choi", self.choi)):
            for label, op in zip(ks.labels, ks.operators):
                for (i, j), value in np.ndenumerate(op):
                    rows.append({
                        "set": name, "label": label, "row": i + 1, "col": j + 1,
                        "real": float(value.real), "imag": float(value.imag),
                    })
        return pd.DataFrame(rows)


def kraus_report(gamma_t: float, seed: int, samples: int = 20) -> KrausReport:
    """Closed-form and Choi Kraus sets compared against the analytic solution."""
    closed, _ = kraus_closed_form(gamma_t)
    choi = kraus_from_choi(gamma_t)
    rng = np.random.default_rng(seed)

    discrepancy = 0.0
    for _ in range(samples):
        rho = random_state(rng)
        for ks in (closed, choi):
            reference = evolve_analytic(rho, gamma_t).in_basis(ks.basis).matrix
            discrepancy = max(discrepancy, float(np.max(np.abs(_action(ks, rho) - reference))))

    report = KrausReport(
        gamma_t=gamma_t,
        closed_form=closed,
        choi=choi,
        closed_form_residual=closed.completeness_residual(),
        choi_residual=choi.completeness_residual(),
        max_action_discrepancy=discrepancy,
    )
    logger.info(f"Kraus self-check at gammaT={gamma_t}: {report.summary()}")
    return report


def circuit_table(compiled: CompiledCircuit, final: PhotonState, atol: float = 1e-12) -> pd.DataFrame:
    """Nonzero output amplitudes followed by detector probabilities."""
    rows: List[Dict[str, Any]] = []
    for pol, mode, path, amp in final.nonzero(atol):
        if path.startswith("~"):
            continue
        rows.append({
            "record": "amplitude", "pol": pol, "mode": mode, "path": path, "detector": None,
            "real": amp.real, "imag": amp.imag, "probability": abs(amp) ** 2,
        })
    for name, p in compiled.detector_probabilities(final).items():
        rows.append({
            "record": "detector", "pol": None, "mode": None, "path": compiled.ir.detector_path(name),
            "detector": name, "real": None, "imag": None, "probability": p,
        })
    columns = ["record", "pol", "mode", "path", "detector", "real", "imag", "probability"]
    return pd.DataFrame(rows, columns=columns)


def experiment_row(result: ExperimentResult, parameter: str, seed: int, repeat: int = 0) -> Dict[str, Any]:
    row: Dict[str, Any] = {
        parameter: result.angles.param, "shots": result.record.shots, "seed": seed, "repeat": repeat,
    }
    for n, d in enumerate(DETECTORS, start=1):
        row[f"C{n}"] = result.record.counts[d]
    for n, d in enumerate(DETECTORS, start=1):
        row[f"p{n}"] = result.probabilities[d]
    row.update({
        "witness_estimate": result.estimate.value,
        "witness_standard_error": result.estimate.standard_error,
        "concurrence_estimate": result.estimate.concurrence,
        "concurrence_standard_error": result.estimate.concurrence_standard_error,
        "exact_witness": result.exact.value,
        "exact_concurrence": result.exact.concurrence,
        "theta1": result.angles.theta1,
        "theta2": result.angles.theta2,
    })
    return row
