"""Compile a validated netlist into one unitary on polarization ⊗ mode ⊗ path.

The full space has dimension 4P. Amplitudes are stored as a (2, 2, P) array
(pol, mode, path), so the flat index is (2*pol + mode) * P + path. Every path
label owns a slot; each missing input port of a two-port element gets its own
hidden vacuum slot.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import numpy.typing as npt

from ..core.base import OpticalElement
from ..core.exceptions import NonUnitaryComposite
from ..numerics import dagger
from .elements import MODES, POLARIZATIONS
from .netlist import CircuitIR

logger = logging.getLogger(__name__)

UNITARITY_TOL = 1e-9

# internal index 2*pol + mode runs Hh, Hv, Vh, Vv = gg, ge, eg, ee
INTERNAL_TO_COMPUTATIONAL = np.eye(4)[::-1]


def internal_from_computational(ket: npt.ArrayLike) -> np.ndarray:
    return INTERNAL_TO_COMPUTATIONAL @ np.asarray(ket, dtype=np.complex128)


def computational_from_internal(vec: npt.ArrayLike) -> np.ndarray:
    return INTERNAL_TO_COMPUTATIONAL @ np.asarray(vec, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class PhotonState:
    """Single-photon amplitudes over (pol, mode, path)."""

    amplitudes: np.ndarray
    labels: Tuple[str, ...]

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2, 2, len(self.labels)):
            raise ValueError(f"amplitudes must have shape (2, 2, {len(self.labels)}), got {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def path_count(self) -> int:
        return len(self.labels)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def vector(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    def branch(self, path: str) -> np.ndarray:
        """Unnormalized internal 4-vector on one path."""
        return self.amplitudes[:, :, self.labels.index(path)].reshape(4)

    def amplitude(self, pol: str, mode: str, path: str) -> complex:
        return complex(self.amplitudes[POLARIZATIONS.index(pol), MODES.index(mode), self.labels.index(path)])

    def path_probability(self, path: str) -> float:
        return float(np.sum(np.abs(self.branch(path)) ** 2))

    def nonzero(self, atol: float = 1e-12) -> List[Tuple[str, str, str, complex]]:
        """(pol, mode, path, amplitude) for every amplitude above ``atol``."""
        out = []
        for p, pol in enumerate(POLARIZATIONS):
            for m, mode in enumerate(MODES):
                for s, label in enumerate(self.labels):
                    amp = self.amplitudes[p, m, s]
                    if abs(amp) > atol:
                        out.append((pol, mode, label, complex(amp)))
        return out


@dataclass(frozen=True, eq=False)
class CompiledCircuit:
    ir: CircuitIR
    labels: Tuple[str, ...]
    unitary: np.ndarray

    @property
    def path_count(self) -> int:
        return len(self.labels)

    def slot(self, path: str) -> int:
        return self.labels.index(path)

    def state_on(self, internal: npt.ArrayLike, path: Optional[str] = None) -> PhotonState:
        """Place an internal 4-vector on ``path`` (default: the source path)."""
        path = path or self.ir.source_path or (self.ir.inputs[0] if self.ir.inputs else self.labels[0])
        amps = np.zeros((2, 2, self.path_count), dtype=np.complex128)
        amps[:, :, self.slot(path)] = np.asarray(internal, dtype=np.complex128).reshape(2, 2)
        return PhotonState(amps, self.labels)

    def prepared_state(self) -> PhotonState:
        prep = self.ir.preparation
        if prep is None:
            raise ValueError("netlist has no polarized source; supply an input state")
        internal = np.zeros(4, dtype=np.complex128)
        internal[2 * POLARIZATIONS.index(prep.pol) + MODES.index(prep.mode)] = 1.0
        return self.state_on(internal, prep.path)

    def detector_probabilities(self, state: PhotonState) -> Dict[str, float]:
        return {name: state.path_probability(path) for path, name in self.ir.detectors.items()}


def _embed(local: np.ndarray, in_slots: Sequence[int], out_slots: Sequence[int], n_paths: int) -> np.ndarray:
    """Lift a port-local unitary to the full 4P space.

    Slots produced but not consumed are mapped onto slots consumed but not
    produced, which keeps the lifted operator unitary; these slots hold no
    amplitude in a validated circuit.
    """
    k = len(out_slots)
    full = np.zeros((4, n_paths, 4, n_paths), dtype=np.complex128)
    touched = set(in_slots) | set(out_slots)
    for s in range(n_paths):
        if s not in touched:
            full[:, s, :, s] = np.eye(4)

    local4 = local.reshape(4, k, 4, k)
    for j, s_in in enumerate(in_slots):
        for kk, s_out in enumerate(out_slots):
            full[:, s_out, :, s_in] = local4[:, kk, :, j]

    extra_out = [s for s in out_slots if s not in in_slots]
    extra_in = [s for s in in_slots if s not in out_slots]
    for s_from, s_to in zip(extra_out, extra_in):
        full[:, s_to, :, s_from] = np.eye(4)

    return full.reshape(4 * n_paths, 4 * n_paths)


def _unitarity_residual(u: np.ndarray) -> float:
    return float(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))))


def compile_circuit(ir: CircuitIR, tol: float = UNITARITY_TOL) -> CompiledCircuit:
    """Product of element unitaries in dataflow order.

    Raises:
        NonUnitaryComposite: If an element or the product fails the unitarity check
    """
    labels: List[str] = list(ir.paths) or ["p0"]
    plan = []
    vacuum = 0
    for el in ir.elements:
        if not el.is_transforming:
            continue
        ports_in = list(el.inputs)
        while len(ports_in) < len(el.outputs):
            ports_in.append(f"~vac{vacuum}")
            vacuum += 1
        plan.append((el, ports_in))
    labels.extend(f"~vac{n}" for n in range(vacuum))

    n_paths = len(labels)
    index = {label: n for n, label in enumerate(labels)}
    order = {el_idx: pos for pos, el_idx in enumerate(nx.lexicographical_topological_sort(ir.graph))}
    position = {id(el): order.get(n, n) for n, el in enumerate(ir.elements)}
    plan.sort(key=lambda item: position[id(item[0])])

    unitary = np.eye(4 * n_paths, dtype=np.complex128)
    for el, ports_in in plan:
        step = _embed(el.local_unitary(), [index[p] for p in ports_in], [index[p] for p in el.outputs], n_paths)
        residual = _unitarity_residual(step)
        if not residual <= tol:
            raise NonUnitaryComposite(f"{el.kind} on line {el.line} is not unitary (residual {residual:.3e})")
        unitary = step @ unitary

    residual = _unitarity_residual(unitary)
    if not residual <= tol:
        raise NonUnitaryComposite(f"compiled circuit is not unitary (residual {residual:.3e})")

    logger.debug(f"Compiled {len(plan)} elements over {n_paths} paths")
    return CompiledCircuit(ir=ir, labels=tuple(labels), unitary=unitary)


def propagate(compiled: CompiledCircuit, state: PhotonState) -> PhotonState:
    if state.labels != compiled.labels:
        raise ValueError("state was not built for this circuit")
    out = compiled.unitary @ state.vector()
    return PhotonState(out.reshape(2, 2, compiled.path_count), compiled.labels)
