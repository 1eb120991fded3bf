"""Two-qubit density matrices and the computational/collective bases.

Computational ordering is (ee, eg, ge, gg). Collective ordering is the
singlet |0,0> = (eg - ge)/sqrt2 followed by the triplet |1,1> = ee,
|1,0> = (eg + ge)/sqrt2 and |1,-1> = gg.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
import numpy.typing as npt

from ..core.exceptions import InvalidState
from ..numerics import DEFAULT_TOL, as_cmatrix, dagger, hermiticity_residual, hermitian_eigensystem

logger = logging.getLogger(__name__)

COMPUTATIONAL_LABELS: Tuple[str, ...] = ("ee", "eg", "ge", "gg")
COLLECTIVE_LABELS: Tuple[str, ...] = ("0,0", "1,1", "1,0", "1,-1")

_R2 = 1.0 / np.sqrt(2.0)


class Basis(Enum):
    COMPUTATIONAL = "computational"
    COLLECTIVE = "collective"


@dataclass(frozen=True, eq=False)
class BasisConvention:
    """Unitary ``transform`` with rho_collective = T rho_computational T^H.

    Rows of ``transform`` are the collective basis kets written in the
    computational basis.
    """

    transform: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.transform, dtype=np.complex128)
        if t.shape != (4, 4):
            raise ValueError(f"basis transform must be 4x4, got {t.shape}")
        if np.max(np.abs(t @ dagger(t) - np.eye(4))) > 1e-12:
            raise ValueError("basis transform is not unitary")
        object.__setattr__(self, "transform", t)

    def to_collective(self, m: npt.ArrayLike) -> np.ndarray:
        return self.transform @ np.asarray(m) @ dagger(self.transform)

    def to_computational(self, m: npt.ArrayLike) -> np.ndarray:
        return dagger(self.transform) @ np.asarray(m) @ self.transform


DICKE = BasisConvention(np.array([
    [0.0, _R2, -_R2, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, _R2, _R2, 0.0],
    [0.0, 0.0, 0.0, 1.0],
]))


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated two-qubit density matrix tagged with its basis.

    Raises:
        InvalidState: If the matrix is not 4x4, not unit trace, not Hermitian,
            or has an eigenvalue below ``-tol``
    """

    matrix: np.ndarray
    basis: Basis = Basis.COMPUTATIONAL
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        try:
            m = as_cmatrix(self.matrix)
        except ValueError as e:
            raise InvalidState(str(e)) from e
        if m.shape != (4, 4):
            raise InvalidState(f"density matrix must be 4x4, got {m.shape}")

        trace = np.trace(m)
        if not abs(trace - 1.0) <= self.tol:
            raise InvalidState(f"trace {trace.real:.12g}{trace.imag:+.3g}j differs from 1")

        residual = hermiticity_residual(m)
        if not residual <= self.tol:
            raise InvalidState(f"not Hermitian (residual {residual:.3e})")

        smallest = hermitian_eigensystem(m, tol=self.tol).eigenvalues[0]
        if smallest < -self.tol:
            raise InvalidState(f"negative eigenvalue {smallest:.3e}")

        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_ket(cls, ket: npt.ArrayLike, basis: Basis = Basis.COMPUTATIONAL) -> "DensityMatrix4":
        vec = np.asarray(ket, dtype=np.complex128).reshape(4)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise InvalidState("zero ket")
        vec = vec / norm
        return cls(np.outer(vec, vec.conj()), basis)

    def in_basis(self, basis: Basis, convention: BasisConvention = DICKE) -> "DensityMatrix4":
        if basis is self.basis:
            return self
        if basis is Basis.COLLECTIVE:
            return DensityMatrix4(convention.to_collective(self.matrix), basis, self.tol)
        return DensityMatrix4(convention.to_computational(self.matrix), basis, self.tol)

    def element(self, row: str, col: str) -> complex:
        labels = COMPUTATIONAL_LABELS if self.basis is Basis.COMPUTATIONAL else COLLECTIVE_LABELS
        return complex(self.matrix[labels.index(row), labels.index(col)])

    def expectation(self, observable: npt.ArrayLike) -> float:
        """Re Tr(O rho), with ``observable`` expressed in this state's basis."""
        return float(np.real(np.trace(np.asarray(observable) @ self.matrix)))

    def allclose(self, other: "DensityMatrix4", atol: float = 1e-9) -> bool:
        return bool(np.allclose(self.matrix, other.in_basis(self.basis).matrix, rtol=0.0, atol=atol))


def to_collective(rho: DensityMatrix4) -> DensityMatrix4:
    return rho.in_basis(Basis.COLLECTIVE)


def to_computational(rho: DensityMatrix4) -> DensityMatrix4:
    return rho.in_basis(Basis.COMPUTATIONAL)


def _ket(**amplitudes: complex) -> np.ndarray:
    vec = np.zeros(4, dtype=np.complex128)
    for label, amp in amplitudes.items():
        vec[COMPUTATIONAL_LABELS.index(label)] = amp
    return vec


_NAMED_KETS: Dict[str, np.ndarray] = {
    "ee": _ket(ee=1),
    "eg": _ket(eg=1),
    "ge": _ket(ge=1),
    "gg": _ket(gg=1),
    "singlet": _ket(eg=_R2, ge=-_R2),
    "triplet0": _ket(eg=_R2, ge=_R2),
    "bell_plus": _ket(ee=_R2, gg=_R2),
    "bell_minus": _ket(ee=_R2, gg=-_R2),
}

PURE_STATE_NAMES: Tuple[str, ...] = tuple(_NAMED_KETS)
STATE_NAMES: Tuple[str, ...] = PURE_STATE_NAMES + ("psi", "phi")


def initial_ket(name: str, alpha: Optional[float] = None) -> np.ndarray:
    """Computational-basis ket of a named state.

    ``psi`` is cos(a)|eg> + sin(a)|ge> and ``phi`` is cos(a)|gg> + sin(a)|ee>,
    with ``alpha`` in degrees.
    """
    if name in _NAMED_KETS:
        return _NAMED_KETS[name].copy()
    if name in ("psi", "phi"):
        if alpha is None:
            raise ValueError(f"state '{name}' needs an angle alpha")
        a = np.deg2rad(alpha)
        if name == "psi":
            return _ket(eg=np.cos(a), ge=np.sin(a))
        return _ket(gg=np.cos(a), ee=np.sin(a))
    raise KeyError(f"unknown initial state '{name}'; choose from {', '.join(STATE_NAMES)}")


def initial_state(name: str, alpha: Optional[float] = None) -> DensityMatrix4:
    """Projector onto a named initial state, computational basis."""
    return DensityMatrix4.from_ket(initial_ket(name, alpha))
