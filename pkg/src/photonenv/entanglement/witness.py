"""Entanglement witnesses.

``witness_from_state`` builds W = 1 - (U V^H)^{T_A} from the singular value
decomposition of rho^{T_A}, so that Tr(W rho) = 1 - ||rho^{T_A}||_1.
``static_witness`` is the fixed observable that this construction yields for
every state evolved from |eg> (or |ge>) under the collective channel, which is
why one measurement setting suffices for the whole trajectory.
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..channel.states import DICKE, Basis, DensityMatrix4
from ..core.exceptions import FamilyMismatch
from ..numerics import dagger, hermiticity_residual, partial_transpose, svd

logger = logging.getLogger(__name__)

WITNESS_TO_CONCURRENCE = 1.0 - np.sqrt(2.0)
FAMILY_TOL = 1e-6

_R2 = 1.0 / np.sqrt(2.0)

# Entries of the computational-basis density matrix allowed to be nonzero for
# states evolved from |eg> or |ge>.
_FAMILY_SUPPORT = np.zeros((4, 4), dtype=bool)
_FAMILY_SUPPORT[1:3, 1:3] = True
_FAMILY_SUPPORT[3, 3] = True


class WitnessOrigin(Enum):
    STATIC = "static"
    SVD = "svd"


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian observable in the computational basis."""

    matrix: np.ndarray
    origin: WitnessOrigin = WitnessOrigin.STATIC
    gamma_t: Optional[float] = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (4, 4):
            raise ValueError(f"witness must be 4x4, got {m.shape}")
        if hermiticity_residual(m) > 1e-10:
            raise ValueError("witness must be Hermitian")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def expectation(self, rho: DensityMatrix4) -> float:
        """Tr(W rho)."""
        return rho.in_basis(Basis.COMPUTATIONAL).expectation(self.matrix)

    def in_collective_basis(self) -> np.ndarray:
        return DICKE.to_collective(self.matrix)


def static_witness() -> Witness:
    m = np.array([
        [1 + _R2, 0.0, 0.0, 0.0],
        [0.0, 0.0, _R2, 0.0],
        [0.0, _R2, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1 - _R2],
    ], dtype=np.complex128)
    return Witness(m, WitnessOrigin.STATIC)


def witness_from_state(rho: DensityMatrix4, gamma_t: Optional[float] = None) -> Witness:
    """Optimal decomposable witness for ``rho`` built from the SVD of rho^{T_A}."""
    r = rho.in_basis(Basis.COMPUTATIONAL).matrix
    u, _, vdag = svd(partial_transpose(r, "A"))
    w = np.eye(4) - partial_transpose(u @ vdag, "A")

    residual = hermiticity_residual(w) / 2
    if residual >= 1e-8:
        # rho^{T_A} is singular: U V^H is only fixed on its support
        logger.warning(f"witness anti-Hermitian residual {residual:.3e}; keeping the Hermitian part")
    return Witness((w + dagger(w)) / 2, WitnessOrigin.SVD, gamma_t)


def in_family(rho: DensityMatrix4, tol: float = FAMILY_TOL) -> bool:
    """True if rho has the sparsity of a state evolved from |eg> or |ge>."""
    r = rho.in_basis(Basis.COMPUTATIONAL).matrix
    return bool(np.all(np.abs(r[~_FAMILY_SUPPORT]) <= tol))


def concurrence_from_witness(rho: DensityMatrix4) -> float:
    """Tr(W rho) / (1 - sqrt2) for the static witness.

    Outside the family of states evolved from |eg> the number is not a
    concurrence; a FamilyMismatch warning is issued and the value returned.
    """
    if not in_family(rho):
        message = "state is outside the evolved-|eg> family; witness value is not a concurrence"
        logger.warning(message)
        warnings.warn(message, FamilyMismatch, stacklevel=2)
    return static_witness().expectation(rho) / WITNESS_TO_CONCURRENCE
