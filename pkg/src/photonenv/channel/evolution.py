"""Exact solution of the collective-decay master equation.

All entries are written in the collective basis with indices
1 = |0,0>, 2 = |1,1>, 3 = |1,0>, 4 = |1,-1>. The map is linear, so the same
formulas propagate arbitrary (non-Hermitian) 4x4 matrices, which is what the
Choi construction needs.
"""

import logging

import numpy as np
import numpy.typing as npt

from ..numerics import kron
from .states import DICKE, Basis, DensityMatrix4

logger = logging.getLogger(__name__)

SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=np.complex128)  # |g><e| with e first
S_MINUS = kron(SIGMA_MINUS, np.eye(2)) + kron(np.eye(2), SIGMA_MINUS)
S_PLUS_S_MINUS = S_MINUS.conj().T @ S_MINUS


def _upper_triangle(r: np.ndarray, gamma_t: float) -> np.ndarray:
    """Evolve r_ij for i <= j; the strict lower triangle of the result is unused."""
    u = gamma_t
    x = np.exp(-u)
    x2 = x * x
    out = np.zeros((4, 4), dtype=np.complex128)

    out[0, 0] = r[0, 0]
    out[0, 1] = r[0, 1] * x
    out[0, 2] = r[0, 2] * x
    out[0, 3] = r[0, 3]

    out[1, 1] = r[1, 1] * x2
    out[1, 2] = r[1, 2] * x2
    out[1, 3] = r[1, 3] * x

    out[2, 2] = x2 * (r[2, 2] + 2 * u * r[1, 1])
    out[2, 3] = x * r[2, 3] + 2 * x * (-np.expm1(-u)) * r[1, 2]

    out[3, 3] = (
        r[3, 3]
        + r[1, 1] * (-np.expm1(-2 * u) - 2 * u * x2)
        + r[2, 2] * (-np.expm1(-2 * u))
    )
    return out


def propagate_collective(matrix: npt.ArrayLike, gamma_t: float) -> np.ndarray:
    """Apply the channel at Gamma*t to any 4x4 matrix given in the collective basis."""
    r = np.asarray(matrix, dtype=np.complex128)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {r.shape}")
    if not np.isfinite(gamma_t) or gamma_t < 0:
        raise ValueError(f"gammaT must be finite and >= 0, got {gamma_t}")

    upper = _upper_triangle(r, gamma_t)
    # The lower triangle obeys the same formulas on the transpose; all
    # coefficients are real so no conjugation enters.
    lower = _upper_triangle(r.T, gamma_t).T
    return np.triu(upper) + np.tril(lower, k=-1)


def evolve_analytic(rho0: DensityMatrix4, gamma_t: float) -> DensityMatrix4:
    """State at Gamma*t starting from ``rho0``; output basis matches input basis."""
    collective = rho0.in_basis(Basis.COLLECTIVE)
    evolved = DensityMatrix4(propagate_collective(collective.matrix, gamma_t), Basis.COLLECTIVE)
    return evolved.in_basis(rho0.basis)


def steady_state(rho0: DensityMatrix4) -> DensityMatrix4:
    """Gamma*t -> infinity limit: singlet block frozen, triplet drained into |1,-1>."""
    r = rho0.in_basis(Basis.COLLECTIVE).matrix
    out = np.zeros((4, 4), dtype=np.complex128)
    out[0, 0] = r[0, 0]
    out[0, 3] = r[0, 3]
    out[3, 0] = r[3, 0]
    out[3, 3] = r[3, 3] + r[1, 1] + r[2, 2]
    return DensityMatrix4(out, Basis.COLLECTIVE).in_basis(rho0.basis)


def emission_rate(rho: DensityMatrix4) -> float:
    """<S+S-> in units of Gamma."""
    operator = S_PLUS_S_MINUS
    if rho.basis is Basis.COLLECTIVE:
        operator = DICKE.to_collective(operator)
    return max(rho.expectation(operator), 0.0)
