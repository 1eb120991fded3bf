"""Concurrence of two-qubit states."""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..channel.states import Basis, DensityMatrix4
from ..numerics import clamp_nonnegative, general_eigenvalues_4x4, kron

logger = logging.getLogger(__name__)

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


@dataclass(frozen=True, eq=False)
class SpinFlip:
    """sigma_y ⊗ sigma_y in the computational basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if np.max(np.abs(m.imag)) > 0:
            raise ValueError("spin flip must be real")
        if not np.array_equal(m @ m, np.eye(4)):
            raise ValueError("spin flip must square to the identity")
        m = np.real(m).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def flip(self, rho: np.ndarray) -> np.ndarray:
        """rho~ = (sy ⊗ sy) rho* (sy ⊗ sy)."""
        return self.matrix @ np.conj(rho) @ self.matrix


SPIN_FLIP = SpinFlip(kron(SIGMA_Y, SIGMA_Y))


@dataclass(frozen=True)
class ConcurrenceResult:
    lambda_gap: float
    sqrt_eigs: Tuple[float, float, float, float]

    @property
    def concurrence(self) -> float:
        return max(0.0, self.lambda_gap)


def concurrence(rho: DensityMatrix4) -> ConcurrenceResult:
    """Concurrence from the spectrum of rho rho~.

    Raises:
        SpectrumOutOfRange: If the eigenvalues of rho rho~ are not real and
            nonnegative within the clamping tolerance
    """
    r = rho.in_basis(Basis.COMPUTATIONAL).matrix
    eigenvalues = general_eigenvalues_4x4(r @ SPIN_FLIP.flip(r))
    roots = np.sort(np.sqrt(clamp_nonnegative(eigenvalues)))[::-1]
    gap = float(roots[0] - roots[1] - roots[2] - roots[3])
    return ConcurrenceResult(lambda_gap=gap, sqrt_eigs=tuple(float(s) for s in roots))


def concurrence_eg_closed_form(gamma_t: float) -> float:
    """Concurrence of the state evolved from |eg>: (1 - e^{-2 Gamma t}) / 2."""
    return float(-np.expm1(-2.0 * gamma_t) / 2.0)


def concurrence_ee_branches(gamma_t: float) -> Tuple[float, float]:
    """The two candidate values whose max with 0 is the concurrence from |ee>.

    Both are nonpositive for every Gamma*t, so no entanglement is generated.
    """
    u = float(gamma_t)
    x2 = np.exp(-2.0 * u)
    c1 = -2.0 * u * x2
    ground = max(-np.expm1(-2.0 * u) - 2.0 * u * x2, 0.0)
    c2 = 2.0 * u * x2 - 2.0 * np.exp(-u) * np.sqrt(ground)
    return float(c1), float(c2)


def concurrence_ee_closed_form(gamma_t: float) -> float:
    return max(0.0, *concurrence_ee_branches(gamma_t))


def concurrence_cavity_eg(gt: float) -> float:
    """Concurrence from |eg> in a single-mode cavity: sin^2(sqrt2 g t) / 2."""
    return float(np.sin(np.sqrt(2.0) * gt) ** 2 / 2.0)
