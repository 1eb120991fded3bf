"""Kraus presentations of the channel.

Three independent routes give the same channel:

* ``kraus_closed_form``: four operators written from the Kraus coefficients
* ``kraus_from_choi``: eigen-decomposition of the Choi matrix assembled from
  the analytic solution
* ``kraus_from_dilation``: environment components of the system-environment
  isometry, which is also the only route for the single-mode cavity
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from ..core.exceptions import IncompleteKrausSet, InconsistentCoefficients, NegativeChoiEigenvalue
from ..numerics import DEFAULT_TOL, dagger, hermitian_eigensystem
from .coefficients import (
    COEFFICIENT_TOL,
    MULTIMODE_VACUUM,
    EnvironmentModel,
    KrausCoefficients,
    MapCoefficients,
    kraus_coefficients,
    map_coefficients,
)
from .evolution import propagate_collective
from .states import Basis, DensityMatrix4

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10
CHOI_NEGATIVE_TOL = 1e-8
COMPLETENESS_TOL = 1e-8

EE, EG, GE, GG = range(4)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Kraus operators together with the basis they are written in."""

    operators: Tuple[np.ndarray, ...]
    labels: Tuple[str, ...]
    basis: Basis = Basis.COLLECTIVE

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.operators)
        if not ops:
            raise IncompleteKrausSet("Kraus set is empty")
        if any(k.shape != (4, 4) for k in ops):
            raise ValueError("Kraus operators must be 4x4")
        if len(self.labels) != len(ops):
            raise ValueError("one label per Kraus operator is required")
        object.__setattr__(self, "operators", ops)

    def __len__(self) -> int:
        return len(self.operators)

    def completeness_residual(self) -> float:
        """max |sum K^H K - I|."""
        total = sum(dagger(k) @ k for k in self.operators)
        return float(np.max(np.abs(total - np.eye(4))))

    def operator(self, label: str) -> np.ndarray:
        return self.operators[self.labels.index(label)]


def apply_channel(ks: KrausSet, rho: DensityMatrix4, tol: float = COMPLETENESS_TOL) -> DensityMatrix4:
    """sum_k K rho K^H, evaluated in the Kraus set's basis.

    Raises:
        IncompleteKrausSet: If the completeness residual exceeds ``tol``
    """
    residual = ks.completeness_residual()
    if not residual <= tol:
        raise IncompleteKrausSet(f"completeness residual {residual:.3e} exceeds {tol:.1e}")

    r = rho.in_basis(ks.basis).matrix
    out = sum(k @ r @ dagger(k) for k in ks.operators)
    return DensityMatrix4(out, ks.basis).in_basis(rho.basis)


def kraus_closed_form(gamma_t: float) -> Tuple[KrausSet, KrausCoefficients]:
    """Closed-form operators M0, M1A, M1B, M2 in the collective basis."""
    kc = kraus_coefficients(gamma_t)

    m0 = np.diag([1.0, kc.A, kc.A, 1.0]).astype(np.complex128)
    m1a = np.zeros((4, 4), dtype=np.complex128)
    m1a[2, 1], m1a[3, 2] = kc.B, kc.C
    m1b = np.zeros((4, 4), dtype=np.complex128)
    m1b[2, 1], m1b[3, 2] = kc.D, kc.E
    m2 = np.zeros((4, 4), dtype=np.complex128)
    m2[3, 1] = kc.F

    ks = KrausSet((m0, m1a, m1b, m2), ("M0", "M1A", "M1B", "M2"), Basis.COLLECTIVE)
    logger.debug(f"closed-form Kraus set at gammaT={gamma_t}: residual {ks.completeness_residual():.3e}")
    return ks, kc


def choi_matrix(gamma_t: float) -> np.ndarray:
    """16x16 block matrix whose (i, j) block is the image of |i><j| (collective basis)."""
    choi = np.zeros((16, 16), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            unit = np.zeros((4, 4), dtype=np.complex128)
            unit[i, j] = 1.0
            choi[4 * i:4 * i + 4, 4 * j:4 * j + 4] = propagate_collective(unit, gamma_t)
    return choi


def kraus_from_choi(
    gamma_t: float,
    rank_tol: float = RANK_TOL,
    negative_tol: float = CHOI_NEGATIVE_TOL
) -> KrausSet:
    """Kraus operators from the eigenvectors of the Choi matrix.

    Each kept eigenvector, scaled by the square root of its eigenvalue, is
    cut into four 4-segments; segment i becomes column i of the operator.

    Raises:
        NegativeChoiEigenvalue: If an eigenvalue lies below ``-negative_tol``
    """
    spectrum = hermitian_eigensystem(choi_matrix(gamma_t), tol=DEFAULT_TOL)
    values, vectors = spectrum.eigenvalues, spectrum.eigenvectors

    if values[0] < -negative_tol:
        raise NegativeChoiEigenvalue(f"Choi eigenvalue {values[0]:.3e} at gammaT={gamma_t}")

    kept = [n for n in range(len(values) - 1, -1, -1) if values[n] > rank_tol]
    operators = tuple(
        (np.sqrt(values[n]) * vectors[:, n]).reshape(4, 4).T for n in kept
    )
    labels = tuple(f"K{n}" for n in range(len(operators)))
    logger.debug(f"Choi rank {len(operators)} at gammaT={gamma_t}")
    return KrausSet(operators, labels, Basis.COLLECTIVE)


def build_dilation(
    coeffs: MapCoefficients,
    kc: Optional[KrausCoefficients] = None,
    model: EnvironmentModel = MULTIMODE_VACUUM,
    tol: float = COEFFICIENT_TOL
) -> np.ndarray:
    """System-environment isometry in the computational basis.

    Rows are indexed ``system * env_dimension + environment``, columns by the
    input system state (ee, eg, ge, gg) with the environment in |0>. The
    multimode model needs the Kraus coefficients to split the single-photon
    environment states over |1A>, |1B>.

    Raises:
        InconsistentCoefficients: If the columns are not orthonormal within ``tol``
    """
    d = model.env_dimension
    v = np.zeros((4 * d, 4), dtype=np.complex128)

    v[EE * d + 0, EE] = coeffs.M
    v[GG * d + d - 1, EE] = coeffs.N
    for col, (same, other) in ((EG, (EG, GE)), (GE, (GE, EG))):
        v[same * d + 0, col] = coeffs.Q
        v[other * d + 0, col] = coeffs.R
    v[GG * d + 0, GG] = 1.0

    if model.is_cavity:
        v[EG * d + 1, EE] = coeffs.P
        v[GE * d + 1, EE] = coeffs.P
        v[GG * d + 1, EG] = coeffs.S
        v[GG * d + 1, GE] = coeffs.S
    else:
        if kc is None:
            kc = kraus_coefficients(coeffs.param)
        for sys in (EG, GE):
            v[sys * d + 1, EE] = kc.X
            v[sys * d + 2, EE] = kc.Y
        for col in (EG, GE):
            v[GG * d + 1, col] = kc.Z
            v[GG * d + 2, col] = kc.W

    gram_error = float(np.max(np.abs(dagger(v) @ v - np.eye(4))))
    if not gram_error <= tol:
        raise InconsistentCoefficients(
            f"dilation is not an isometry at {model.parameter}={coeffs.param}: residual {gram_error:.3e}"
        )
    return v


def kraus_from_dilation(v: npt.ArrayLike, model: EnvironmentModel = MULTIMODE_VACUUM) -> KrausSet:
    """K_mu[s', s] = <s', mu|V|s>, one operator per environment state."""
    iso = np.asarray(v, dtype=np.complex128)
    d = model.env_dimension
    if iso.shape != (4 * d, 4):
        raise ValueError(f"expected a {4 * d}x4 isometry for {model.kind.value}, got {iso.shape}")
    tensor = iso.reshape(4, d, 4)
    operators = tuple(tensor[:, mu, :] for mu in range(d))
    labels = tuple(f"K{mu}" for mu in range(d))
    return KrausSet(operators, labels, Basis.COMPUTATIONAL)


def channel_kraus(param: float, model: EnvironmentModel = MULTIMODE_VACUUM) -> KrausSet:
    """Kraus set of either environment model at its time parameter."""
    if model.is_cavity:
        return kraus_from_dilation(build_dilation(map_coefficients(param, model), model=model), model)
    return kraus_closed_form(param)[0]


def apply_model(rho: DensityMatrix4, param: float, model: EnvironmentModel = MULTIMODE_VACUUM) -> DensityMatrix4:
    """Evolve ``rho`` under the chosen environment model."""
    return apply_channel(channel_kraus(param, model), rho)
