"""Dense complex-matrix kernel.

Thin wrappers over ``scipy.linalg`` that validate their inputs, fix output
ordering and translate LAPACK failures into photonenv exceptions. Nothing in
here knows about qubits or photons beyond the 2x2 split used by
``partial_transpose``.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Optional, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg as sla

from ..core.exceptions import NoConvergence, NotHermitian, SpectrumOutOfRange

logger = logging.getLogger(__name__)

CMatrix = npt.NDArray[np.complex128]

DEFAULT_TOL = 1e-9
CLAMP_TOL = 1e-9
NOISE_FLOOR = 1e-14


def as_cmatrix(m: npt.ArrayLike) -> CMatrix:
    """Coerce ``m`` to a finite 2-D complex array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _require_square(arr: CMatrix, what: str) -> None:
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{what} requires a square matrix, got shape {arr.shape}")


def dagger(m: npt.ArrayLike) -> CMatrix:
    return np.conj(np.asarray(m, dtype=np.complex128)).T


def hermiticity_residual(m: npt.ArrayLike) -> float:
    arr = np.asarray(m, dtype=np.complex128)
    return float(np.max(np.abs(arr - dagger(arr))))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues with optional eigenvectors stored as columns."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[CMatrix] = None

    def __post_init__(self):
        if self.eigenvectors is not None:
            if self.eigenvectors.shape[1] != len(self.eigenvalues):
                raise ValueError("eigenvector count does not match eigenvalue count")
            norms = np.linalg.norm(self.eigenvectors, axis=0)
            if np.max(np.abs(norms - 1.0)) > 1e-12:
                raise ValueError("eigenvectors are not normalized")

    def __len__(self) -> int:
        return len(self.eigenvalues)


def kron(a: npt.ArrayLike, b: npt.ArrayLike) -> CMatrix:
    """Kronecker product ``a ⊗ b``."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def hermitian_eigensystem(m: npt.ArrayLike, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized before ``eigh`` so that entries within ``tol`` of
    Hermitian give an exactly orthonormal basis.

    Raises:
        NotHermitian: If ``max|m - m^H| > tol``
        NoConvergence: If LAPACK fails
    """
    arr = as_cmatrix(m)
    _require_square(arr, "hermitian_eigensystem")
    residual = hermiticity_residual(arr)
    if not residual <= tol:
        raise NotHermitian(f"matrix is not Hermitian: residual {residual:.3e} > {tol:.1e}")

    hermitian = (arr + dagger(arr)) / 2
    try:
        values, vectors = sla.eigh(hermitian)
    except sla.LinAlgError as e:
        raise NoConvergence(f"eigh failed: {e}") from e

    logger.debug(f"eigh on {arr.shape[0]}x{arr.shape[0]}: min={values[0]:.3e} max={values[-1]:.3e}")
    return Spectrum(eigenvalues=values, eigenvectors=vectors)


def general_eigenvalues_4x4(m: npt.ArrayLike) -> np.ndarray:
    """Eigenvalues of a general (non-Hermitian) 4x4 matrix, unsorted."""
    arr = as_cmatrix(m)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {arr.shape}")
    try:
        return sla.eigvals(arr)
    except sla.LinAlgError as e:
        raise NoConvergence(f"eigvals failed: {e}") from e


def svd(m: npt.ArrayLike) -> Tuple[CMatrix, np.ndarray, CMatrix]:
    """Singular value decomposition ``m = U diag(sigma) Vdag``, sigma descending."""
    arr = as_cmatrix(m)
    _require_square(arr, "svd")
    try:
        u, sigma, vdag = sla.svd(arr)
    except sla.LinAlgError:
        # gesdd occasionally fails where the slower QR-based driver converges
        logger.debug("gesdd did not converge, retrying with gesvd")
        try:
            u, sigma, vdag = sla.svd(arr, lapack_driver="gesvd")
        except sla.LinAlgError as e:
            raise NoConvergence(f"svd failed: {e}") from e
    return u, sigma, vdag


def partial_transpose(m: npt.ArrayLike, subsystem: Literal["A", "B"] = "A") -> CMatrix:
    """Transpose one factor of a 4x4 operator on 2 ⊗ 2.

    Subsystem A is the left factor (polarization), B the right (mode).
    """
    arr = as_cmatrix(m)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {arr.shape}")
    tensor = arr.reshape(2, 2, 2, 2)
    if subsystem == "A":
        tensor = tensor.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        tensor = tensor.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return tensor.reshape(4, 4)


def clamp_nonnegative(
    values: npt.ArrayLike,
    tol: float = CLAMP_TOL,
    floor: float = NOISE_FLOOR
) -> np.ndarray:
    """Project eigenvalues that are analytically real and nonnegative onto [0, inf).

    Imaginary parts up to ``tol`` and negative real parts down to ``-tol`` are
    zeroed; anything with modulus at most ``floor`` becomes exactly zero.

    Raises:
        SpectrumOutOfRange: If a value violates the clamping thresholds
    """
    vals = np.asarray(values, dtype=np.complex128)
    imag = np.abs(vals.imag)
    if np.any(imag > tol):
        raise SpectrumOutOfRange(f"eigenvalue with imaginary part {imag.max():.3e} > {tol:.1e}")
    real = vals.real.copy()
    if np.any(real < -tol):
        raise SpectrumOutOfRange(f"eigenvalue {real.min():.3e} below -{tol:.1e}")
    if np.any(real < -floor):
        logger.warning(f"clamping negative eigenvalue {real.min():.3e} to zero")
    real[np.abs(real) <= floor] = 0.0
    return np.clip(real, 0.0, None)
