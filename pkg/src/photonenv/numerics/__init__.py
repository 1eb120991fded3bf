"""Dense linear algebra used by the physics layers."""

from .linalg import (
    CLAMP_TOL,
    DEFAULT_TOL,
    NOISE_FLOOR,
    CMatrix,
    Spectrum,
    as_cmatrix,
    clamp_nonnegative,
    dagger,
    general_eigenvalues_4x4,
    hermiticity_residual,
    hermitian_eigensystem,
    kron,
    partial_transpose,
    svd,
)

__all__ = [
    "CLAMP_TOL",
    "DEFAULT_TOL",
    "NOISE_FLOOR",
    "CMatrix",
    "Spectrum",
    "as_cmatrix",
    "clamp_nonnegative",
    "dagger",
    "general_eigenvalues_4x4",
    "hermiticity_residual",
    "hermitian_eigensystem",
    "kron",
    "partial_transpose",
    "svd",
]
