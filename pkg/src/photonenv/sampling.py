"""Seeded random states and unitaries.

Every function takes a ``numpy.random.Generator``. Independent streams for
concurrent tasks come from ``spawn_generators``, which splits one master seed
with ``SeedSequence.spawn`` so results do not depend on scheduling.
"""

from typing import List, Optional

import numpy as np

from .channel.states import DensityMatrix4

RngLike = Optional[np.random.Generator]


def _rng(rng: RngLike) -> np.random.Generator:
    return np.random.default_rng() if rng is None else rng


def spawn_generators(seed: int, n: int) -> List[np.random.Generator]:
    """``n`` statistically independent generators derived from ``seed``."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(n)]


def random_density_matrix(rng: RngLike = None, dim: int = 4) -> np.ndarray:
    """Full-rank state G G^H / Tr(G G^H) from a complex Ginibre matrix G."""
    rng = _rng(rng)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_state(rng: RngLike = None) -> DensityMatrix4:
    return DensityMatrix4(random_density_matrix(rng))


def random_qubit_state(rng: RngLike = None) -> np.ndarray:
    """Single-qubit state with Bloch vector uniform in the unit ball."""
    rng = _rng(rng)
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    r = rng.random() ** (1.0 / 3.0)
    x, y, z = r * direction
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


def random_product_state(rng: RngLike = None) -> DensityMatrix4:
    rng = _rng(rng)
    return DensityMatrix4(np.kron(random_qubit_state(rng), random_qubit_state(rng)))


def random_separable_state(rng: RngLike = None, max_terms: int = 4) -> DensityMatrix4:
    """Convex mixture of 1..max_terms product states with Dirichlet(1) weights."""
    rng = _rng(rng)
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    rho = sum(w * np.kron(random_qubit_state(rng), random_qubit_state(rng)) for w in weights)
    return DensityMatrix4(rho)


def random_unitary(rng: RngLike = None, dim: int = 2) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with the phases of R removed."""
    rng = _rng(rng)
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases
