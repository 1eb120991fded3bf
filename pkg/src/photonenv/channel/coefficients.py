"""Time-dependent amplitudes of the collective-decay map and its Kraus form.

``map_coefficients`` gives the six amplitudes (M, P, N, Q, R, S) of the
system-environment map for either environment model. ``kraus_coefficients``
gives the real coefficients of the closed-form Kraus set for the dissipative
channel, written with ``expm1`` so that small and large Gamma*t stay accurate.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from ..core.exceptions import InconsistentCoefficients
from ..core.registry import register_component, registry

logger = logging.getLogger(__name__)

COEFFICIENT_TOL = 1e-9
GROUPING_TOL = 1e-10
SMALL_TIME = 1e-6


class EnvironmentKind(Enum):
    MULTIMODE_VACUUM = "multimode_vacuum"
    SINGLE_MODE_CAVITY = "single_mode_cavity"


_ENV_DIMENSIONS: Dict[EnvironmentKind, int] = {
    EnvironmentKind.MULTIMODE_VACUUM: 4,   # |0>, |1A>, |1B>, |2>
    EnvironmentKind.SINGLE_MODE_CAVITY: 3,  # |0>, |1>, |2>
}


@register_component("environment", "gammaT", config={"kind": "multimode_vacuum"}, is_default=True)
@register_component("environment", "gt", config={"kind": "single_mode_cavity"})
@dataclass(frozen=True)
class EnvironmentModel:
    """Which bath the qubits decay into, keyed in the registry by its time parameter."""

    kind: EnvironmentKind = EnvironmentKind.MULTIMODE_VACUUM

    def __post_init__(self):
        object.__setattr__(self, "kind", EnvironmentKind(self.kind))

    @property
    def env_dimension(self) -> int:
        return _ENV_DIMENSIONS[self.kind]

    @property
    def is_cavity(self) -> bool:
        return self.kind is EnvironmentKind.SINGLE_MODE_CAVITY

    @property
    def parameter(self) -> str:
        return "gt" if self.is_cavity else "gammaT"


MULTIMODE_VACUUM = EnvironmentModel(EnvironmentKind.MULTIMODE_VACUUM)
SINGLE_MODE_CAVITY = EnvironmentModel(EnvironmentKind.SINGLE_MODE_CAVITY)


def environment_for(parameter: Optional[str] = None) -> EnvironmentModel:
    """Environment model for a time parameter name; the registry default (free space) if omitted."""
    try:
        model_class = registry.get("environment", parameter)
    except KeyError:
        known = ", ".join(registry.list_components("environment"))
        raise ValueError(f"unknown time parameter '{parameter}'; expected one of {known}")
    return model_class(**registry.get_config("environment", parameter))


def _check_time(param: float) -> float:
    value = float(param)
    if not np.isfinite(value) or value < 0:
        raise ValueError(f"time parameter must be finite and >= 0, got {param}")
    return value


@dataclass(frozen=True)
class MapCoefficients:
    """Amplitudes of the map on |ee>, |eg>, |ge>.

    |ee,0> -> M|ee,0> + P(|eg>+|ge>)|1_ee> + N|gg,2>
    |eg,0> -> Q|eg,0> + R|ge,0> + S|gg,1_eg>
    """

    M: complex
    P: complex
    N: complex
    Q: complex
    R: complex
    S: complex
    param: float
    model: EnvironmentModel = MULTIMODE_VACUUM

    def __post_init__(self):
        checks = {
            "|M|^2 + 2|P|^2 + |N|^2 = 1": abs(self.M) ** 2 + 2 * abs(self.P) ** 2 + abs(self.N) ** 2 - 1,
            "|Q|^2 + |R|^2 + |S|^2 = 1": abs(self.Q) ** 2 + abs(self.R) ** 2 + abs(self.S) ** 2 - 1,
            "Re(2 Q R*) + |S|^2 = 0": 2 * (self.Q * np.conj(self.R)).real + abs(self.S) ** 2,
        }
        for name, deviation in checks.items():
            if not abs(deviation) <= COEFFICIENT_TOL:
                raise InconsistentCoefficients(
                    f"{name} violated by {deviation:.3e} at {self.model.parameter}={self.param}"
                )


def map_coefficients(param: float, model: EnvironmentModel = MULTIMODE_VACUUM) -> MapCoefficients:
    """Map amplitudes at Gamma*t (multimode vacuum) or g*t (single-mode cavity)."""
    t = _check_time(param)

    if model.is_cavity:
        c2, s2 = np.cos(2 * t), np.sin(2 * t)
        cr, sr = np.cos(np.sqrt(2) * t), np.sin(np.sqrt(2) * t)
        return MapCoefficients(
            M=complex((1 + c2) / 2),
            P=complex(-0.5j * s2),
            N=complex((-1 + c2) / 2),
            Q=complex((1 + cr) / 2),
            R=complex((-1 + cr) / 2),
            S=complex(-1j * sr / np.sqrt(2)),
            param=t,
            model=model,
        )

    x = np.exp(-t)
    one_minus_x2 = -np.expm1(-2 * t)
    return MapCoefficients(
        M=complex(x),
        P=complex(np.sqrt(t) * x),
        N=complex(np.sqrt(max(one_minus_x2 - 2 * t * x * x, 0.0))),
        Q=complex((x + 1) / 2),
        R=complex(np.expm1(-t) / 2),
        S=complex(np.sqrt(one_minus_x2 / 2)),
        param=t,
        model=model,
    )


@dataclass(frozen=True)
class KrausCoefficients:
    """Real coefficients of the closed-form Kraus set of the dissipative channel.

    The Gram matrix [[G^2, k], [k, H^2]] of the two single-excitation channels
    is diagonalized; (alpha1, 1)/gamma1 and (beta1, 1)/gamma2 are its
    eigenvectors and alpha2, beta2 carry sqrt(2 * eigenvalue). B, C and D, E
    are the components along those eigenvectors, X, Y, Z, W their split over
    the orthogonal environment photons |1A>, |1B>.
    """

    gamma_t: float
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float
    G: float
    H: float
    omega: float
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    gamma1: float
    gamma2: float
    X: float
    Y: float
    Z: float
    W: float
    delta1: float
    delta2: float
    epsilon1: float
    epsilon2: float

    def __post_init__(self):
        u = self.gamma_t
        x2 = np.exp(-2 * u)
        grouping = {
            "B^2 + D^2 = G^2": self.B ** 2 + self.D ** 2 - self.G ** 2,
            "C^2 + E^2 = H^2": self.C ** 2 + self.E ** 2 - self.H ** 2,
        }
        unitarity = {
            "A^2 + G^2 + F^2 = 1": self.A ** 2 + self.G ** 2 + self.F ** 2 - 1,
            "A^2 + H^2 = 1": self.A ** 2 + self.H ** 2 - 1,
            "X^2 + Y^2 = P^2": self.X ** 2 + self.Y ** 2 - u * x2,
            "Z^2 + W^2 = S^2": self.Z ** 2 + self.W ** 2 + np.expm1(-2 * u) / 2,
        }
        for checks, tol in ((grouping, GROUPING_TOL), (unitarity, COEFFICIENT_TOL)):
            for name, deviation in checks.items():
                if not abs(deviation) <= tol:
                    raise InconsistentCoefficients(f"{name} violated by {deviation:.3e} at gammaT={u}")

    @property
    def environment_overlap(self) -> float:
        """<1_ee|1_eg>: overlap of the two single-photon environment states."""
        if self.G == 0.0 or self.H == 0.0:
            return 1.0
        return (self.B * self.C + self.D * self.E) / (self.G * self.H)


def kraus_coefficients(gamma_t: float) -> KrausCoefficients:
    """Closed-form Kraus coefficients at Gamma*t.

    Below ``SMALL_TIME`` the eigen-decomposition is 0/0; the first-order limit
    B = C = 0, D = G, E = H is used instead (exact at Gamma*t = 0). Once
    e^{-Gamma*t} underflows the long-time limit B = C = D = 0, E = H applies,
    with alpha1 = -inf and gamma1 = inf like ``omega``.
    """
    u = _check_time(gamma_t)
    x = np.exp(-u)
    x2 = x * x
    one_minus_x2 = -np.expm1(-2 * u)

    A = x
    G = np.sqrt(2 * u * x2)
    H = np.sqrt(one_minus_x2)
    F = np.sqrt(max(one_minus_x2 - 2 * u * x2, 0.0))

    # sqrt of the discriminant of the e^{2u}-scaled Gram matrix; overflows past u ~ 350
    omega = float(np.hypot(np.expm1(2 * u) - 2 * u, 4 * np.expm1(u))) if u < 350 else float("inf")

    # Unscaled Gram matrix; its e^{2u}-scaled form overflows for large u.
    k = 2 * x * (-np.expm1(-u))
    trace = G * G + H * H
    disc = np.hypot(H * H - G * G, 2 * k)
    # beta1 = 4(e^u - 1)/(Omega + d) = 2k / (disc + H^2 - G^2), free of cancellation
    beta1 = 2 * k / (disc + H * H - G * G) if u >= SMALL_TIME else 1.0

    if u < SMALL_TIME:
        alpha1, beta1 = -1.0, 1.0
        gamma1 = gamma2 = np.sqrt(2.0)
        alpha2, beta2 = 0.0, G + H
        B, C, D, E = 0.0, 0.0, G, H
    elif beta1 * np.finfo(float).max < 1.0:
        # e^{-u} has underflowed: the Gram matrix is diag(0, 1) and -1/beta1 overflows.
        alpha1, beta1 = -np.inf, 0.0
        gamma1, gamma2 = np.inf, 1.0
        alpha2, beta2 = 0.0, np.sqrt(2 * trace)
        B, C, D, E = 0.0, 0.0, 0.0, H
    else:
        lam_plus = (trace + disc) / 2
        det = G * G * H * H - k * k
        lam_minus = max(det / lam_plus, 0.0)

        alpha1 = -1.0 / beta1
        alpha2 = np.sqrt(2 * lam_minus)
        beta2 = np.sqrt(2 * lam_plus)
        gamma1 = np.hypot(1.0, alpha1)
        gamma2 = np.hypot(1.0, beta1)

        B = alpha1 * alpha2 / (np.sqrt(2) * gamma1)
        C = alpha2 / (np.sqrt(2) * gamma1)
        D = beta1 * beta2 / (np.sqrt(2) * gamma2)
        E = beta2 / (np.sqrt(2) * gamma2)

    X, Y = B / np.sqrt(2), D / np.sqrt(2)
    Z, W = C / np.sqrt(2), E / np.sqrt(2)

    coeffs = KrausCoefficients(
        gamma_t=u,
        A=float(A), B=float(B), C=float(C), D=float(D), E=float(E), F=float(F),
        G=float(G), H=float(H), omega=omega,
        alpha1=float(alpha1), alpha2=float(alpha2),
        beta1=float(beta1), beta2=float(beta2),
        gamma1=float(gamma1), gamma2=float(gamma2),
        X=float(X), Y=float(Y), Z=float(Z), W=float(W),
        delta1=float(alpha2), delta2=float(beta2),
        epsilon1=float(gamma1), epsilon2=float(gamma2),
    )
    logger.debug(f"Kraus coefficients at gammaT={u}: A={A:.6g} F={F:.6g} overlap={coeffs.environment_overlap:.6g}")
    return coeffs


def environment_overlap(gamma_t: float) -> float:
    """Overlap of the environment photons emitted from |1,1> and |1,0>."""
    return kraus_coefficients(gamma_t).environment_overlap
