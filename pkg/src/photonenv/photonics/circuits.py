"""Bundled circuits: the channel simulator, the collective-basis measurement
and an entangled-state preparation stage."""

import logging
from dataclasses import dataclass
from importlib import resources
from typing import Any, Dict

import numpy as np

from ..channel.coefficients import MULTIMODE_VACUUM, EnvironmentModel, map_coefficients
from ..core.exceptions import InconsistentCoefficients
from ..core.base import format_value
from .netlist import CircuitIR, parse_netlist, render_netlist

logger = logging.getLogger(__name__)

BUNDLED_NETLISTS = ("fig1_evolution", "fig3_measurement", "prep_entangled")
TEMPLATE_DEFAULTS: Dict[str, Any] = {"theta1": 0.0, "theta2": 0.0, "theta": 0.0}
ANGLE_TOL = 1e-12

EXCITED_ENV_PATH = "env1"


def load_bundled(name: str) -> str:
    """Raw text of a bundled netlist, placeholders unrendered."""
    if name not in BUNDLED_NETLISTS:
        raise KeyError(f"no bundled netlist '{name}'; available: {', '.join(BUNDLED_NETLISTS)}")
    return resources.files(__package__).joinpath("netlists", f"{name}.net").read_text(encoding="utf-8")


@dataclass(frozen=True)
class AngleSetting:
    """HWP1 and Dove prism angles (degrees) realizing the map at one time.

    ``env_phase`` is the glass-plate phase (radians) on the excited
    environment path, nonzero only when S is complex.
    """

    theta1: float
    theta2: float
    param: float
    env_phase: float = 0.0
    model: EnvironmentModel = MULTIMODE_VACUUM

    @property
    def gamma_t(self) -> float:
        return self.param

    def amplitudes(self) -> Dict[str, complex]:
        """Q, R, S as realized by the optics."""
        t1, t2 = np.deg2rad(2 * self.theta1), np.deg2rad(2 * self.theta2)
        return {
            "Q": complex(np.cos(t1)),
            "R": complex(np.sin(t1) * np.sin(t2)),
            "S": complex(np.sin(t1) * np.cos(t2) * np.exp(1j * self.env_phase)),
        }


def solve_angles(param: float, model: EnvironmentModel = MULTIMODE_VACUUM) -> AngleSetting:
    """Match cos2t1 = Q, sin2t1 sin2t2 = R, sin2t1 cos2t2 = |S|.

    Raises:
        InconsistentCoefficients: If the solved angles miss Q, R, S by more than 1e-12
    """
    coeffs = map_coefficients(param, model)
    q, r = coeffs.Q.real, coeffs.R.real
    s_abs = abs(coeffs.S)
    env_phase = float(np.angle(coeffs.S)) if s_abs > 0 else 0.0

    # equals arccos(Q)/2, without arccos's loss of precision near Q = 1
    theta1 = float(np.rad2deg(np.arctan2(np.hypot(r, s_abs), q) / 2))
    theta2 = 0.0 if (r == 0.0 and s_abs == 0.0) else float(np.rad2deg(np.arctan2(r, s_abs) / 2))
    # avoid a signed zero leaking into rendered netlists
    theta2 = theta2 + 0.0

    angles = AngleSetting(theta1, theta2, float(param), env_phase, model)
    realized = angles.amplitudes()
    for name, target in (("Q", coeffs.Q), ("R", coeffs.R), ("S", coeffs.S)):
        if not abs(realized[name] - target) <= ANGLE_TOL:
            raise InconsistentCoefficients(
                f"angles miss {name} by {abs(realized[name] - target):.3e} at {model.parameter}={param}"
            )
    logger.debug(f"angles at {model.parameter}={param}: theta1={theta1:.6f} theta2={theta2:.6f}")
    return angles


def build_evolution_circuit(angles: AngleSetting) -> CircuitIR:
    text = render_netlist(load_bundled("fig1_evolution"), theta1=angles.theta1, theta2=angles.theta2)
    if angles.env_phase != 0.0:
        text += f"gp phi={format_value(angles.env_phase)} in={EXCITED_ENV_PATH} out={EXCITED_ENV_PATH}\n"
    return parse_netlist(text)


def build_measurement_circuit() -> CircuitIR:
    return parse_netlist(load_bundled("fig3_measurement"))


def build_preparation_circuit(theta: float) -> CircuitIR:
    """HWP at ``theta`` from V followed by CNOT: cos2theta|eg> + sin2theta|ge>."""
    return parse_netlist(render_netlist(load_bundled("prep_entangled"), theta=theta))
