"""Optical elements acting on polarization ⊗ transverse mode ⊗ path.

A photon's internal state is indexed 2*pol + mode with H=0, V=1 and h=0,
v=1. Each element class registers under its netlist keyword.
"""

import math
import re
from typing import Callable

import numpy as np

from ..core.base import OpticalElement
from ..core.registry import register_component

POLARIZATIONS = ("H", "V")
MODES = ("h", "v")

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_DETECTOR_ID = re.compile(r"[A-Za-z0-9_]+\Z")


def finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"expected a finite number, got '{text}'")
    return value


def one_of(*options: str) -> Callable[[str], str]:
    def convert(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got '{text}'")
        return text
    return convert


def detector_id(text: str) -> str:
    if not _DETECTOR_ID.match(text):
        raise ValueError(f"invalid detector id '{text}'")
    return text


def is_path_label(text: str) -> bool:
    return bool(_IDENTIFIER.match(text))


# Jones-style matrices on one degree of freedom

def hwp_matrix(theta: float, ref: str = "H") -> np.ndarray:
    """Half-wave plate at ``theta`` degrees from the ``ref`` axis, in (H, V) order.

    In the (ref, ref-perp) ordering the matrix is [[c, s], [s, -c]] with
    c = cos 2theta, s = sin 2theta.
    """
    t = np.deg2rad(2.0 * theta)
    c, s = np.cos(t), np.sin(t)
    m = np.array([[c, s], [s, -c]], dtype=np.complex128)
    if ref == "H":
        return m
    if ref == "V":
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        return swap @ m @ swap
    raise ValueError(f"ref must be 'H' or 'V', got {ref!r}")


def dove_matrix(theta: float) -> np.ndarray:
    """Dove prism at ``theta`` degrees: rotation by 2*theta in the (h, v) basis."""
    t = np.deg2rad(2.0 * theta)
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def gp_phase(phi: float) -> complex:
    return complex(np.exp(1j * phi))


def cnot_matrix() -> np.ndarray:
    """Polarization controls the mode: H flips h <-> v, V leaves it."""
    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    h_proj = np.diag([1.0, 0.0])
    v_proj = np.diag([0.0, 1.0])
    return (np.kron(h_proj, flip) + np.kron(v_proj, np.eye(2))).astype(np.complex128)


def _two_port_router(crossed: Callable[[int, int], bool]) -> np.ndarray:
    """8x8 permutation on (internal, port): crossed states swap ports 0 and 1."""
    m = np.zeros((8, 8), dtype=np.complex128)
    for pol in range(2):
        for mode in range(2):
            a = 2 * pol + mode
            for port in range(2):
                out = 1 - port if crossed(pol, mode) else port
                m[2 * a + out, 2 * a + port] = 1.0
    return m


def pbs_action() -> np.ndarray:
    """H is transmitted (in0 -> out0), V is reflected (in0 -> out1)."""
    return _two_port_router(lambda pol, mode: pol == 1)


def mzim_action() -> np.ndarray:
    """Parity sorter: Vv and Hh leave like PBS transmission, Vh and Hv like reflection."""
    return _two_port_router(lambda pol, mode: pol != mode)


def bs_action() -> np.ndarray:
    return np.kron(np.eye(4), np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)).astype(np.complex128)


# Netlist element kinds

class _PassiveElement(OpticalElement):
    def local_unitary(self) -> np.ndarray:
        return np.eye(4, dtype=np.complex128)


@register_component("element", "source")
class Source(_PassiveElement):
    """Injection point; ``pol`` fixes the prepared polarization."""

    kind = "source"
    parameters = {"pol": one_of(*POLARIZATIONS)}
    input_arity = (0, 0)
    output_arity = (1, 1)

    @property
    def is_transforming(self) -> bool:
        return False


@register_component("element", "detector")
class Detector(_PassiveElement):
    kind = "detector"
    parameters = {"id": detector_id}
    required = ("id",)
    input_arity = (1, 1)
    output_arity = (0, 0)

    @property
    def is_transforming(self) -> bool:
        return False


@register_component("element", "mask")
class Mask(_PassiveElement):
    """Holographic mask selecting the prepared transverse mode."""

    kind = "mask"
    parameters = {"mode": one_of(*MODES)}
    required = ("mode",)


@register_component("element", "mirror")
class Mirror(_PassiveElement):
    kind = "mirror"


@register_component("element", "hwp", config={"ref": "H"})
class HalfWavePlate(OpticalElement):
    kind = "hwp"
    parameters = {"theta": finite_float, "ref": one_of(*POLARIZATIONS)}
    required = ("theta",)

    def local_unitary(self) -> np.ndarray:
        return np.kron(hwp_matrix(self.params["theta"], self.params.get("ref", "H")), np.eye(2))


@register_component("element", "dove")
class DovePrism(OpticalElement):
    kind = "dove"
    parameters = {"theta": finite_float}
    required = ("theta",)

    def local_unitary(self) -> np.ndarray:
        return np.kron(np.eye(2), dove_matrix(self.params["theta"]))


@register_component("element", "gp", config={"phi": 0.0})
class GlassPlate(OpticalElement):
    """Tilted glass plate: a path phase e^{i phi}."""

    kind = "gp"
    parameters = {"phi": finite_float}

    def local_unitary(self) -> np.ndarray:
        return gp_phase(self.params.get("phi", 0.0)) * np.eye(4, dtype=np.complex128)


@register_component("element", "cnot")
class PolarizationCnot(OpticalElement):
    kind = "cnot"

    def local_unitary(self) -> np.ndarray:
        return cnot_matrix()


class _TwoPortElement(OpticalElement):
    input_arity = (1, 2)
    output_arity = (2, 2)


@register_component("element", "pbs")
class PolarizingBeamSplitter(_TwoPortElement):
    kind = "pbs"

    def local_unitary(self) -> np.ndarray:
        return pbs_action()


@register_component("element", "bs")
class BeamSplitter(_TwoPortElement):
    kind = "bs"

    def local_unitary(self) -> np.ndarray:
        return bs_action()


@register_component("element", "mzim")
class ParitySorter(_TwoPortElement):
    """Mach-Zehnder interferometer with an extra mirror, modeled by its port rules."""

    kind = "mzim"

    def local_unitary(self) -> np.ndarray:
        return mzim_action()
