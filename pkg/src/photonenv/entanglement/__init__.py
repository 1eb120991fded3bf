"""Entanglement quantification and detection."""

from .concurrence import (
    SIGMA_Y,
    SPIN_FLIP,
    ConcurrenceResult,
    SpinFlip,
    concurrence,
    concurrence_cavity_eg,
    concurrence_ee_branches,
    concurrence_ee_closed_form,
    concurrence_eg_closed_form,
)
from .witness import (
    WITNESS_TO_CONCURRENCE,
    Witness,
    WitnessOrigin,
    concurrence_from_witness,
    in_family,
    static_witness,
    witness_from_state,
)

__all__ = [
    "SIGMA_Y",
    "SPIN_FLIP",
    "ConcurrenceResult",
    "SpinFlip",
    "concurrence",
    "concurrence_cavity_eg",
    "concurrence_ee_branches",
    "concurrence_ee_closed_form",
    "concurrence_eg_closed_form",
    "WITNESS_TO_CONCURRENCE",
    "Witness",
    "WitnessOrigin",
    "concurrence_from_witness",
    "in_family",
    "static_witness",
    "witness_from_state",
]
