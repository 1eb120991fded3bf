"""Core components for photonenv."""

from .base import OpticalElement
from .registry import Registry, registry, register_component
from .exceptions import (
    PhotonEnvError,
    NotHermitian,
    NoConvergence,
    SpectrumOutOfRange,
    InvalidState,
    InconsistentCoefficients,
    IncompleteKrausSet,
    NegativeChoiEigenvalue,
    FamilyMismatch,
    NetlistError,
    NetlistSyntaxError,
    UnknownElement,
    NetlistValidationError,
    DuplicateProducer,
    DanglingPath,
    DetectorNotTerminal,
    NonUnitaryComposite,
)

__all__ = [
    "OpticalElement",
    "Registry",
    "registry",
    "register_component",
    "PhotonEnvError",
    "NotHermitian",
    "NoConvergence",
    "SpectrumOutOfRange",
    "InvalidState",
    "InconsistentCoefficients",
    "IncompleteKrausSet",
    "NegativeChoiEigenvalue",
    "FamilyMismatch",
    "NetlistError",
    "NetlistSyntaxError",
    "UnknownElement",
    "NetlistValidationError",
    "DuplicateProducer",
    "DanglingPath",
    "DetectorNotTerminal",
    "NonUnitaryComposite",
]
