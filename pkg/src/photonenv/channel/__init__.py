"""Two-qubit collective-decay channel in its equivalent presentations."""

from .coefficients import (
    MULTIMODE_VACUUM,
    SINGLE_MODE_CAVITY,
    SMALL_TIME,
    EnvironmentKind,
    EnvironmentModel,
    KrausCoefficients,
    MapCoefficients,
    environment_for,
    environment_overlap,
    kraus_coefficients,
    map_coefficients,
)
from .evolution import S_MINUS, emission_rate, evolve_analytic, propagate_collective, steady_state
from .kraus import (
    CHOI_NEGATIVE_TOL,
    RANK_TOL,
    KrausSet,
    apply_channel,
    apply_model,
    build_dilation,
    channel_kraus,
    choi_matrix,
    kraus_closed_form,
    kraus_from_choi,
    kraus_from_dilation,
)
from .states import (
    COLLECTIVE_LABELS,
    COMPUTATIONAL_LABELS,
    DICKE,
    PURE_STATE_NAMES,
    STATE_NAMES,
    Basis,
    BasisConvention,
    DensityMatrix4,
    initial_ket,
    initial_state,
    to_collective,
    to_computational,
)

__all__ = [
    "MULTIMODE_VACUUM",
    "SINGLE_MODE_CAVITY",
    "SMALL_TIME",
    "EnvironmentKind",
    "EnvironmentModel",
    "KrausCoefficients",
    "MapCoefficients",
    "environment_for",
    "environment_overlap",
    "kraus_coefficients",
    "map_coefficients",
    "S_MINUS",
    "emission_rate",
    "evolve_analytic",
    "propagate_collective",
    "steady_state",
    "CHOI_NEGATIVE_TOL",
    "RANK_TOL",
    "KrausSet",
    "apply_channel",
    "apply_model",
    "build_dilation",
    "channel_kraus",
    "choi_matrix",
    "kraus_closed_form",
    "kraus_from_choi",
    "kraus_from_dilation",
    "COLLECTIVE_LABELS",
    "COMPUTATIONAL_LABELS",
    "DICKE",
    "PURE_STATE_NAMES",
    "STATE_NAMES",
    "Basis",
    "BasisConvention",
    "DensityMatrix4",
    "initial_ket",
    "initial_state",
    "to_collective",
    "to_computational",
]
