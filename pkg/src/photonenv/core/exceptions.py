"""Exception hierarchy for photonenv."""

from typing import Optional


class PhotonEnvError(Exception):
    """Base class for all photonenv errors."""


# Numerics

class NotHermitian(PhotonEnvError, ValueError):
    """Matrix deviates from its adjoint by more than the tolerance."""


class NoConvergence(PhotonEnvError, RuntimeError):
    """An iterative LAPACK routine did not converge."""


class SpectrumOutOfRange(PhotonEnvError, ValueError):
    """Eigenvalues expected to be real and nonnegative violate the clamping policy."""


# Channel

class InvalidState(PhotonEnvError, ValueError):
    """Matrix is not a valid two-qubit density matrix."""


class InconsistentCoefficients(PhotonEnvError, RuntimeError):
    """Map or Kraus coefficients violate their normalization identities."""


class IncompleteKrausSet(PhotonEnvError, ValueError):
    """Kraus operators do not resolve the identity."""


class NegativeChoiEigenvalue(PhotonEnvError, RuntimeError):
    """Choi matrix has an eigenvalue below the negativity tolerance."""


# Entanglement

class FamilyMismatch(UserWarning):
    """State lies outside the family the static witness is calibrated for."""


# Photonics

class NetlistError(PhotonEnvError):
    """Base class for netlist parse and validation errors."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._format())

    def _format(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class NetlistSyntaxError(NetlistError):
    """Malformed netlist line."""


class UnknownElement(NetlistError):
    """Element kind is not registered."""

    def __init__(self, name: str, line: Optional[int] = None, column: Optional[int] = None):
        self.name = name
        super().__init__(f"unknown element '{name}'", line, column)


class NetlistValidationError(NetlistError):
    """Netlist parses but violates the linear-flow rules."""

    def __init__(self, path: str, message: str, line: Optional[int] = None):
        self.path = path
        super().__init__(message, line)


class DuplicateProducer(NetlistValidationError):
    def __init__(self, path: str, line: Optional[int] = None):
        super().__init__(path, f"path '{path}' is produced while still live", line)


class DanglingPath(NetlistValidationError):
    def __init__(self, path: str, line: Optional[int] = None, reason: str = "has no live producer"):
        super().__init__(path, f"path '{path}' {reason}", line)


class DetectorNotTerminal(NetlistValidationError):
    def __init__(self, path: str, line: Optional[int] = None):
        super().__init__(path, f"path '{path}' is used after its detector", line)


class NonUnitaryComposite(PhotonEnvError, RuntimeError):
    """Compiled circuit failed its unitarity check."""
