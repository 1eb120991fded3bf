"""Abstract base class for optical elements."""

from abc import ABC, abstractmethod
from typing import Any, Callable, ClassVar, Dict, Optional, Sequence, Tuple

import numpy as np


def format_value(value: Any) -> str:
    """Render a parameter value so that parsing it back yields the same value."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


class OpticalElement(ABC):
    """One line of a netlist: an element kind, its parameters and its ports.

    Subclasses declare their parameter converters in ``parameters`` and their
    port arity. A converter takes the raw token text and returns the typed
    value or raises ValueError.

    Local unitaries act on ``4 * k`` amplitudes ordered (polarization, spatial
    mode, port) with H=0, V=1 and h=0, v=1, where ``k`` is the number of output
    ports. Missing input ports are vacuum.
    """

    kind: ClassVar[str] = ""
    parameters: ClassVar[Dict[str, Callable[[str], Any]]] = {}
    required: ClassVar[Tuple[str, ...]] = ()
    input_arity: ClassVar[Tuple[int, int]] = (1, 1)
    output_arity: ClassVar[Tuple[int, int]] = (1, 1)

    def __init__(
        self,
        inputs: Sequence[str] = (),
        outputs: Sequence[str] = (),
        params: Optional[Dict[str, Any]] = None,
        line: Optional[int] = None
    ):
        self.inputs: Tuple[str, ...] = tuple(inputs)
        self.outputs: Tuple[str, ...] = tuple(outputs)
        self.line = line
        self.params: Dict[str, Any] = {}

        for key, value in (params or {}).items():
            if key not in self.parameters:
                raise ValueError(f"unexpected parameter '{key}' for {self.kind}")
            converter = self.parameters[key]
            self.params[key] = converter(value) if isinstance(value, str) else converter(format_value(value))
        self.params = {key: self.params[key] for key in self.parameters if key in self.params}

        missing = [key for key in self.required if key not in self.params]
        if missing:
            raise ValueError(f"{self.kind} requires parameter '{missing[0]}'")

        self._check_arity("in", self.inputs, self.input_arity)
        self._check_arity("out", self.outputs, self.output_arity)
        if len(set(self.outputs)) != len(self.outputs):
            raise ValueError(f"{self.kind} lists an output path twice")
        if len(set(self.inputs)) != len(self.inputs):
            raise ValueError(f"{self.kind} lists an input path twice")

    def _check_arity(self, field: str, ports: Tuple[str, ...], arity: Tuple[int, int]) -> None:
        low, high = arity
        if high == 0 and ports:
            raise ValueError(f"{self.kind} takes no {field}= paths")
        if not low <= len(ports) <= high:
            expected = str(low) if low == high else f"{low} to {high}"
            raise ValueError(f"{self.kind} takes {expected} {field}= path(s), got {len(ports)}")

    @property
    def is_transforming(self) -> bool:
        """False for elements that only mark where photons enter or leave."""
        return True

    @abstractmethod
    def local_unitary(self) -> np.ndarray:
        """Return the (4k, 4k) action of the element on its ports."""

    def to_line(self) -> str:
        parts = [self.kind]
        parts.extend(f"{key}={format_value(value)}" for key, value in self.params.items())
        if self.inputs:
            parts.append("in=" + ",".join(self.inputs))
        if self.outputs:
            parts.append("out=" + ",".join(self.outputs))
        return " ".join(parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpticalElement):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.params == other.params
            and self.inputs == other.inputs
            and self.outputs == other.outputs
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.inputs, self.outputs))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.to_line()!r}, line={self.line})"
