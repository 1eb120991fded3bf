"""Netlist parser and validator.

One element per line::

    <kind> [key=value ...] [in=<path>[,<path>]] [out=<path>[,<path>]]  # comment

The full grammar is documented in docs/netlist-grammar.md. Parsing resolves
each kind through the element registry; validation then walks the paths in
file order and records the dataflow in a networkx graph.
"""

import logging
import re
from dataclasses import dataclass, field
from string import Template
from typing import Any, Dict, Iterator, List, Optional, Tuple

import networkx as nx

from ..core.base import OpticalElement, format_value
from ..core.exceptions import (
    DanglingPath,
    DetectorNotTerminal,
    DuplicateProducer,
    NetlistSyntaxError,
    NetlistValidationError,
    UnknownElement,
)
from ..core.registry import registry
from . import elements as _elements  # noqa: F401  (registers element kinds)
from .elements import Detector, Mask, Source, is_path_label

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\S+")
_KIND = re.compile(r"[a-z]+\Z")
_KEY = re.compile(r"[a-z]+\Z")
PORT_KEYS = ("in", "out")


@dataclass(frozen=True)
class Preparation:
    """Photon state injected by a polarized source, on the source's output path."""

    pol: str
    mode: str
    path: str


@dataclass(eq=False)
class CircuitIR:
    """Validated netlist.

    ``paths`` lists every label in order of first appearance. ``inputs`` are
    labels consumed before any element produced them, plus the source path.
    ``outputs`` are labels still live at the end and not detected.
    """

    elements: Tuple[OpticalElement, ...]
    paths: Tuple[str, ...]
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    detectors: Dict[str, str]
    graph: nx.DiGraph = field(repr=False)
    preparation: Optional[Preparation] = None
    source_path: Optional[str] = None

    def __len__(self) -> int:
        return len(self.elements)

    def kinds(self) -> List[str]:
        return [el.kind for el in self.elements]

    def detector_path(self, detector: str) -> str:
        for path, name in self.detectors.items():
            if name == detector:
                return path
        raise KeyError(f"no detector '{detector}'")

    def same_structure(self, other: "CircuitIR") -> bool:
        return self.elements == other.elements and self.detectors == other.detectors


def _tokens(code: str) -> Iterator[Tuple[int, str]]:
    for match in _TOKEN.finditer(code):
        yield match.start() + 1, match.group()


def _parse_line(code: str, lineno: int) -> OpticalElement:
    tokens = list(_tokens(code))
    kind_col, kind = tokens[0]
    if not _KIND.match(kind):
        raise NetlistSyntaxError(f"expected an element kind, got '{kind}'", lineno, kind_col)
    try:
        element_class = registry.get("element", kind)
    except KeyError:
        raise UnknownElement(kind, lineno, kind_col)

    params: Dict[str, Any] = registry.get_config("element", kind)
    ports: Dict[str, List[str]] = {}
    seen = set()

    for col, token in tokens[1:]:
        key, eq, value = token.partition("=")
        if not eq or not _KEY.match(key):
            raise NetlistSyntaxError(f"expected key=value, got '{token}'", lineno, col)
        value_col = col + len(key) + 1
        if not value:
            raise NetlistSyntaxError(f"missing value for '{key}'", lineno, value_col)
        if key in seen:
            raise NetlistSyntaxError(f"duplicate field '{key}'", lineno, col)
        seen.add(key)

        if key in PORT_KEYS:
            labels = []
            offset = value_col
            for label in value.split(","):
                if not is_path_label(label):
                    raise NetlistSyntaxError(f"invalid path label '{label}'", lineno, offset)
                labels.append(label)
                offset += len(label) + 1
            ports[key] = labels
            continue

        converter = element_class.parameters.get(key)
        if converter is None:
            raise NetlistSyntaxError(f"unexpected parameter '{key}' for {kind}", lineno, col)
        try:
            params[key] = converter(value)
        except ValueError as e:
            raise NetlistSyntaxError(f"bad value for '{key}': {e}", lineno, value_col)

    try:
        return element_class(ports.get("in", ()), ports.get("out", ()), params, line=lineno)
    except ValueError as e:
        raise NetlistSyntaxError(str(e), lineno, kind_col)


def parse_elements(text: str) -> List[OpticalElement]:
    """Tokenize and type-check every line; no flow validation."""
    parsed = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        if not code.strip():
            continue
        parsed.append(_parse_line(code, lineno))
    return parsed


def validate_flow(elements: List[OpticalElement]) -> CircuitIR:
    """Check linear flow and build the dataflow graph.

    Raises:
        DuplicateProducer: A live path is produced again
        DanglingPath: A consumed path is consumed again, or an output is left
            undetected in a netlist that declares detectors
        DetectorNotTerminal: A detected path is used afterwards
    """
    graph = nx.DiGraph()
    live: Dict[str, Optional[int]] = {}
    consumed = set()
    detected: Dict[str, str] = {}
    paths: List[str] = []
    inputs: List[str] = []
    sources: List[int] = []

    def note(label: str) -> None:
        if label not in paths:
            paths.append(label)

    for idx, el in enumerate(elements):
        graph.add_node(idx, kind=el.kind, line=el.line)

        for label in el.inputs:
            note(label)
            if label in detected:
                raise DetectorNotTerminal(label, el.line)
            if label in live:
                producer = live.pop(label)
                if producer is not None:
                    graph.add_edge(producer, idx, path=label)
            elif label in consumed:
                raise DanglingPath(label, el.line, reason="was already consumed")
            else:
                inputs.append(label)
            consumed.add(label)
            if isinstance(el, Detector):
                if el.params["id"] in detected.values():
                    raise NetlistValidationError(label, f"duplicate detector id '{el.params['id']}'", el.line)
                detected[label] = el.params["id"]

        for label in el.outputs:
            note(label)
            if label in detected:
                raise DetectorNotTerminal(label, el.line)
            if label in live:
                raise DuplicateProducer(label, el.line)
            live[label] = idx
            consumed.discard(label)

        if isinstance(el, Source):
            sources.append(idx)

    if len(sources) > 1:
        extra = elements[sources[1]]
        raise NetlistValidationError(extra.outputs[0], "netlist declares more than one source", extra.line)

    if detected:
        for label, producer in live.items():
            line = elements[producer].line if producer is not None else None
            raise DanglingPath(label, line, reason="is never detected")

    source_path = None
    preparation = None
    if sources:
        source = elements[sources[0]]
        source_path = source.outputs[0]
        inputs.insert(0, source_path)
        if "pol" in source.params:
            mode = "h"
            for el in elements:
                if isinstance(el, Mask) and source_path in el.inputs:
                    mode = el.params["mode"]
                    break
            preparation = Preparation(source.params["pol"], mode, source_path)

    return CircuitIR(
        elements=tuple(elements),
        paths=tuple(paths),
        inputs=tuple(inputs),
        outputs=tuple(label for label in live),
        detectors=detected,
        graph=graph,
        preparation=preparation,
        source_path=source_path,
    )


def parse_netlist(text: str) -> CircuitIR:
    """Parse and validate netlist text."""
    ir = validate_flow(parse_elements(text))
    logger.debug(f"Parsed netlist: {len(ir)} elements, {len(ir.paths)} paths, {len(ir.detectors)} detectors")
    return ir


def serialize(ir: CircuitIR) -> str:
    """Canonical netlist text; parsing it reproduces ``ir``."""
    return "".join(el.to_line() + "\n" for el in ir.elements)


def render_netlist(template: str, **params: Any) -> str:
    """Substitute ``${name}`` placeholders.

    Raises:
        ValueError: If a placeholder has no value
    """
    values = {key: format_value(value) for key, value in params.items()}
    try:
        return Template(template).substitute(values)
    except KeyError as e:
        raise ValueError(f"missing template parameter {e}") from None
