"""YAML configuration for the command-line tools."""

import logging
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

logger = logging.getLogger(__name__)

COMMANDS = ("curve", "kraus", "circuit", "experiment")


def load_default_config() -> Dict[str, Dict[str, Any]]:
    """Packaged defaults from photonenv/configs/default.yaml."""
    text = resources.files("photonenv").joinpath("configs", "default.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text) or {}


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Dict[str, Any]]:
    """Packaged defaults, overlaid section by section with the file at ``path``.

    Raises:
        OSError: If ``path`` cannot be read
        ValueError: If the file is not a mapping of command sections
    """
    config = load_default_config()
    if path is None:
        return config

    with open(path, 'r') as f:
        user = yaml.safe_load(f) or {}

    if not isinstance(user, dict):
        raise ValueError(f"config file {path} must contain a mapping")
    for section, values in user.items():
        if section not in COMMANDS:
            raise ValueError(f"unknown config section '{section}'; expected one of {', '.join(COMMANDS)}")
        if not isinstance(values, dict):
            raise ValueError(f"config section '{section}' must be a mapping")
        config.setdefault(section, {}).update(values)

    logger.debug(f"Loaded config overrides from {path}")
    return config
