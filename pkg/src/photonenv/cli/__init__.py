"""Command-line interface for photonenv."""

from .main import cli

__all__ = ["cli"]
