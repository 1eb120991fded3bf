"""Shared fixtures for the photonenv test suite."""

from pathlib import Path

import numpy as np
import pytest

DATA_DIR = Path(__file__).parent / "data"
NETLIST_DIR = DATA_DIR / "netlists"


@pytest.fixture
def rng():
    """Deterministic generator, fresh for every test."""
    return np.random.default_rng(20240611)


@pytest.fixture
def valid_netlists():
    return sorted((NETLIST_DIR / "valid").glob("*.net"))


@pytest.fixture
def malformed_netlists():
    return sorted((NETLIST_DIR / "malformed").glob("*.net"))
