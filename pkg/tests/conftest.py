"""Pytest configuration for RIO-QED tests."""

import os
from unittest.mock import patch

import numpy as np
import pytest

from src.cavity.params import PhysicalParams
from src.core.config import get_settings, load_settings
from src.linalg.products import random_state
from src.linalg.types import StateVector
from src.protocol.permutations import DiagonalPhases


def pytest_configure(config):
    """Configure pytest for the simulator tests."""
    # Set testing environment variable
    os.environ["TESTING"] = "true"


def pytest_unconfigure(config):
    """Clean up after pytest."""
    os.environ.pop("TESTING", None)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test is reproducible."""
    return np.random.default_rng(2007)


@pytest.fixture
def params() -> PhysicalParams:
    """Default physical parameters: g = 2*pi*24 kHz, delta = 10 g."""
    return PhysicalParams.from_khz(24.0, 10.0)


@pytest.fixture
def xi(rng) -> StateVector:
    """A Haar-random two-qubit input on (Y1, Y2)."""
    return random_state(rng, (2, 2))


@pytest.fixture
def phases(rng) -> DiagonalPhases:
    """Random unit-modulus diagonal of T2."""
    return DiagonalPhases.random(rng)


@pytest.fixture(autouse=True)
def environment_settings():
    """Restore the environment as the settings source after each test."""
    yield
    load_settings()


@pytest.fixture
def small_space_settings():
    """Settings that cap the Hilbert space at dimension 16."""
    with patch.dict(os.environ, {"MAX_HILBERT_DIMENSION": "16"}, clear=False):
        get_settings.cache_clear()
        settings = get_settings()
        yield settings
    get_settings.cache_clear()
