"""Root conftest.py for pytest configuration.

This file provides shared fixtures and configuration for all tests.
Fixtures defined here are available to all test modules.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Generator

import numpy as np
import pytest

# Set test environment
os.environ["TESTING"] = "true"
os.environ.setdefault("LOG_LEVEL", "WARNING")

from configs.config import Settings, get_settings  # noqa: E402
from src.domain.phasespace.schemas.squeezing import SqueezingParams  # noqa: E402


@pytest.fixture(scope="session")
def settings() -> Settings:
    """Application settings singleton."""
    return get_settings()


@pytest.fixture
def output_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Generator[Path, None, None]:
    """Redirect CLI outputs to a temporary directory."""
    monkeypatch.setattr(get_settings(), "OUTPUT_DIR", str(tmp_path))
    yield tmp_path


@pytest.fixture
def rng() -> np.random.Generator:
    """Deterministic generator for randomized checks."""
    return np.random.default_rng(20240101)


@pytest.fixture(params=[(0.0, 0.0), (0.5, 0.3), (1.0, -1.1), (2.0, 0.7)], ids=lambda p: f"r={p[0]}-phi={p[1]}")
def squeezing(request) -> SqueezingParams:
    """A spread of squeezing parameters, vacuum included."""
    r, phi = request.param
    return SqueezingParams(r=r, phi=phi)


@pytest.fixture
def phase_grid() -> tuple[np.ndarray, np.ndarray]:
    """Coarse (q, p) grid with no point on the axes."""
    axis = np.linspace(-2.9, 3.1, 13)
    return np.meshgrid(axis, axis, indexing="ij")


def pytest_configure(config):
    """Configure pytest with custom settings."""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test (pure numerics)"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers automatically."""
    for item in items:
        # Auto-mark tests based on path
        if "unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)
        elif "integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)
        elif "e2e" in str(item.fspath):
            item.add_marker(pytest.mark.e2e)
