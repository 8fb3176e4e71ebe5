"""Shared pytest configuration."""

import pytest

from src.config import SimulationConfig


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exact-arithmetic or statistical tests taking seconds")


@pytest.fixture
def settings():
    """Default capacity limits, single worker."""
    return SimulationConfig(n_jobs=1)
