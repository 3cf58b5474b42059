"""Shared pytest fixtures for spin-maxent tests."""

import json
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from spin_maxent.core.states import bell, ghz, random_mixed_state, random_pure_state


@pytest.fixture
def cli_runner():
    """Typer CliRunner for CLI tests."""
    return CliRunner()


@pytest.fixture
def rng():
    """Seeded generator so random instances are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def mixed_state_factory(rng):
    """Factory for random full-rank density matrices on n spins."""

    def make(n: int, rank: int = None):
        return random_mixed_state(n, rng, rank=rank)

    return make


@pytest.fixture
def pure_state_factory(rng):
    """Factory for Haar-random pure states on n spins."""

    def make(n: int):
        return random_pure_state(n, rng)

    return make


@pytest.fixture
def bell_rho():
    """Projector of the Bell state with phase 0.7."""
    return bell(0.7).projector()


@pytest.fixture
def ghz_rho():
    """Projector of the GHZ state with phase 0.4."""
    return ghz(0.4).projector()


@pytest.fixture
def write_request(tmp_path):
    """Write a request dict to a JSON file and return its path."""

    def write(payload: dict, name: str = "request.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write
