"""Pytest fixtures for setlerkit tests."""

import numpy as np
import pytest

from setlerkit.interfaces import SetlerParams, SphericalState, TimeGrid


@pytest.fixture
def case1_params():
    """Parameters of the first RK4 case."""
    return SetlerParams(lam=1.0, beta=23 / 8, gamma=8 / 3, delta_f=0.5, omega=0.5)


@pytest.fixture
def case1_state():
    return SphericalState(0.1, 0.2, 0.3)


@pytest.fixture
def chaos_params():
    """Parameters of the Lyapunov figure (λ=1, β=γ=δ_f=0.5, ω=1)."""
    return SetlerParams(lam=1.0, beta=0.5, gamma=0.5, delta_f=0.5, omega=1.0)


@pytest.fixture
def chaos_state():
    return SphericalState(0.1, 0.2, 4.24)


@pytest.fixture
def attractor_params():
    return SetlerParams(lam=0.5, beta=8 / 3, gamma=28 / 3, delta_f=10.0, omega=0.1)


@pytest.fixture
def unit_grid():
    return TimeGrid(0.0, 1.0, 0.01)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def out_dir(tmp_path):
    """Output directory for CLI artifacts."""
    return tmp_path / "out"
