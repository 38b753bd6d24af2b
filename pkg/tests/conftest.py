import numpy as np
import pytest

from layerlab import compute_beta, solve_eta


@pytest.fixture(scope="session")
def consts():
    return compute_beta(1e-12)


@pytest.fixture(scope="session")
def eta():
    """Gap ODE solution covering every window the tests use."""
    return solve_eta(1e6, 1e-10)


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
