"""Shared fixtures: seeded RNG for randomized property tests and
session-scoped landmark roots."""

import numpy as np
import pytest

from ifslab import landmark, landmark_root

DEFAULT_RNG_SEED = 20250809


def pytest_addoption(parser):
    parser.addoption(
        "--seed-rng",
        type=int,
        default=DEFAULT_RNG_SEED,
        help="seed for randomized property tests (fixed default for CI)",
    )


@pytest.fixture
def rng(request):
    return np.random.default_rng(request.config.getoption("--seed-rng"))


@pytest.fixture(scope="session")
def roots():
    """Newton-refined roots of all six landmark parameters."""
    return {i: landmark_root(i) for i in range(1, 7)}


@pytest.fixture(scope="session")
def fixtures():
    """Landmark fixture data keyed by id."""
    return {i: landmark(i) for i in range(1, 7)}


def random_lambda(rng, lo=0.3, hi=0.7):
    """Uniform modulus in [lo, hi], uniform argument."""
    modulus = rng.uniform(lo, hi)
    angle = rng.uniform(0.0, 2.0 * np.pi)
    return modulus * complex(np.cos(angle), np.sin(angle))
