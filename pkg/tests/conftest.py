"""Shared fixtures and small brute-force helpers used across the test suite."""
import warnings

warnings.filterwarnings("ignore", message=".*TBB.*")

import numpy as np
import pytest

from sparsedom import Domain, GridFunction


@pytest.fixture
def dom16():
    return Domain(1, 1.0, 4)


@pytest.fixture
def dom32():
    return Domain(1, 1.0, 5)


@pytest.fixture
def dom64():
    return Domain(1, 1.0, 6)


@pytest.fixture
def dom2_16():
    return Domain(2, 1.0, 4)


def rand_gf(domain: Domain, seed: int, positive: bool = False) -> GridFunction:
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal(domain.shape)
    if positive:
        vals = np.abs(vals) + 0.1
    return GridFunction(domain, vals)


def interval_mean(values: np.ndarray, lo: int, hi: int, power: float = 1.0) -> float:
    """Plain-python mean of |values|^power over the half-open cell range."""
    seg = np.abs(values[lo:hi]) ** power
    return float(seg.sum() / (hi - lo))
