"""
Shared fixtures for the noisy-sumsets tests.
"""

import pytest

from noisy_sumsets.core.cyclic import CyclicSet, interval
from noisy_sumsets.production.cache import OracleCache
from noisy_sumsets.production.error_handling import ErrorHandler
from noisy_sumsets.search.sumfree import SumFreeParams


@pytest.fixture
def handler():
    """A fresh error handler so recorded anomalies do not leak between tests."""
    return ErrorHandler()


@pytest.fixture
def cache():
    return OracleCache()


@pytest.fixture
def torus_params():
    """Z/10Z with (k, l) = (2, 1)."""
    return SumFreeParams(10, 2, 1)


@pytest.fixture
def prefix_noise():
    def make(n, c):
        return interval(n, 0, c)

    return make


@pytest.fixture
def zero_s_noise():
    def make(n, s):
        return CyclicSet.from_elements(n, [0, s])

    return make
