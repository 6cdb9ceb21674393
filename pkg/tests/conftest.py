import pytest

from stonework.numerics import Tolerance
from stonework.rng import SplitMix64


@pytest.fixture
def tol():
    return Tolerance(1e-9)


@pytest.fixture
def rng():
    return SplitMix64(0xC0FFEE)
