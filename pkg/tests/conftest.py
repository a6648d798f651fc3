import numpy as np
import pytest

from xyotto.analysis import FIG1


@pytest.fixture
def fig1():
    return FIG1


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(rng, n=4):
    a = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    return 0.5 * (a + a.conj().T)


def random_density(rng, n=4):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    r = x @ x.conj().T
    return r / np.trace(r)
