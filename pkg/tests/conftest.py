import numpy as np
import pytest

from logcoeff.series import TruncatedSeries


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


def random_series(rng, order, const=None, scale=1.0):
    c = scale * (rng.uniform(-1, 1, order + 1) + 1j * rng.uniform(-1, 1, order + 1))
    if const is not None:
        c[0] = const
    return TruncatedSeries(c)


def random_normalized(rng, order):
    """``z + a_2 z^2 + ...`` with modest coefficients."""
    c = 0.5 * (rng.uniform(-1, 1, order + 1) + 1j * rng.uniform(-1, 1, order + 1))
    c[0], c[1] = 0.0, 1.0
    return TruncatedSeries(c)
