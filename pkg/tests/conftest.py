import numpy as np
import pytest

from greypower import RawSeries

# Seven-point exponential benchmark series (first five points fitted).
EXP_SERIES = (2.9836, 4.4511, 6.6402, 9.9061, 14.7781, 22.0464, 32.8893)

# Annual production benchmark series, 13 years (first nine fitted).
PRODUCTION_SERIES = (
    5565.83, 5590.19, 5600.52, 5600.69, 5600.87, 5600.92, 5570.38,
    5450.19, 5300.09, 5150.16, 5013.10, 4840.03, 4640.03,
)


@pytest.fixture
def exp_raw():
    return RawSeries(EXP_SERIES, fit_len=5)


@pytest.fixture
def production_raw():
    return RawSeries(PRODUCTION_SERIES, fit_len=9)


def random_raw(rng: np.random.Generator, n_min=5, n_max=12) -> RawSeries:
    n = int(rng.integers(n_min, n_max + 1))
    vals = rng.uniform(0.5, 50.0, size=n)
    return RawSeries(vals.tolist())


def logistic_series(a: float, b: float, c0: float, n: int):
    """Raw series whose accumulation lies exactly on the Verhulst level curve."""
    import math

    x1 = [1.0 / (c0 * math.exp(a * t) + b / a) for t in range(1, n + 1)]
    raw = [x1[0]] + [x1[k] - x1[k - 1] for k in range(1, n)]
    return raw, x1
