import datetime as dt
from pathlib import Path

import numpy as np
import pytest

from tempcast import TimeSeries

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def make_series():
    """Factory for quick Kelvin series starting 2015-01-01."""

    def build(values, start=dt.date(2015, 1, 1), station="TEST0001"):
        return TimeSeries(start, np.asarray(values, dtype=float), station)

    return build


@pytest.fixture
def trend_seasonal():
    """Factory for noiseless linear-plus-cycle signals.

    Returns (values, truth) where truth(i) evaluates the signal at any
    index, so forecasts can be checked beyond the generated window.
    """

    def build(n, season_length, base=280.0, slope=0.02, cycle=None, seed=0):
        if cycle is None:
            gen = np.random.default_rng(seed)
            cycle = gen.normal(0.0, 2.0, season_length)
            cycle = cycle - cycle.mean()
        cycle = np.asarray(cycle, dtype=float)

        def truth(i):
            return base + slope * i + cycle[i % season_length]

        values = np.array([truth(i) for i in range(n)])
        return values, truth

    return build
