import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from windeval import Field2D, FieldSeries, VelocitySample, era5_like_grid


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


def make_series(rows=8, cols=8, count=4, seed=0, mean=5.0, spread=2.0, dt=3600):
    """Random physical-units (m/s) velocity series on a Germany-like grid."""
    gen = np.random.default_rng(seed)
    grid = era5_like_grid(rows, cols)
    samples = []
    for i in range(count):
        u = mean + spread * gen.standard_normal((rows, cols))
        v = mean + spread * gen.standard_normal((rows, cols))
        samples.append(
            VelocitySample(Field2D(grid, u), Field2D(grid, v), i * dt)
        )
    return FieldSeries(tuple(samples), dt)
