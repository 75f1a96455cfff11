import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from bargfock.grid import AxisGrid, default_axes, make_phase_grid
from bargfock.stft import gaussian_window


@pytest.fixture
def axes():
    """Default one-dimensional signal axes, [-8, 8] with 257 nodes"""
    return default_axes(1)


@pytest.fixture
def window(axes):
    return gaussian_window(1, axes)


@pytest.fixture
def small_phase_grid():
    return make_phase_grid(1, 4.0, 33)


@pytest.fixture
def fine_axis():
    return AxisGrid(10.0, 1025)


@pytest.fixture
def rng():
    return np.random.default_rng(7)
