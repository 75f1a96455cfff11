"""bargfock - Bargmann transform, Gaussian STFT and weighted Fock-space norms at desk scale"""

from .bargmann import SampledFock, TaylorCoeffs, bargmann_direct, bargmann_from_hermite, inverse_bargmann
from .grid import AxisGrid, PhaseGrid, Signal, make_axis_grid, make_phase_grid
from .hermite import HermiteExpansion, MultiIndex
from .stft import PhaseField, Window, gaussian_window, stft

__version__ = "0.1.0"

__all__ = [
    "AxisGrid",
    "PhaseGrid",
    "Signal",
    "make_axis_grid",
    "make_phase_grid",
    "MultiIndex",
    "HermiteExpansion",
    "PhaseField",
    "Window",
    "gaussian_window",
    "stft",
    "TaylorCoeffs",
    "SampledFock",
    "bargmann_direct",
    "bargmann_from_hermite",
    "inverse_bargmann",
]
