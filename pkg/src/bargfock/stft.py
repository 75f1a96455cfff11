"""
Short-time Fourier transform with a Gaussian window.

Convention used throughout the package (no (2 pi)^{-d/2} in front):

    V f(x, xi) = integral f(y) conj(w(y - x)) e^{-i<y, xi>} dy

so that V phi phi = e^{-(|x|^2+|xi|^2)/4} e^{-i<x,xi>/2} and the Bargmann
transform is V followed by U_V with constant exactly 1. The 2 pi factors
this moves around are carried by istft, twisted_convolution and the weak
Toeplitz form.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.signal import fftconvolve

from bargfock.config import DEFAULT_PHASE_N_2D
from bargfock.errors import InvalidArgumentError, PreconditionViolation
from bargfock.grid import (
    AxisGrid,
    PhaseGrid,
    Signal,
    apply_axis_matrices,
    axes_weights,
    axis_fourier_matrix,
    default_axes,
    make_phase_grid,
    spline_sample,
)

logger = logging.getLogger(__name__)


class Convention(str, Enum):
    """Which function a PhaseField holds samples of"""
    STFT_PLAIN = "stft-plain"   # V f without a 2 pi prefactor
    FOCK_PLANE = "fock-plane"   # F(z) with z = x + i xi
    SYMBOL = "symbol"           # symbols and weights on R^{2d}


@dataclass(frozen=True, eq=False)
class PhaseField:
    """Complex samples on a PhaseGrid; array axes are (x_1..x_d, xi_1..xi_d)"""
    grid: PhaseGrid
    values: np.ndarray
    convention: Convention = Convention.STFT_PLAIN

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise InvalidArgumentError(f"field values have shape {values.shape}, grid has {self.grid.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "convention", Convention(self.convention))

    @classmethod
    def from_function(
        cls,
        grid: PhaseGrid,
        fn: Callable[..., np.ndarray],
        convention: Convention = Convention.SYMBOL,
    ) -> "PhaseField":
        """Sample fn(x_1, .., x_d, xi_1, .., xi_d) on the grid"""
        x, xi = grid.mesh()
        values = np.broadcast_to(fn(*x, *xi), grid.shape)
        return cls(grid, values, convention)

    @property
    def dim(self) -> int:
        return self.grid.dim

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    def inner(self, other: "PhaseField") -> complex:
        """L^2(R^{2d}) inner product, linear in self"""
        if self.grid != other.grid:
            raise InvalidArgumentError("inner product of fields on different phase grids")
        return complex(np.sum(self.values * np.conj(other.values) * self.weights))

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2 * self.weights)))

    def with_values(self, values: np.ndarray, convention: Convention | None = None) -> "PhaseField":
        return PhaseField(self.grid, values, convention or self.convention)

    def sample(self, *coords: np.ndarray) -> np.ndarray:
        """Cubic interpolation at phase-space points (x_1.., xi_1..); outside the grid is an error"""
        return spline_sample(self.values, self.grid.axes, coords)


@dataclass(frozen=True, eq=False)
class Window:
    """
    Analysis window. profile, when given, is the closed form used off-grid;
    otherwise the samples are interpolated and taken to vanish outside.
    """
    signal: Signal
    profile: Callable[..., np.ndarray] | None = None
    l2_norm: float = field(init=False)

    def __post_init__(self):
        norm = self.signal.l2_norm()
        if not norm > 0:
            raise InvalidArgumentError("window must have positive L^2 norm")
        object.__setattr__(self, "l2_norm", norm)

    @property
    def dim(self) -> int:
        return self.signal.dim

    def evaluate(self, *coords: np.ndarray) -> np.ndarray:
        if self.profile is not None:
            return self.profile(*coords)
        return spline_sample(self.signal.values, self.signal.axes, coords, fill=0.0)


def gaussian_profile(*coords: np.ndarray) -> np.ndarray:
    """phi(x) = pi^{-d/4} e^{-|x|^2/2}"""
    d = len(coords)
    return np.pi ** (-d / 4) * np.exp(-0.5 * sum(np.asarray(c) ** 2 for c in coords))


def gaussian_window(d: int, axes: Sequence[AxisGrid] | None = None) -> Window:
    """The canonical window phi sampled on axes (default grid when omitted)"""
    axes = tuple(axes) if axes is not None else default_axes(d)
    if len(axes) != d:
        raise InvalidArgumentError(f"window dimension {d} does not match {len(axes)} axes")
    return Window(Signal.from_function(axes, gaussian_profile), gaussian_profile)


def _check_pair(f: Signal, w: Window) -> None:
    if f.axes != w.signal.axes:
        raise InvalidArgumentError("signal and window are sampled on different grids")


def _check_bandwidth(f: Signal, pg: PhaseGrid) -> None:
    if pg.dim != f.dim:
        raise InvalidArgumentError(f"phase grid has dimension {pg.dim}, signal has {f.dim}")
    for j, (axis, xi_axis) in enumerate(zip(f.axes, pg.xi_axes)):
        if xi_axis.half_width > axis.bandwidth * (1.0 + 1e-12):
            raise PreconditionViolation(
                f"frequency axis {j} reaches {xi_axis.half_width:g}, "
                f"signal spacing {axis.spacing:g} resolves only {axis.bandwidth:g}"
            )


def default_stft_grid(f: Signal) -> PhaseGrid:
    """The signal axes in both x and xi at d = 1; 33 nodes per axis over the same box at d = 2"""
    if f.dim == 1:
        return PhaseGrid(1, f.axes, f.axes)
    return make_phase_grid(f.dim, max(axis.half_width for axis in f.axes), DEFAULT_PHASE_N_2D)


def stft(f: Signal, w: Window, pg: PhaseGrid | None = None) -> PhaseField:
    """
    V_w f at every node of pg by direct quadrature.

    Args:
        f: signal
        w: window sampled on the same grid as f
        pg: phase grid, default_stft_grid(f) when omitted

    Raises:
        InvalidArgumentError: f and w on different grids, or pg of another dimension
        PreconditionViolation: pg asks for frequencies beyond the signal's Nyquist limit
    """
    _check_pair(f, w)
    pg = pg or default_stft_grid(f)
    _check_bandwidth(f, pg)

    matrices = [axis_fourier_matrix(y_axis, xi_axis, -1) for y_axis, xi_axis in zip(f.axes, pg.xi_axes)]
    mesh = f.mesh()
    x_nodes = [axis.nodes for axis in pg.x_axes]
    out = np.empty(pg.shape, dtype=complex)
    for index in np.ndindex(*pg.shape[: pg.dim]):
        shifted = [y - nodes[i] for y, nodes, i in zip(mesh, x_nodes, index)]
        out[index] = apply_axis_matrices(f.values * np.conj(w.evaluate(*shifted)), matrices)
    return PhaseField(pg, out, Convention.STFT_PLAIN)


def _as_points(points, d: int) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if d == 1 and (arr.ndim == 0 or arr.shape[-1] != 1):
        arr = arr[..., None]
    return arr.reshape(-1, d)


def stft_at(f: Signal, w: Window, x, xi) -> np.ndarray | complex:
    """
    V_w f at individual phase-space points.

    Args:
        x, xi: points of shape (m, d), or scalars / 1-d arrays at d = 1

    Returns:
        complex for a single scalar point, else an array of m values
    """
    _check_pair(f, w)
    scalar = np.ndim(x) == 0 and np.ndim(xi) == 0
    xs, xis = _as_points(x, f.dim), _as_points(xi, f.dim)
    if xs.shape != xis.shape:
        raise InvalidArgumentError("x and xi must list the same number of points")
    mesh = f.mesh()
    weighted = f.values * f.weights
    out = np.empty(len(xs), dtype=complex)
    for k, (x_k, xi_k) in enumerate(zip(xs, xis)):
        window = w.evaluate(*[y - c for y, c in zip(mesh, x_k)])
        phase = np.exp(-1j * sum(y * c for y, c in zip(mesh, xi_k)))
        out[k] = np.sum(weighted * np.conj(window) * phase)
    return complex(out[0]) if scalar else out


def istft(F: PhaseField, w: Window, out_axes: Sequence[AxisGrid] | None = None) -> Signal:
    """
    f(y) = (2 pi)^{-d} ||w||^{-2} iint F(x, xi) w(y - x) e^{i<y, xi>} dx dxi.

    Left inverse of stft for signals whose STFT is negligible outside F.grid.
    Output defaults to the window's axes.
    """
    out_axes = tuple(out_axes) if out_axes is not None else w.signal.axes
    grid = F.grid
    if len(out_axes) != grid.dim:
        raise InvalidArgumentError(f"output grid has dimension {len(out_axes)}, field has {grid.dim}")

    inverse = [
        np.exp(1j * np.outer(y_axis.nodes, xi_axis.nodes)) * xi_axis.weights
        for y_axis, xi_axis in zip(out_axes, grid.xi_axes)
    ]
    mesh = Signal.zeros(out_axes).mesh()
    x_nodes = [axis.nodes for axis in grid.x_axes]
    x_weights = axes_weights(grid.x_axes)
    acc = np.zeros(tuple(axis.n for axis in out_axes), dtype=complex)
    for index in np.ndindex(*grid.shape[: grid.dim]):
        row = F.values[index]
        if not row.any():
            continue
        shifted = [y - nodes[i] for y, nodes, i in zip(mesh, x_nodes, index)]
        acc += x_weights[index] * w.evaluate(*shifted) * apply_axis_matrices(row, inverse)
    acc *= (2 * np.pi) ** (-grid.dim) / w.l2_norm ** 2
    return Signal(out_axes, acc)


def twisted_convolution(F: PhaseField, G: PhaseField) -> PhaseField:
    """
    (F *^ G)(x, xi) = (2 pi)^{-d} iint F(x - y, xi - eta) G(y, eta) e^{-i<x - y, eta>} dy deta

    Position differences are looped over explicitly; the frequency integral is a
    plain convolution done with fftconvolve. F is taken as 0 off the grid.

    Raises:
        InvalidArgumentError: F and G on different grids
    """
    if F.grid != G.grid:
        raise InvalidArgumentError("twisted convolution needs both fields on the same phase grid")
    grid = F.grid
    d = grid.dim
    x_shape = grid.shape[:d]
    xi_axes_idx = tuple(range(d, 2 * d))
    x_centers = [axis.center for axis in grid.x_axes]
    xi_centers = [axis.center for axis in grid.xi_axes]

    eta = np.meshgrid(*[axis.nodes for axis in grid.xi_axes], indexing="ij")
    weighted = G.values * grid.weights
    keep = (slice(None),) * d + tuple(slice(c, c + axis.n) for c, axis in zip(xi_centers, grid.xi_axes))

    result = np.zeros(grid.shape, dtype=complex)
    for u_index in np.ndindex(*x_shape):
        s = [i - c for i, c in zip(u_index, x_centers)]
        row = F.values[u_index]
        if not row.any():
            continue
        u = [k * axis.spacing for k, axis in zip(s, grid.x_axes)]
        phase = np.exp(-1j * sum(uj * e for uj, e in zip(u, eta)))
        conv = fftconvolve(weighted * phase, row.reshape((1,) * d + row.shape), axes=xi_axes_idx)[keep]
        dest = tuple(slice(max(k, 0), n + min(k, 0)) for k, n in zip(s, x_shape))
        src = tuple(slice(max(-k, 0), n - max(k, 0)) for k, n in zip(s, x_shape))
        result[dest] += conv[src]
    result *= (2 * np.pi) ** (-d)
    return PhaseField(grid, result, F.convention)


def projection_pi(F: PhaseField, w: Window) -> PhaseField:
    """Pi F = F *^ (V_w w) / ||w||^2, the orthogonal projection onto the range of V_w"""
    kernel = stft(w.signal, w, F.grid)
    return twisted_convolution(F, kernel.with_values(kernel.values / w.l2_norm ** 2))


def window_transform_constant(f: Signal, pg: PhaseGrid, w: Window | None = None) -> complex:
    """
    c with (V f) *^ (V w w) = c V f, measured as a Rayleigh quotient.

    Exactly ||w||^2 in the continuum; the deviation measures quadrature error.
    """
    w = w or Window(Signal.from_function(f.axes, gaussian_profile), gaussian_profile)
    field_f = stft(f, w, pg)
    field_w = stft(w.signal, w, pg)
    norm_sq = field_f.inner(field_f)
    if norm_sq == 0:
        raise InvalidArgumentError("window transform constant of the zero signal is undefined")
    c = twisted_convolution(field_f, field_w).inner(field_f) / norm_sq
    logger.debug("window transform constant %s on %s", c, pg.shape)
    return complex(c)


def toeplitz(a: PhaseField, w: Window, f: Signal) -> Signal:
    """
    Tp_w(a) f = istft(a * stft(f)), sampled back on the signal grid.

    Self-adjoint when a is real; a >= 0 gives a positive operator.
    """
    if a.dim != f.dim:
        raise InvalidArgumentError(f"symbol has dimension {a.dim}, signal has {f.dim}")
    transformed = stft(f, w, a.grid)
    return istft(transformed.with_values(a.values * transformed.values), w, f.axes)


def toeplitz_form(a: PhaseField, w: Window, f: Signal, g: Signal) -> complex:
    """Weak form (Tp f, g) = (2 pi)^{-d} ||w||^{-2} (a V f, V g)"""
    vf = stft(f, w, a.grid)
    vg = stft(g, w, a.grid)
    return (2 * np.pi) ** (-a.dim) * vf.with_values(a.values * vf.values).inner(vg) / w.l2_norm ** 2
