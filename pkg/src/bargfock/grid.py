"""
Sampling grids, quadrature rules and the centered Fourier transform.

All integrals in bargfock are evaluated on the uniform, symmetric grids
defined here:
- AxisGrid: odd node count on [-L, L], so the origin is always a node
- PhaseGrid: product of d position axes and d frequency axes (R^{2d} = C^d)
- QuadRule: Gauss-Hermite rule for integrals against e^{-t^2}

Samples are integrated with the trapezoid rule. Callables integrated
against a Gaussian measure go through Gauss-Hermite products instead
(fock.kernel.gauss_hermite_plane).
"""
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np
from scipy.ndimage import map_coordinates
from scipy.special import roots_hermite

from bargfock.config import DEFAULT_HALF_WIDTH, DEFAULT_N_1D, DEFAULT_N_2D
from bargfock.errors import InvalidArgumentError, OutOfDomainError

MAX_GAUSS_HERMITE_ORDER = 256


@dataclass(frozen=True)
class AxisGrid:
    """Uniform grid on [-half_width, half_width] with an odd number of nodes"""
    half_width: float
    n: int

    def __post_init__(self):
        if not (self.half_width > 0):
            raise InvalidArgumentError(f"half_width must be positive, got {self.half_width}")
        if int(self.n) != self.n or self.n < 3 or self.n % 2 == 0:
            raise InvalidArgumentError(f"n must be an odd integer >= 3, got {self.n}")
        object.__setattr__(self, "half_width", float(self.half_width))
        object.__setattr__(self, "n", int(self.n))

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n - 1)

    @property
    def center(self) -> int:
        """Index of the node at the origin"""
        return (self.n - 1) // 2

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.n) - self.center) * self.spacing

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid weights"""
        w = np.full(self.n, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    @property
    def bandwidth(self) -> float:
        """Largest frequency resolved by the sampling (Nyquist)"""
        return np.pi / self.spacing

    def index_of(self, values: np.ndarray) -> np.ndarray:
        """Fractional node index of each value"""
        return (np.asarray(values, dtype=float) + self.half_width) / self.spacing


def make_axis_grid(half_width: float, n: int) -> AxisGrid:
    """
    Build a symmetric axis grid.

    Args:
        half_width: grid covers [-half_width, half_width]
        n: odd node count >= 3

    Raises:
        InvalidArgumentError: non-positive half_width, even or too small n
    """
    return AxisGrid(half_width, n)


def default_axes(dim: int, half_width: float = DEFAULT_HALF_WIDTH, n: int | None = None) -> tuple[AxisGrid, ...]:
    """Desk-scale signal axes: 257 nodes at d = 1, 65 per axis at d = 2"""
    if dim not in (1, 2):
        raise InvalidArgumentError(f"dimension must be 1 or 2, got {dim}")
    if n is None:
        n = DEFAULT_N_1D if dim == 1 else DEFAULT_N_2D
    return tuple(AxisGrid(half_width, n) for _ in range(dim))


def axes_weights(axes: Sequence[AxisGrid]) -> np.ndarray:
    """Product trapezoid weights over several axes"""
    weights = np.ones(())
    for axis in axes:
        weights = np.multiply.outer(weights, axis.weights)
    return weights


def _mesh(axes: Sequence[AxisGrid]) -> list[np.ndarray]:
    return np.meshgrid(*[axis.nodes for axis in axes], indexing="ij")


@dataclass(frozen=True)
class PhaseGrid:
    """Product grid on R^{2d}: position axes first, then frequency axes"""
    dim: int
    x_axes: tuple[AxisGrid, ...]
    xi_axes: tuple[AxisGrid, ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise InvalidArgumentError(f"dimension must be 1 or 2, got {self.dim}")
        if len(self.x_axes) != self.dim or len(self.xi_axes) != self.dim:
            raise InvalidArgumentError("a phase grid needs d position axes and d frequency axes")
        object.__setattr__(self, "x_axes", tuple(self.x_axes))
        object.__setattr__(self, "xi_axes", tuple(self.xi_axes))

    @property
    def axes(self) -> tuple[AxisGrid, ...]:
        return self.x_axes + self.xi_axes

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(axis.n for axis in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def weights(self) -> np.ndarray:
        return axes_weights(self.axes)

    def mesh(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        """Position and frequency coordinates, each of full grid shape"""
        grids = _mesh(self.axes)
        return grids[: self.dim], grids[self.dim:]

    def radius_squared(self) -> np.ndarray:
        """|x|^2 + |xi|^2 at every node"""
        return sum(g ** 2 for g in _mesh(self.axes))


def make_phase_grid(
    dim: int,
    half_width: float = DEFAULT_HALF_WIDTH,
    n: int | None = None,
    xi_half_width: float | None = None,
    xi_n: int | None = None,
) -> PhaseGrid:
    """Phase grid with identical position axes and identical frequency axes"""
    if n is None:
        n = DEFAULT_N_1D if dim == 1 else DEFAULT_N_2D
    x_axis = AxisGrid(half_width, n)
    xi_axis = AxisGrid(xi_half_width or half_width, xi_n or n)
    return PhaseGrid(dim, (x_axis,) * dim, (xi_axis,) * dim)


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex samples of a function on a product of axis grids (d = 1 or 2)"""
    axes: tuple[AxisGrid, ...]
    values: np.ndarray

    def __post_init__(self):
        axes = tuple(self.axes)
        if len(axes) not in (1, 2):
            raise InvalidArgumentError(f"signals live in dimension 1 or 2, got {len(axes)}")
        values = np.array(self.values, dtype=complex)
        expected = tuple(axis.n for axis in axes)
        if values.shape != expected:
            raise InvalidArgumentError(f"signal values have shape {values.shape}, grid has {expected}")
        values.flags.writeable = False
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, axes: Sequence[AxisGrid], fn: Callable[..., np.ndarray]) -> "Signal":
        """Sample fn(x_1, ..., x_d) on the grid"""
        return cls(tuple(axes), fn(*_mesh(axes)))

    @classmethod
    def zeros(cls, axes: Sequence[AxisGrid]) -> "Signal":
        return cls(tuple(axes), np.zeros(tuple(axis.n for axis in axes), dtype=complex))

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def weights(self) -> np.ndarray:
        return axes_weights(self.axes)

    def mesh(self) -> list[np.ndarray]:
        return _mesh(self.axes)

    def inner(self, other: "Signal") -> complex:
        """(self, other)_{L^2}, linear in self"""
        if self.axes != other.axes:
            raise InvalidArgumentError("inner product of signals on different grids")
        return complex(np.sum(self.values * np.conj(other.values) * self.weights))

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2 * self.weights)))

    def with_values(self, values: np.ndarray) -> "Signal":
        return Signal(self.axes, values)


class Sampled(Protocol):
    """Anything carrying samples and matching quadrature weights"""
    values: np.ndarray

    @property
    def weights(self) -> np.ndarray: ...


def integrate(field: Sampled) -> complex:
    """Trapezoid integral of sampled values; NaN in gives NaN out"""
    return complex(np.sum(field.values * field.weights))


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Gauss-Hermite rule: sum(weights * f(nodes)) ~ integral of e^{-t^2} f(t)"""
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, fn: Callable[[np.ndarray], np.ndarray]) -> complex:
        return complex(np.sum(self.weights * fn(self.nodes)))


def gauss_hermite_rule(m: int) -> QuadRule:
    """
    m-point Gauss-Hermite rule for the weight e^{-t^2}.

    Exact for polynomials of degree <= 2m - 1; weights sum to sqrt(pi).

    Raises:
        InvalidArgumentError: m outside [1, 256]
    """
    if int(m) != m or not (1 <= m <= MAX_GAUSS_HERMITE_ORDER):
        raise InvalidArgumentError(f"Gauss-Hermite order must lie in [1, {MAX_GAUSS_HERMITE_ORDER}], got {m}")
    nodes, weights = roots_hermite(int(m))
    nodes = np.asarray(nodes, dtype=float)
    # Symmetrize: roots come in +/- pairs and the middle root of odd m is 0.
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (np.asarray(weights) + np.asarray(weights)[::-1])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadRule(int(m), nodes, weights)


def axis_fourier_matrix(source: AxisGrid, target: AxisGrid, sign: int = -1) -> np.ndarray:
    """Quadrature matrix M[k, j] = exp(sign * i * target_k * source_j) * w_j"""
    return np.exp(sign * 1j * np.outer(target.nodes, source.nodes)) * source.weights


def apply_axis_matrices(values: np.ndarray, matrices: Sequence[np.ndarray], first_axis: int = 0) -> np.ndarray:
    """Contract matrix k with array axis first_axis + k"""
    out = values
    for k, matrix in enumerate(matrices):
        axis = first_axis + k
        out = np.moveaxis(np.tensordot(matrix, out, axes=([1], [axis])), 0, axis)
    return out


def spline_sample(
    values: np.ndarray,
    axes: Sequence[AxisGrid],
    coords: Sequence[np.ndarray],
    fill: float | None = None,
) -> np.ndarray:
    """
    Separable cubic-spline interpolation of grid samples at arbitrary points.

    Args:
        values: samples over the product of axes (real or complex)
        axes: source axes
        coords: one coordinate array per axis, broadcastable to a common shape
        fill: value used outside the grid; None makes such points an error

    Raises:
        OutOfDomainError: a point lies outside the grid and fill is None
    """
    coords = [np.asarray(c, dtype=float) for c in np.broadcast_arrays(*coords)]
    shape = coords[0].shape
    if fill is None:
        outside = np.zeros(shape, dtype=bool)
        for axis, c in zip(axes, coords):
            outside |= np.abs(c) > axis.half_width * (1.0 + 1e-12)
        if outside.any():
            clipped = [tuple(float(c[i]) for c in coords) for i in zip(*np.nonzero(outside))]
            raise OutOfDomainError(
                f"{len(clipped)} requested nodes lie outside the source grid, first {clipped[0]}",
                clipped,
            )
    index = np.stack([axis.index_of(c).ravel() for axis, c in zip(axes, coords)])
    mode = "nearest" if fill is None else "grid-constant"
    cval = 0.0 if fill is None else float(fill)

    def interpolate(part: np.ndarray) -> np.ndarray:
        return map_coordinates(part, index, order=3, mode=mode, cval=cval)

    values = np.asarray(values)
    if np.iscomplexobj(values):
        out = interpolate(values.real) + 1j * interpolate(values.imag)
    else:
        out = interpolate(values)
    return out.reshape(shape)


def fourier_transform(f: Signal, out_axes: Sequence[AxisGrid] | None = None) -> Signal:
    """
    (Ff)(xi) = (2 pi)^{-d/2} * integral f(x) e^{-i<x, xi>} dx, by direct quadrature.

    Args:
        f: input signal
        out_axes: frequency axes, defaults to the input axes

    Raises:
        InvalidArgumentError: out_axes has a different dimension than f
    """
    return _fourier(f, out_axes, sign=-1)


def inverse_fourier_transform(f: Signal, out_axes: Sequence[AxisGrid] | None = None) -> Signal:
    """Inverse of fourier_transform: same normalization, opposite phase"""
    return _fourier(f, out_axes, sign=+1)


def _fourier(f: Signal, out_axes: Sequence[AxisGrid] | None, sign: int) -> Signal:
    targets = tuple(out_axes) if out_axes is not None else f.axes
    if len(targets) != f.dim:
        raise InvalidArgumentError(f"output grid has dimension {len(targets)}, signal has {f.dim}")
    matrices = [axis_fourier_matrix(src, tgt, sign) for src, tgt in zip(f.axes, targets)]
    values = apply_axis_matrices(f.values, matrices) * (2 * np.pi) ** (-f.dim / 2)
    return Signal(targets, values)
