"""
The Bargmann transform and its companions.

    (V f)(z) = pi^{-d/4} integral exp(-(<z,z> + |y|^2)/2 + sqrt(2)<z,y>) f(y) dy

computed three ways: kernel quadrature (bargmann_direct), coefficient copy
h_alpha -> z^alpha/sqrt(alpha!) (bargmann_from_hermite) and through the
STFT (bargmann_via_stft). Entire functions are held either as Taylor
coefficients in the normalized monomial basis or as samples on the plane.
"""
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from bargfock.config import CAUCHY_RADIUS, FOCK_HALF_WIDTH, FOCK_HALF_WIDTH_2D, FOCK_N, FOCK_N_2D
from bargfock.errors import IllConditionedWarning, InvalidArgumentError, NumericalOverflowError
from bargfock.grid import PhaseGrid, Signal, make_phase_grid
from bargfock.hermite import CoefficientMap, HermiteExpansion, multi_indices
from bargfock.stft import Convention, PhaseField, Window, gaussian_profile, stft_at

logger = logging.getLogger(__name__)

# exp() overflows double precision just above 709
OVERFLOW_EXPONENT = 700.0
# relative size of the highest Cauchy-circle modes above which aliasing is suspected
GROWTH_THRESHOLD = 1e-6


class TaylorCoeffs(CoefficientMap):
    """Entire function F = sum a_alpha z^alpha / sqrt(alpha!), |alpha| <= max_degree"""

    @property
    def degree(self) -> int:
        return self.max_degree

    def evaluate(self, z) -> np.ndarray | complex:
        return evaluate_taylor(self, z)


@dataclass(frozen=True, eq=False)
class SampledFock:
    """Entire function sampled on the plane; field axes are (Re z, Im z)"""
    field: PhaseField

    def __post_init__(self):
        if self.field.convention != Convention.FOCK_PLANE:
            raise InvalidArgumentError(f"sampled Fock functions need a fock-plane field, got {self.field.convention.value}")

    @property
    def dim(self) -> int:
        return self.field.dim

    @property
    def grid(self) -> PhaseGrid:
        return self.field.grid

    def evaluate(self, z) -> np.ndarray | complex:
        """Cubic interpolation of the samples; points off the grid raise OutOfDomainError"""
        scalar = np.ndim(z) == 0
        points = as_fock_points(z, self.dim)
        coords = [points[..., j].real for j in range(self.dim)] + [points[..., j].imag for j in range(self.dim)]
        values = self.field.sample(*coords)
        return complex(values) if scalar else values


FockFunction = Union[TaylorCoeffs, SampledFock]


@dataclass(frozen=True)
class TruncationReport:
    """What inverse_bargmann dropped to stay within max_degree"""
    max_degree: int
    dropped: int
    tail_l2: float

    @property
    def truncated(self) -> bool:
        return self.dropped > 0


def as_fock_points(z, d: int) -> np.ndarray:
    """Complex points of shape (..., d); scalars and flat arrays are accepted at d = 1"""
    points = np.asarray(z, dtype=complex)
    if d == 1 and (points.ndim == 0 or points.shape[-1] != 1):
        points = points[..., None]
    if points.shape[-1] != d:
        raise InvalidArgumentError(f"points have {points.shape[-1]} coordinates, expected {d}")
    return points


def bilinear_dot(z, w) -> np.ndarray | complex:
    """<z, w> = sum z_j w_j"""
    return np.sum(np.asarray(z, dtype=complex) * np.asarray(w, dtype=complex), axis=-1)


def hermitian_dot(z, w) -> np.ndarray | complex:
    """(z, w) = sum z_j conj(w_j)"""
    return np.sum(np.asarray(z, dtype=complex) * np.conj(np.asarray(w, dtype=complex)), axis=-1)


def fock_plane_grid(dim: int = 1, half_width: float | None = None, n: int | None = None) -> PhaseGrid:
    """
    Grid on C^d = R^{2d}: real parts on the first d axes, imaginary parts on the rest.

    Defaults: half width 7 with 141 nodes at d = 1, half width 6 with 25 nodes
    per axis at d = 2, where the grid has four axes.
    """
    if half_width is None:
        half_width = FOCK_HALF_WIDTH if dim == 1 else FOCK_HALF_WIDTH_2D
    if n is None:
        n = FOCK_N if dim == 1 else FOCK_N_2D
    return make_phase_grid(dim, half_width, n)


def monomial_table(n_max: int, z: np.ndarray) -> np.ndarray:
    """z^k / sqrt(k!) for k = 0..n_max, stacked on a new first axis"""
    table = np.empty((n_max + 1,) + z.shape, dtype=complex)
    table[0] = 1.0
    for k in range(1, n_max + 1):
        table[k] = table[k - 1] * z / math.sqrt(k)
    return table


def evaluate_taylor(F: TaylorCoeffs, z) -> np.ndarray | complex:
    """sum a_alpha z^alpha / sqrt(alpha!) at one point or an array of points"""
    scalar = np.ndim(z) == 0
    points = as_fock_points(z, F.dim)
    dense = F.to_dense()
    tables = [monomial_table(F.max_degree, points[..., j]) for j in range(F.dim)]
    if F.dim == 1:
        values = np.tensordot(dense, tables[0], axes=1)
    else:
        values = np.einsum("ab,a...,b...->...", dense, tables[0], tables[1])
    return complex(values) if scalar else values


def sample_taylor(F: TaylorCoeffs, grid: PhaseGrid | None = None) -> SampledFock:
    """Exact samples of a Taylor polynomial on a plane grid"""
    grid = grid or fock_plane_grid(F.dim)
    if grid.dim != F.dim:
        raise InvalidArgumentError(f"grid has dimension {grid.dim}, function has {F.dim}")
    x, xi = grid.mesh()
    z = np.stack([a + 1j * b for a, b in zip(x, xi)], axis=-1)
    return SampledFock(PhaseField(grid, evaluate_taylor(F, z), Convention.FOCK_PLANE))


def bargmann_direct(f: Signal, points) -> np.ndarray:
    """
    V f at the given points by trapezoid quadrature of the Bargmann kernel.

    Args:
        f: signal on a grid wide enough for the kernel's Gaussian bump at y = sqrt(2) Re z
        points: complex points, shape (m, d) or (m,) at d = 1

    Returns:
        array of m values

    Raises:
        NumericalOverflowError: the kernel exponent exceeds double range at some point
    """
    d = f.dim
    pts = as_fock_points(points, d).reshape(-1, d)
    weighted = f.values * f.weights
    exponents = []
    peak = np.zeros(len(pts))
    for j, axis in enumerate(f.axes):
        y = axis.nodes[None, :]
        z = pts[:, j][:, None]
        exponent = -0.5 * (z ** 2 + y ** 2) + math.sqrt(2.0) * z * y
        peak += exponent.real.max(axis=1)
        exponents.append(exponent)
        if np.any(math.sqrt(2.0) * np.abs(pts[:, j].real) > axis.half_width):
            warnings.warn(
                f"kernel peak falls outside axis {j}; quadrature of V f is unreliable there",
                IllConditionedWarning,
                stacklevel=2,
            )

    overflow = np.nonzero(peak > OVERFLOW_EXPONENT)[0]
    if overflow.size:
        point = tuple(complex(c) for c in pts[overflow[0]])
        raise NumericalOverflowError(f"Bargmann kernel overflows at z = {point}", point)

    if d == 1:
        values = np.exp(exponents[0]) @ weighted
    else:
        values = np.einsum("ma,mb,ab->m", np.exp(exponents[0]), np.exp(exponents[1]), weighted)
    return np.pi ** (-d / 4) * values


def bargmann_coefficients(e: HermiteExpansion) -> TaylorCoeffs:
    """V h_alpha = z^alpha / sqrt(alpha!): the coefficients carry over unchanged"""
    return TaylorCoeffs(e.dim, e.max_degree, dict(e.coeffs))


def bargmann_from_hermite(e: HermiteExpansion, z) -> np.ndarray | complex:
    return evaluate_taylor(bargmann_coefficients(e), z)


def bargmann_via_stft(f: Signal, z, w: Window | None = None) -> np.ndarray | complex:
    """
    V f(x + i xi) = e^{(|x|^2+|xi|^2)/2} e^{-i<x,xi>} V_phi f(sqrt(2) x, -sqrt(2) xi)

    The STFT is evaluated pointwise, so no phase grid is involved.
    """
    w = w or Window(Signal.from_function(f.axes, gaussian_profile), gaussian_profile)
    scalar = np.ndim(z) == 0
    pts = as_fock_points(z, f.dim).reshape(-1, f.dim)
    x, xi = pts.real, pts.imag
    transformed = stft_at(f, w, math.sqrt(2.0) * x, -math.sqrt(2.0) * xi)
    factor = np.exp(0.5 * np.sum(x ** 2 + xi ** 2, axis=1) - 1j * np.sum(x * xi, axis=1))
    values = factor * transformed
    return complex(values[0]) if scalar else values


def taylor_coefficients(
    F: "FockFunction | Callable[[np.ndarray], np.ndarray]",
    degree: int,
    dim: int | None = None,
    radius: float = CAUCHY_RADIUS,
    nodes: int | None = None,
) -> TaylorCoeffs:
    """
    Taylor coefficients a_alpha, |alpha| <= degree, by the trapezoid rule on
    Cauchy circles |z_j| = radius. Exact for polynomials of degree < nodes.

    Args:
        F: entire function; callables receive points of shape (..., d)
        degree: largest |alpha| returned
        dim: d, required for plain callables
        radius: circle radius per coordinate
        nodes: points per circle, default max(16, 2 (degree + 1))

    Raises:
        InvalidArgumentError: too few nodes for the requested degree
        NumericalOverflowError: F is not finite on the circles

    Warns:
        IllConditionedWarning: the highest circle modes are not negligible,
        so the series is aliased at this radius and node count
    """
    if isinstance(F, (TaylorCoeffs, SampledFock)):
        fn, dim = F.evaluate, F.dim
    elif dim is None:
        raise InvalidArgumentError("dim is required when F is a plain callable")
    else:
        fn = F
    if degree < 0:
        raise InvalidArgumentError(f"degree must be >= 0, got {degree}")
    if not radius > 0:
        raise InvalidArgumentError(f"Cauchy radius must be positive, got {radius}")
    m = nodes or max(16, 2 * (degree + 1))
    if m < degree + 1:
        raise InvalidArgumentError(f"{m} nodes per circle cannot resolve degree {degree}")

    circle = radius * np.exp(2j * np.pi * np.arange(m) / m)
    z = np.stack(np.meshgrid(*([circle] * dim), indexing="ij"), axis=-1)
    values = np.asarray(fn(z), dtype=complex).reshape((m,) * dim)
    if not np.all(np.isfinite(values)):
        raise NumericalOverflowError(f"F is not finite on the Cauchy circle of radius {radius}")

    # modes[k] = a_k r^|k| / sqrt(k!) plus aliases from orders k + m
    modes = np.fft.fftn(values) / m ** dim
    peak = np.abs(modes).max()
    if peak > 0:
        top = np.indices(modes.shape).max(axis=0) >= m - m // 4
        ratio = np.abs(modes[top]).max() / peak
        if ratio > GROWTH_THRESHOLD:
            logger.warning("Cauchy-circle growth check failed: top modes at %.2e of peak", ratio)
            warnings.warn(
                f"Taylor series does not decay on |z| = {radius} with {m} nodes (top modes at {ratio:.1e} of peak)",
                IllConditionedWarning,
                stacklevel=2,
            )

    coeffs = {}
    for alpha in multi_indices(dim, degree):
        value = modes[alpha.entries] / radius ** alpha.order * math.sqrt(alpha.factorial)
        if value != 0:
            coeffs[alpha] = value
    return TaylorCoeffs(dim, degree, coeffs)


def inverse_bargmann(F: FockFunction, max_degree: int | None = None) -> tuple[HermiteExpansion, TruncationReport]:
    """
    Signal with V f = F, as a Hermite expansion.

    Taylor coefficients are copied. Sampled functions are expanded first,
    with eight orders beyond max_degree so the dropped tail can be reported.

    Returns:
        (expansion, report); report.tail_l2 is the l^2 mass above max_degree
    """
    if isinstance(F, SampledFock):
        if max_degree is None:
            raise InvalidArgumentError("max_degree is required for sampled Fock functions")
        F = taylor_coefficients(F, max_degree + 8)
    elif not isinstance(F, TaylorCoeffs):
        raise InvalidArgumentError(f"cannot invert {type(F).__name__}")
    limit = F.max_degree if max_degree is None else max_degree

    kept = {alpha: a for alpha, a in F.coeffs.items() if alpha.order <= limit}
    tail = [a for alpha, a in F.coeffs.items() if alpha.order > limit]
    report = TruncationReport(limit, len(tail), float(np.sqrt(sum(abs(a) ** 2 for a in tail))))
    if report.truncated:
        logger.info("inverse Bargmann dropped %d coefficients, tail l2 %.3e", report.dropped, report.tail_l2)
    return HermiteExpansion(F.dim, limit, kept), report


PhaseSource = Union[PhaseField, Callable[..., np.ndarray]]


def _resample(F: PhaseSource, target: PhaseGrid, x_scale: float, xi_scale: float) -> np.ndarray:
    x, xi = target.mesh()
    coords = [x_scale * c for c in x] + [xi_scale * c for c in xi]
    if isinstance(F, PhaseField):
        if F.dim != target.dim:
            raise InvalidArgumentError(f"field has dimension {F.dim}, target grid has {target.dim}")
        return F.sample(*coords)
    return np.broadcast_to(F(*coords), target.shape)


def _convention_of(F: PhaseSource) -> Convention:
    return F.convention if isinstance(F, PhaseField) else Convention.SYMBOL


def dilation_S(F: PhaseSource, target: PhaseGrid) -> PhaseField:
    """(S F)(x, xi) = F(x / sqrt(2), -xi / sqrt(2)) on the target grid"""
    s = 1.0 / math.sqrt(2.0)
    return PhaseField(target, _resample(F, target, s, -s), _convention_of(F))


def dilation_S_inverse(F: PhaseSource, target: PhaseGrid) -> PhaseField:
    """(S^{-1} F)(x, xi) = F(sqrt(2) x, -sqrt(2) xi)"""
    s = math.sqrt(2.0)
    return PhaseField(target, _resample(F, target, s, -s), _convention_of(F))


def operator_U_V(F: PhaseSource, target: PhaseGrid) -> PhaseField:
    """
    (U_V F)(x, xi) = e^{(|x|^2+|xi|^2)/2} e^{-i<x,xi>} F(sqrt(2) x, -sqrt(2) xi)

    Maps V_phi f to V f, sampled at z = x + i xi.

    Raises:
        OutOfDomainError: F is a field and the target needs points outside it
    """
    x, xi = target.mesh()
    factor = np.exp(0.5 * target.radius_squared() - 1j * sum(a * b for a, b in zip(x, xi)))
    s = math.sqrt(2.0)
    return PhaseField(target, factor * _resample(F, target, s, -s), Convention.FOCK_PLANE)


def operator_U_V_inverse(G: PhaseSource, target: PhaseGrid) -> PhaseField:
    """(U_V^{-1} G)(x, xi) = e^{-(|x|^2+|xi|^2)/4} e^{-i<x,xi>/2} G(x / sqrt(2), -xi / sqrt(2))"""
    x, xi = target.mesh()
    factor = np.exp(-0.25 * target.radius_squared() - 0.5j * sum(a * b for a, b in zip(x, xi)))
    s = 1.0 / math.sqrt(2.0)
    return PhaseField(target, factor * _resample(G, target, s, -s), Convention.STFT_PLAIN)


def cauchy_riemann_residual(F: SampledFock) -> float:
    """
    max |i dF/dx - dF/dy| / max |F| over interior nodes, fourth-order differences.

    Vanishes (up to rounding and O(h^4)) for entire F.
    """
    values = F.field.values
    d = F.dim
    residual = np.zeros(values.shape)
    for j in range(d):
        residual += np.abs(1j * _derivative(values, F.grid.axes[j].spacing, j)
                           - _derivative(values, F.grid.axes[d + j].spacing, d + j))
    interior = tuple(slice(2, -2) for _ in range(values.ndim))
    scale = np.abs(values).max()
    if scale == 0:
        return 0.0
    return float(residual[interior].max() / scale)


def _derivative(values: np.ndarray, h: float, axis: int) -> np.ndarray:
    ahead2, ahead1 = np.roll(values, -2, axis), np.roll(values, -1, axis)
    behind1, behind2 = np.roll(values, 1, axis), np.roll(values, 2, axis)
    return (-ahead2 + 8 * ahead1 - 8 * behind1 + behind2) / (12 * h)
