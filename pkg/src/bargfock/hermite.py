"""
Hermite functions, Hermite expansions and the shifted harmonic oscillator.

The oscillator is H = |x|^2 - Delta + 4d + 1. Hermite functions h_alpha are
its eigenfunctions; expansions f = sum a_alpha h_alpha are stored by
coefficient so powers of H act diagonally.
"""
import itertools
import math
from dataclasses import dataclass
from functools import total_ordering
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from bargfock.errors import InvalidArgumentError, PreconditionViolation
from bargfock.grid import AxisGrid, Signal, apply_axis_matrices

MAX_HERMITE_DEGREE = 512
# hermite_table divides its running rows by this once they grow past it
RESCALE = 1e150


@total_ordering
@dataclass(frozen=True)
class MultiIndex:
    """alpha in N^d, ordered graded-lexicographically"""
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(k) for k in self.entries)
        if not entries or any(k < 0 for k in entries):
            raise InvalidArgumentError(f"multi-index entries must be non-negative, got {self.entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        return cls(tuple(entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        """|alpha|"""
        return sum(self.entries)

    @property
    def factorial(self) -> float:
        """alpha! = prod alpha_j!"""
        return float(math.prod(math.factorial(k) for k in self.entries))

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, self.entries)

    def __lt__(self, other: "MultiIndex") -> bool:
        if not isinstance(other, MultiIndex):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"MultiIndex{self.entries}"


def as_multi_index(alpha: "MultiIndex | int | Sequence[int]") -> MultiIndex:
    if isinstance(alpha, MultiIndex):
        return alpha
    if isinstance(alpha, (int, np.integer)):
        return MultiIndex((int(alpha),))
    return MultiIndex(tuple(alpha))


def multi_indices(dim: int, max_degree: int) -> Iterator[MultiIndex]:
    """All alpha in N^dim with |alpha| <= max_degree, graded-lex order"""
    candidates = (
        MultiIndex(entries)
        for entries in itertools.product(range(max_degree + 1), repeat=dim)
        if sum(entries) <= max_degree
    )
    yield from sorted(candidates)


def hermite_table(n_max: int, x: np.ndarray) -> np.ndarray:
    """
    h_0(x), ..., h_{n_max}(x) by the normalized three-term recurrence.

    The recurrence runs on h_l(x) e^{x^2/2}, rescaled whenever it passes
    RESCALE, and the Gaussian factor is applied last in log space. Far in the
    tail, where e^{-x^2/2} alone would underflow (|x| > 37.6), the higher
    degrees keep full relative precision; only values genuinely below the
    double range come out subnormal or 0.

    Returns:
        array of shape (n_max + 1, *x.shape)
    """
    if n_max > MAX_HERMITE_DEGREE:
        raise InvalidArgumentError(f"Hermite degree {n_max} exceeds {MAX_HERMITE_DEGREE}")
    shape = np.shape(x)
    x = np.asarray(x, dtype=float).ravel()
    scaled = np.zeros((n_max + 1,) + x.shape)
    log_scale = np.zeros((n_max + 1,) + x.shape)
    current = np.zeros(x.shape)
    before = np.zeros(x.shape)
    prev = np.full(x.shape, np.pi ** (-0.25))
    scaled[0] = prev
    for l in range(1, n_max + 1):
        nxt = np.sqrt(2.0 / l) * x * prev - np.sqrt((l - 1) / l) * before
        big = np.abs(nxt) > RESCALE
        if big.any():
            nxt[big] /= RESCALE
            prev[big] /= RESCALE
            current[big] += math.log(RESCALE)
        scaled[l] = nxt
        log_scale[l] = current
        before, prev = prev, nxt
    return (scaled * np.exp(log_scale - x ** 2 / 2.0)).reshape((n_max + 1,) + shape)


def hermite_eval(alpha: "MultiIndex | int | Sequence[int]", x) -> np.ndarray | float:
    """
    L^2-normalized Hermite function h_alpha at a point (or an array of points).

    Args:
        alpha: multi-index, entries <= 512
        x: point in R^d, or array of shape (..., d); scalars allowed for d = 1
    """
    alpha = as_multi_index(alpha)
    points = np.asarray(x, dtype=float)
    if alpha.dim == 1 and (points.ndim == 0 or points.shape[-1] != 1):
        points = points[..., None]
    if points.shape[-1] != alpha.dim:
        raise InvalidArgumentError(f"point dimension {points.shape[-1]} != multi-index dimension {alpha.dim}")
    value = np.ones(points.shape[:-1])
    for j, k in enumerate(alpha.entries):
        value = value * hermite_table(k, points[..., j])[k]
    return float(value) if value.ndim == 0 else value


def rodrigues_hermite(n: int, x) -> np.ndarray:
    """
    h_n(x) from the Rodrigues formula (oracle for degree <= 5).

    Differentiates e^{-x^2} symbolically as p(x) e^{-x^2}, p' - 2xp per step.
    """
    if not 0 <= n <= 5:
        raise InvalidArgumentError(f"Rodrigues oracle is limited to degree <= 5, got {n}")
    p = Polynomial([1.0])
    for _ in range(n):
        p = p.deriv() - Polynomial([0.0, 2.0]) * p
    x = np.asarray(x, dtype=float)
    scale = np.pi ** (-0.25) * (-1) ** n / math.sqrt(2 ** n * math.factorial(n))
    return scale * p(x) * np.exp(-x ** 2 / 2.0)


@dataclass(frozen=True, eq=False)
class CoefficientMap:
    """Degree-bounded map alpha -> complex coefficient, kept in graded-lex order"""
    dim: int
    max_degree: int
    coeffs: Mapping[MultiIndex, complex]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise InvalidArgumentError(f"dimension must be 1 or 2, got {self.dim}")
        if self.max_degree < 0:
            raise InvalidArgumentError(f"max_degree must be >= 0, got {self.max_degree}")
        coeffs = {}
        for alpha, value in self.coeffs.items():
            alpha = as_multi_index(alpha)
            if alpha.dim != self.dim:
                raise InvalidArgumentError(f"{alpha} does not live in dimension {self.dim}")
            if alpha.order > self.max_degree:
                raise InvalidArgumentError(f"{alpha} exceeds max_degree {self.max_degree}")
            coeffs[alpha] = complex(value)
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(coeffs.items()))))

    @classmethod
    def from_dense(cls, dense: np.ndarray, max_degree: int):
        """Keep entries of a coefficient tensor with |alpha| <= max_degree"""
        dim = dense.ndim
        coeffs = {
            alpha: dense[alpha.entries]
            for alpha in multi_indices(dim, max_degree)
            if all(k < dense.shape[j] for j, k in enumerate(alpha.entries))
        }
        return cls(dim, max_degree, coeffs)

    def items(self) -> list[tuple[MultiIndex, complex]]:
        """Coefficients in graded-lex order"""
        return list(self.coeffs.items())

    def coefficient(self, alpha) -> complex:
        return self.coeffs.get(as_multi_index(alpha), 0j)

    def to_dense(self) -> np.ndarray:
        """Coefficient tensor of shape (max_degree + 1,) * dim"""
        dense = np.zeros((self.max_degree + 1,) * self.dim, dtype=complex)
        for alpha, value in self.coeffs.items():
            dense[alpha.entries] = value
        return dense

    def l2_norm(self) -> float:
        return float(np.sqrt(sum(abs(v) ** 2 for v in self.coeffs.values())))

    def map_coefficients(self, fn):
        """Same kind of map with a_alpha replaced by fn(alpha, a_alpha)"""
        return type(self)(self.dim, self.max_degree, {a: fn(a, v) for a, v in self.coeffs.items()})


class HermiteExpansion(CoefficientMap):
    """Finite expansion f = sum a_alpha h_alpha with |alpha| <= max_degree"""


def required_half_width(max_degree: int) -> float:
    """Smallest half width keeping h_alpha, |alpha| <= max_degree, inside the grid"""
    return math.sqrt(2.0 * max_degree) + 4.0


def hermite_expand(f: Signal, max_degree: int) -> HermiteExpansion:
    """
    a_alpha = (f, h_alpha)_{L^2} by trapezoid quadrature.

    Raises:
        PreconditionViolation: an axis is too narrow for degree max_degree
    """
    needed = required_half_width(max_degree)
    for j, axis in enumerate(f.axes):
        if axis.half_width < needed:
            raise PreconditionViolation(
                f"axis {j} has half_width {axis.half_width:g}, degree {max_degree} "
                f"needs at least {needed:.3f} (sqrt(2N) + 4)"
            )
    tables = [hermite_table(max_degree, axis.nodes) * axis.weights for axis in f.axes]
    dense = apply_axis_matrices(f.values, tables)
    return HermiteExpansion.from_dense(dense, max_degree)


def hermite_synthesize(e: HermiteExpansion, axes: Sequence[AxisGrid]) -> Signal:
    """Samples of sum a_alpha h_alpha on the given axes"""
    axes = tuple(axes)
    if len(axes) != e.dim:
        raise InvalidArgumentError(f"expansion has dimension {e.dim}, grid has {len(axes)}")
    tables = [hermite_table(e.max_degree, axis.nodes).T for axis in axes]
    return Signal(axes, apply_axis_matrices(e.to_dense(), tables))


def oscillator_eigenvalue(alpha, d: int) -> float:
    """
    Eigenvalue of H = |x|^2 - Delta + 4d + 1 on h_alpha: 2|alpha| + 5d + 1.

    Equals 2(|alpha| + 2d + 1) only at d = 1.
    """
    return 2.0 * as_multi_index(alpha).order + 5.0 * d + 1.0


def anti_wick_eigenvalue(alpha, d: int) -> float:
    """Eigenvalue of the Toeplitz operator with symbol 1 + |x|^2 + |xi|^2 on h_alpha"""
    return 2.0 * as_multi_index(alpha).order + 2.0 * d + 1.0


def apply_H_power(e: HermiteExpansion, N: int) -> HermiteExpansion:
    """H^N on the Hermite basis: a_alpha -> lambda_alpha^N a_alpha (N may be negative)"""
    return e.map_coefficients(lambda alpha, a: oscillator_eigenvalue(alpha, e.dim) ** N * a)


def m2_2N_norm(e: HermiteExpansion, N: int) -> float:
    """||H^N f||_{L^2} = (sum lambda_alpha^{2N} |a_alpha|^2)^{1/2}"""
    return float(np.sqrt(sum(
        oscillator_eigenvalue(alpha, e.dim) ** (2 * N) * abs(a) ** 2 for alpha, a in e.items()
    )))


def _laplacian(f: Signal, method: str) -> np.ndarray:
    out = np.zeros_like(f.values)
    for j, axis in enumerate(f.axes):
        if method == "spectral":
            k = 2 * np.pi * np.fft.fftfreq(axis.n, d=axis.spacing)
            shape = [1] * f.dim
            shape[j] = axis.n
            out += np.fft.ifft(-(k.reshape(shape) ** 2) * np.fft.fft(f.values, axis=j), axis=j)
        elif method == "central":
            padded = np.pad(f.values, [(1, 1) if i == j else (0, 0) for i in range(f.dim)])
            ahead = np.take(padded, np.arange(2, axis.n + 2), axis=j)
            behind = np.take(padded, np.arange(0, axis.n), axis=j)
            out += (ahead - 2 * f.values + behind) / axis.spacing ** 2
        else:
            raise InvalidArgumentError(f"unknown Laplacian method {method!r}")
    return out


def apply_oscillator_on_grid(f: Signal, method: str = "spectral") -> Signal:
    """
    H f on the grid, with Delta by FFT ('spectral') or second differences ('central').

    Samples outside the grid are treated as 0 (central) or periodic (spectral);
    both are exact only for functions negligible at the boundary.
    """
    radius_squared = sum(g ** 2 for g in f.mesh())
    values = radius_squared * f.values - _laplacian(f, method) + (4 * f.dim + 1) * f.values
    return f.with_values(values)


def random_expansion(rng: np.random.Generator, dim: int, max_degree: int) -> HermiteExpansion:
    """Complex Gaussian coefficients on every |alpha| <= max_degree, unit l^2 norm"""
    alphas = list(multi_indices(dim, max_degree))
    raw = rng.standard_normal(len(alphas)) + 1j * rng.standard_normal(len(alphas))
    raw /= np.linalg.norm(raw)
    return HermiteExpansion(dim, max_degree, dict(zip(alphas, raw)))
