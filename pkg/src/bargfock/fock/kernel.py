"""
The Fock space A^2: inner product, reproducing kernel and Bargmann-Toeplitz operators.

All integrals are against d mu(w) = pi^{-d} e^{-|w|^2} d lambda(w). Samples
are integrated by the trapezoid rule on a plane grid whose axes are
(Re w, Im w); callables may instead be integrated by a product Gauss-Hermite
rule (gauss_hermite_plane), which is exact for polynomial integrands.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from bargfock.bargmann import (
    FockFunction,
    SampledFock,
    TaylorCoeffs,
    as_fock_points,
    dilation_S_inverse,
    fock_plane_grid,
    hermitian_dot,
    monomial_table,
)
from bargfock.errors import InvalidArgumentError
from bargfock.grid import PhaseGrid, gauss_hermite_rule
from bargfock.hermite import multi_indices
from bargfock.stft import Convention, PhaseField

logger = logging.getLogger(__name__)

# kernel entries held at once in reproducing_apply
BLOCK_ENTRIES = 2 ** 21
# Gauss-Hermite nodes per real coordinate of a plane rule
PLANE_RULE_ORDER = {1: 48, 2: 16}

PlaneFunction = Union[FockFunction, PhaseField, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True, eq=False)
class PlaneRule:
    """Quadrature against d mu: nodes w of shape (m, d) and their weights"""
    points: np.ndarray
    weights: np.ndarray

    @property
    def dim(self) -> int:
        return self.points.shape[-1]

    def __len__(self) -> int:
        return len(self.weights)


def plane_points(grid: PhaseGrid) -> np.ndarray:
    """w = x + i xi at every node, shape (*grid.shape, d)"""
    x, xi = grid.mesh()
    return np.stack([a + 1j * b for a, b in zip(x, xi)], axis=-1)


def gaussian_measure(grid: PhaseGrid) -> np.ndarray:
    """Quadrature weights of d mu on the grid"""
    return np.pi ** (-grid.dim) * np.exp(-grid.radius_squared()) * grid.weights


def grid_rule(grid: PhaseGrid) -> PlaneRule:
    """The trapezoid rule of a plane grid, weighted by d mu"""
    return PlaneRule(plane_points(grid).reshape(-1, grid.dim), gaussian_measure(grid).ravel())


def gauss_hermite_plane(dim: int, order: int | None = None) -> PlaneRule:
    """
    Product Gauss-Hermite rule for d mu on C^d = R^{2d}.

    Exact for polynomials in (Re w, Im w) of degree <= 2 order - 1 in each
    coordinate; the weights sum to 1.

    Raises:
        InvalidArgumentError: dim other than 1 or 2, or an order outside [1, 256]
    """
    if dim not in PLANE_RULE_ORDER:
        raise InvalidArgumentError(f"dimension must be 1 or 2, got {dim}")
    rule = gauss_hermite_rule(order or PLANE_RULE_ORDER[dim])
    coords = np.meshgrid(*([rule.nodes] * (2 * dim)), indexing="ij")
    weights = np.ones(())
    for _ in range(2 * dim):
        weights = np.multiply.outer(weights, rule.weights)
    points = np.stack([coords[j] + 1j * coords[dim + j] for j in range(dim)], axis=-1)
    return PlaneRule(points.reshape(-1, dim), np.pi ** (-dim) * weights.ravel())


def plane_samples(F: PlaneFunction, grid: PhaseGrid | None = None) -> tuple[PhaseGrid, np.ndarray]:
    """
    Samples of a function on the plane.

    Fields and sampled Fock functions keep their own grid unless another is
    requested; Taylor polynomials and callables are evaluated exactly on grid
    (default: the Fock-plane grid). Callables receive points of shape (..., d).
    """
    if isinstance(F, PhaseField):
        if grid is None or grid == F.grid:
            return F.grid, F.values
        raise InvalidArgumentError("a sampled field can only be used on its own grid")
    if isinstance(F, SampledFock):
        if grid is None or grid == F.grid:
            return F.grid, F.field.values
        return grid, F.evaluate(plane_points(grid))
    if isinstance(F, TaylorCoeffs):
        grid = grid or fock_plane_grid(F.dim)
        return grid, F.evaluate(plane_points(grid))
    if callable(F):
        if grid is None:
            raise InvalidArgumentError("a grid is required to sample a callable")
        return grid, np.broadcast_to(np.asarray(F(plane_points(grid)), dtype=complex), grid.shape)
    raise InvalidArgumentError(f"cannot sample {type(F).__name__} on the plane")


def rule_samples(F: PlaneFunction, quadrature: "PhaseGrid | PlaneRule | None" = None) -> tuple[PlaneRule, np.ndarray]:
    """F at the nodes of a plane rule, flattened; grids become their trapezoid rule"""
    if not isinstance(quadrature, PlaneRule):
        grid, values = plane_samples(F, quadrature)
        return grid_rule(grid), np.asarray(values).ravel()
    w = quadrature.points
    if isinstance(F, (TaylorCoeffs, SampledFock)):
        return quadrature, np.asarray(F.evaluate(w), dtype=complex)
    if isinstance(F, PhaseField):
        raise InvalidArgumentError("a sampled field can only be used on its own grid")
    if callable(F):
        return quadrature, np.broadcast_to(np.asarray(F(w), dtype=complex), w.shape[:-1])
    raise InvalidArgumentError(f"cannot sample {type(F).__name__} on the plane")


def a2_inner(F: FockFunction, G: FockFunction, grid: "PhaseGrid | PlaneRule | None" = None) -> complex:
    """
    (F, G)_{A^2} = integral F conj(G) d mu.

    Two Taylor polynomials pair exactly: sum a_alpha conj(b_alpha), since the
    normalized monomials are orthonormal. Anything else goes through quadrature.
    """
    if isinstance(F, TaylorCoeffs) and isinstance(G, TaylorCoeffs):
        if F.dim != G.dim:
            raise InvalidArgumentError(f"dimensions differ: {F.dim} and {G.dim}")
        return complex(sum(a * np.conj(G.coefficient(alpha)) for alpha, a in F.items()))
    if grid is None:
        grid = next((H.grid for H in (F, G) if isinstance(H, SampledFock)), None)
    if isinstance(grid, PlaneRule):
        rule, f_values = rule_samples(F, grid)
        _, g_values = rule_samples(G, rule)
    else:
        grid, f_values = plane_samples(F, grid)
        _, g_values = plane_samples(G, grid)
        rule = grid_rule(grid)
    return complex(np.sum(np.ravel(f_values) * np.conj(np.ravel(g_values)) * rule.weights))


def reproducing_apply(F: PlaneFunction, z, grid: "PhaseGrid | PlaneRule | None" = None) -> np.ndarray | complex:
    """
    (Pi_A F)(z) = integral e^{(z, w)} F(w) d mu(w), (z, w) Hermitian.

    Reproduces entire F and annihilates functions orthogonal to A^2, such as conj(w).

    Args:
        F: function on the plane; need not be entire
        z: evaluation points, shape (..., d) or scalars at d = 1
        grid: plane grid or rule, required for callables; gauss_hermite_plane(d)
            integrates polynomial callables exactly
    """
    rule, values = rule_samples(F, grid)
    scalar = np.ndim(z) == 0
    points = as_fock_points(z, rule.dim)
    flat = points.reshape(-1, rule.dim)
    weighted = values * rule.weights

    rows = max(1, BLOCK_ENTRIES // len(rule))
    out = np.empty(len(flat), dtype=complex)
    for start in range(0, len(flat), rows):
        block = flat[start:start + rows]
        kernel = np.exp(hermitian_dot(block[:, None, :], rule.points[None, :, :]))
        out[start:start + rows] = kernel @ weighted
    if scalar:
        return complex(out[0])
    return out.reshape(points.shape[:-1])


def reproducing_field(F: PlaneFunction, grid: PhaseGrid | None = None) -> SampledFock:
    """Pi_A F at every node of the quadrature grid; costs (grid size)^2 kernel evaluations"""
    grid, values = plane_samples(F, grid)
    projected = reproducing_apply(PhaseField(grid, values, Convention.FOCK_PLANE), plane_points(grid))
    return SampledFock(PhaseField(grid, projected, Convention.FOCK_PLANE))


def _symbol_at(a: Callable[..., np.ndarray], w: np.ndarray) -> np.ndarray:
    """(S^{-1} a)(w) = a(sqrt(2) Re w, -sqrt(2) Im w) at points of shape (m, d)"""
    s = math.sqrt(2.0)
    coords = [s * w[:, j].real for j in range(w.shape[1])] + [-s * w[:, j].imag for j in range(w.shape[1])]
    return np.broadcast_to(np.asarray(a(*coords)), w.shape[:1])


def bargmann_toeplitz(
    a: "PhaseField | Callable[..., np.ndarray]",
    F: FockFunction,
    degree: int | None = None,
    grid: PhaseGrid | None = None,
) -> TaylorCoeffs:
    """
    T_V(a) F = Pi_A((S^{-1} a) F), returned as Taylor coefficients

        b_alpha = integral conj(w^alpha / sqrt(alpha!)) (S^{-1} a)(w) F(w) d mu(w)

    A callable symbol acting on Taylor coefficients is integrated with
    gauss_hermite_plane unless a grid is given; everything else uses the
    trapezoid rule of grid (default: the Fock-plane grid, or F's own grid).

    Args:
        a: symbol on R^{2d}, a field or a callable a(x_1.., xi_1..)
        F: Fock function
        degree: largest output degree, default deg F + 8 (or 16 for sampled F)
        grid: plane quadrature grid

    Raises:
        OutOfDomainError: a field symbol does not reach the sqrt(2)-inflated grid
    """
    if degree is None:
        degree = F.max_degree + 8 if isinstance(F, TaylorCoeffs) else 16
    if grid is None and isinstance(F, TaylorCoeffs) and callable(a) and not isinstance(a, PhaseField):
        rule = gauss_hermite_plane(F.dim)
        symbol = _symbol_at(a, rule.points)
        values = np.asarray(F.evaluate(rule.points))
    else:
        grid = grid or (F.grid if isinstance(F, SampledFock) else fock_plane_grid(F.dim))
        symbol = dilation_S_inverse(a, grid).values.ravel()
        rule, values = rule_samples(F, grid)
    integrand = symbol * values * rule.weights

    d = rule.dim
    tables = [np.conj(monomial_table(degree, rule.points[:, j])) for j in range(d)]
    if d == 1:
        dense = tables[0] @ integrand
    else:
        dense = (tables[0] * integrand) @ tables[1].T
    coeffs = {alpha: dense[alpha.entries] for alpha in multi_indices(d, degree)}
    logger.debug("Bargmann-Toeplitz: %d coefficients up to degree %d on %d nodes", len(coeffs), degree, len(rule))
    return TaylorCoeffs(d, degree, coeffs)


def a2_norm(F: FockFunction, grid: "PhaseGrid | PlaneRule | None" = None) -> float:
    return math.sqrt(max(a2_inner(F, F, grid).real, 0.0))
