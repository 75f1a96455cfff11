"""
Narrow convergence of Fock functions.

F_j -> F narrowly when F_j -> F pointwise and the row profiles

    H_j(xi) = ( integral |F_j(x + i xi) e^{-|z|^2/2} (S^{-1} omega)(z)|^p dx )^{1/p}

converge to H in L^q. Polynomials are dense in A^{inf,1}(omega) in this sense.
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from bargfock.bargmann import FockFunction, dilation_S_inverse, fock_plane_grid
from bargfock.errors import InvalidArgumentError
from bargfock.fock.kernel import plane_points, plane_samples
from bargfock.fock.weights import WeightSpec
from bargfock.grid import PhaseGrid, axes_weights

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NarrowProfile:
    """H(xi) sampled on the imaginary axes of a plane grid"""
    grid: PhaseGrid
    values: np.ndarray
    p: float

    def distance(self, other: "NarrowProfile", q: float = 1.0) -> float:
        """||H - H'||_{L^q} over xi"""
        if self.grid != other.grid:
            raise InvalidArgumentError("profiles live on different grids")
        diff = np.abs(self.values - other.values)
        if math.isinf(q):
            return float(diff.max())
        return float(np.sum(diff ** q * axes_weights(self.grid.xi_axes)) ** (1.0 / q))


def narrow_profile(
    F: FockFunction,
    w: WeightSpec | None = None,
    p: float = 1.0,
    grid: PhaseGrid | None = None,
) -> NarrowProfile:
    """
    One inner L^p norm over x per row xi.

    S^{-1} omega is evaluated in closed form for sigma weights and by
    interpolation for tabulated ones.
    """
    if not p >= 1.0:
        raise InvalidArgumentError(f"p must lie in [1, inf], got {p}")
    grid = grid or fock_plane_grid(F.dim)
    _, values = plane_samples(F, grid)
    magnitude = np.abs(values) * np.exp(-0.5 * grid.radius_squared())
    if w is not None:
        source = w.table if w.table is not None else w.at
        magnitude = magnitude * dilation_S_inverse(source, grid).values.real
    d = grid.dim
    x_idx = tuple(range(d))
    if math.isinf(p):
        profile = magnitude.max(axis=x_idx)
    else:
        x_weights = axes_weights(grid.x_axes).reshape(tuple(a.n for a in grid.x_axes) + (1,) * d)
        profile = np.sum(magnitude ** p * x_weights, axis=x_idx) ** (1.0 / p)
    return NarrowProfile(grid, profile, float(p))


@dataclass(frozen=True)
class NarrowReport:
    profile_distances: tuple[float, ...]
    pointwise_errors: tuple[float, ...]

    def decreasing_from(self, start: int) -> bool:
        tail = self.profile_distances[start:]
        return all(b < a for a, b in zip(tail, tail[1:]))


def narrow_convergence_check(
    sequence: Sequence[FockFunction],
    limit: FockFunction,
    w: WeightSpec | None = None,
    p: float = 1.0,
    q: float = 1.0,
    points=None,
    grid: PhaseGrid | None = None,
) -> NarrowReport:
    """
    ||H_j - H||_{L^q} and max |F_j - F| at the given points for every F_j.

    Quadrature error and the distance to the limit are not separated: both
    profiles are computed on the same grid.
    """
    grid = grid or fock_plane_grid(limit.dim)
    target = narrow_profile(limit, w, p, grid)
    if points is None:
        points = plane_points(grid)[tuple(slice(None, None, max(1, axis.n // 8)) for axis in grid.axes)]
    reference = np.asarray(limit.evaluate(points))
    distances, errors = [], []
    for F in sequence:
        distances.append(narrow_profile(F, w, p, grid).distance(target, q))
        errors.append(float(np.max(np.abs(np.asarray(F.evaluate(points)) - reference))))
    logger.debug("narrow distances %s", distances)
    return NarrowReport(tuple(distances), tuple(errors))
