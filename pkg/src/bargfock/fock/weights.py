"""
Moderate weights on phase space.

sigma_s(X) = (1 + |X|^2)^{s/2} is sigma_{|s|}-moderate with constant
2^{|s|/2} (Peetre's inequality). Tabulated weights come with a
caller-supplied moderateness order.
"""
import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from bargfock.errors import InvalidArgumentError
from bargfock.grid import PhaseGrid
from bargfock.stft import Convention, PhaseField


class WeightKind(str, Enum):
    POLYNOMIAL_SIGMA = "sigma"
    TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class WeightSpec:
    """A positive weight omega on R^{2d}"""
    kind: WeightKind
    s: float = 0.0
    table: PhaseField | None = None
    order: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", WeightKind(self.kind))
        if self.kind == WeightKind.TABULATED:
            if self.table is None:
                raise InvalidArgumentError("a tabulated weight needs a table")
            values = self.table.values
            if np.any(np.abs(values.imag) > 0) or not np.all(values.real > 0):
                raise InvalidArgumentError("tabulated weights must be real and strictly positive")

    @property
    def moderate_order(self) -> float | None:
        """t such that omega is sigma_t-moderate, when known"""
        if self.kind == WeightKind.POLYNOMIAL_SIGMA:
            return abs(self.s)
        return self.order

    @property
    def moderate_constant(self) -> float | None:
        if self.kind == WeightKind.POLYNOMIAL_SIGMA:
            return 2.0 ** (abs(self.s) / 2.0)
        return None

    @property
    def label(self) -> str:
        if self.kind == WeightKind.POLYNOMIAL_SIGMA:
            return f"sigma_{self.s:g}"
        return "tabulated"

    def at(self, *coords: np.ndarray) -> np.ndarray:
        """omega at phase-space points given as (x_1.., xi_1..) coordinate arrays"""
        if self.kind == WeightKind.POLYNOMIAL_SIGMA:
            return sigma_values(self.s, sum(np.asarray(c, dtype=float) ** 2 for c in coords))
        return self.table.sample(*coords).real

    def evaluate(self, grid: PhaseGrid) -> np.ndarray:
        """omega at every node of grid"""
        if self.kind == WeightKind.TABULATED and self.table.grid == grid:
            return self.table.values.real
        x, xi = grid.mesh()
        return np.broadcast_to(self.at(*x, *xi), grid.shape)

    def reciprocal(self) -> "WeightSpec":
        """1 / omega, the weight of the dual space"""
        if self.kind == WeightKind.POLYNOMIAL_SIGMA:
            return WeightSpec(WeightKind.POLYNOMIAL_SIGMA, -self.s)
        return WeightSpec(WeightKind.TABULATED, table=self.table.with_values(1.0 / self.table.values), order=self.order)


def sigma_values(s: float, radius_squared: np.ndarray) -> np.ndarray:
    return (1.0 + radius_squared) ** (s / 2.0)


def sigma(s: float) -> WeightSpec:
    return WeightSpec(WeightKind.POLYNOMIAL_SIGMA, float(s))


def unit_weight() -> WeightSpec:
    return sigma(0.0)


def tabulated_weight(table: PhaseField, order: float | None = None) -> WeightSpec:
    return WeightSpec(WeightKind.TABULATED, table=table, order=order)


def sigma_symbol(grid: PhaseGrid, s: float) -> PhaseField:
    """sigma_s sampled as a symbol; s = 2 gives 1 + |x|^2 + |xi|^2"""
    return PhaseField(grid, sigma_values(s, grid.radius_squared()), Convention.SYMBOL)


@dataclass(frozen=True)
class ModeratenessReport:
    pairs: int
    worst_ratio: float
    constant: float

    @property
    def holds(self) -> bool:
        return self.worst_ratio <= self.constant * (1.0 + 1e-12)


def moderateness_check(weight: WeightSpec, grid: PhaseGrid, constant: float | None = None) -> ModeratenessReport:
    """
    Worst omega(X + Y) / (omega(X) sigma_t(Y)) over all node pairs of grid.

    Polynomial weights are evaluated at X + Y directly; tabulated weights only
    at pairs whose sum is again a node.
    """
    t = weight.moderate_order
    if t is None:
        raise InvalidArgumentError("weight has no moderateness order to check against")
    constant = constant if constant is not None else weight.moderate_constant
    if constant is None:
        raise InvalidArgumentError("a constant is required for tabulated weights")

    x, xi = grid.mesh()
    points = np.stack([c.ravel() for c in (*x, *xi)], axis=1)
    omega = weight.evaluate(grid).ravel()
    envelope = sigma_values(t, np.sum(points ** 2, axis=1))

    if weight.kind == WeightKind.POLYNOMIAL_SIGMA:
        sums = points[:, None, :] + points[None, :, :]
        top = weight.at(*np.moveaxis(sums, -1, 0))
        ratio = top / (omega[:, None] * envelope[None, :])
        return ModeratenessReport(ratio.size, float(ratio.max()), constant)

    worst, pairs = 0.0, 0
    shape = grid.shape
    centers = np.array([axis.center for axis in grid.axes])
    flat_index = np.array(np.unravel_index(np.arange(grid.size), shape)).T - centers
    table = weight.evaluate(grid)
    for i, j in itertools.product(range(grid.size), repeat=2):
        target = flat_index[i] + flat_index[j] + centers
        if np.any(target < 0) or np.any(target >= shape):
            continue
        pairs += 1
        worst = max(worst, table[tuple(target)] / (omega[i] * envelope[j]))
    return ModeratenessReport(pairs, worst, constant)
