"""
Weighted mixed norms on phase space and the Fock norms built from them.

For a weight omega and exponents (p, q):

    x-first  (L^{p,q}):   ( integral ( integral |F omega|^p dx )^{q/p} dxi )^{1/q}
    xi-first (L^{p,q}_*): ( integral ( integral |F omega|^q dxi )^{p/q} dx )^{1/p}

Infinite exponents are grid maxima.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from bargfock.bargmann import FockFunction, SampledFock, TaylorCoeffs
from bargfock.config import (
    DEFAULT_HALF_WIDTH,
    DEFAULT_N_1D,
    DEFAULT_PHASE_N_2D,
    EQUIVALENCE_HALF_WIDTH,
    EQUIVALENCE_N,
)
from bargfock.errors import InvalidArgumentError, NumericalOverflowError
from bargfock.fock.kernel import a2_inner, plane_samples
from bargfock.fock.weights import WeightSpec, sigma, unit_weight
from bargfock.grid import PhaseGrid, Signal, axes_weights, make_phase_grid
from bargfock.stft import Convention, PhaseField, Window, gaussian_window, stft

logger = logging.getLogger(__name__)

# (F, G)_{A^2} = (2 pi)^{-d} (V f, V g)_{L^2(R^{2d})} under the package's STFT convention
DUALITY_KAPPA = {1: (2 * np.pi) ** -1, 2: (2 * np.pi) ** -2}


class MixedNormVariant(str, Enum):
    XFIRST = "x-first"
    XIFIRST = "xi-first"


def conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class MixedNormSpec:
    """Exponents (p, q) in [1, inf] and the integration order"""
    p: float = 2.0
    q: float = 2.0
    variant: MixedNormVariant = MixedNormVariant.XFIRST

    def __post_init__(self):
        for name in ("p", "q"):
            value = float(getattr(self, name))
            if not value >= 1.0:
                raise InvalidArgumentError(f"exponent {name} must lie in [1, inf], got {value}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "variant", MixedNormVariant(self.variant))

    def conjugate(self) -> "MixedNormSpec":
        return MixedNormSpec(conjugate_exponent(self.p), conjugate_exponent(self.q), self.variant)

    @property
    def label(self) -> str:
        return f"L^{{{self.p:g},{self.q:g}}}" + ("_*" if self.variant == MixedNormVariant.XIFIRST else "")


def norm_phase_grid(dim: int, half_width: float = DEFAULT_HALF_WIDTH) -> PhaseGrid:
    """Default phase grid for norms: 257 nodes per axis at d = 1, 33 at d = 2"""
    return make_phase_grid(dim, half_width, DEFAULT_N_1D if dim == 1 else DEFAULT_PHASE_N_2D)


def _lp(values: np.ndarray, weights: np.ndarray, axes: tuple[int, ...], p: float) -> np.ndarray:
    if math.isinf(p):
        return values.max(axis=axes)
    return np.sum(values ** p * weights, axis=axes) ** (1.0 / p)


def mixed_norm(F: PhaseField, spec: MixedNormSpec | None = None, w: WeightSpec | None = None) -> float:
    """
    ||F omega||_{L^{p,q}} (x-first) or ||F omega||_{L^{p,q}_*} (xi-first) by trapezoid sums.

    The weight is applied pointwise before any integration.
    """
    spec = spec or MixedNormSpec()
    grid = F.grid
    d = grid.dim
    magnitude = np.abs(F.values)
    if w is not None:
        magnitude = magnitude * w.evaluate(grid)
    x_weights = axes_weights(grid.x_axes)
    xi_weights = axes_weights(grid.xi_axes)
    x_idx = tuple(range(d))
    xi_idx = tuple(range(d, 2 * d))

    if spec.variant == MixedNormVariant.XFIRST:
        inner = _lp(magnitude, x_weights.reshape(x_weights.shape + (1,) * d), x_idx, spec.p)
        return float(_lp(inner, xi_weights, x_idx, spec.q))
    inner = _lp(magnitude, xi_weights, xi_idx, spec.q)
    return float(_lp(inner, x_weights, x_idx, spec.p))


def modulation_norm(
    f: Signal,
    w: WeightSpec | None = None,
    spec: MixedNormSpec | None = None,
    pg: PhaseGrid | None = None,
    window: Window | None = None,
) -> float:
    """||V_phi f omega||_B with B the mixed space of spec"""
    window = window or gaussian_window(f.dim, f.axes)
    pg = pg or norm_phase_grid(f.dim)
    return mixed_norm(stft(f, window, pg), spec, w)


def dilated_damped(F: FockFunction, pg: PhaseGrid) -> PhaseField:
    """
    S(F e^{-|.|^2/2}) on pg: F((x - i xi)/sqrt(2)) e^{-(|x|^2+|xi|^2)/4}.

    Its modulus equals |V_phi f| when F = V f.
    """
    if F.dim != pg.dim:
        raise InvalidArgumentError(f"Fock function has dimension {F.dim}, grid has {pg.dim}")
    x, xi = pg.mesh()
    z = np.stack([(a - 1j * b) / math.sqrt(2.0) for a, b in zip(x, xi)], axis=-1)
    if isinstance(F, (TaylorCoeffs, SampledFock)):
        values = F.evaluate(z)
    else:
        raise InvalidArgumentError(f"not a Fock function: {type(F).__name__}")
    with np.errstate(over="ignore", invalid="ignore"):
        damped = values * np.exp(-0.25 * pg.radius_squared())
    if not np.all(np.isfinite(damped)):
        bad = np.argwhere(~np.isfinite(damped))[0]
        point = complex(z[tuple(bad)][0])
        raise NumericalOverflowError(f"Fock function overflows near z = {point}", point)
    return PhaseField(pg, damped, Convention.STFT_PLAIN)


def fock_norm(
    F: FockFunction,
    w: WeightSpec | None = None,
    spec: MixedNormSpec | None = None,
    pg: PhaseGrid | None = None,
) -> float:
    """
    ||S(F e^{-|.|^2/2}) omega||_B.

    fock_norm(V f) = modulation_norm(f) for every weight and exponent pair.

    Raises:
        NumericalOverflowError: F is too large to sample on pg
        OutOfDomainError: a sampled F does not cover pg / sqrt(2)
    """
    pg = pg or norm_phase_grid(F.dim)
    return mixed_norm(dilated_damped(F, pg), spec, w)


@dataclass(frozen=True)
class NormEquivalence:
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else math.nan


def equivalence_grid(dim: int) -> PhaseGrid:
    return make_phase_grid(dim, EQUIVALENCE_HALF_WIDTH, EQUIVALENCE_N if dim == 1 else DEFAULT_PHASE_N_2D)


def norm_equivalence_report(coeffs: TaylorCoeffs, N: int, pg: PhaseGrid | None = None) -> NormEquivalence:
    """
    Compare the weighted Fock norm with the weighted coefficient norm.

        lhs = (2 pi)^{-d/2} fock_norm(F, sigma_{2N}, p = q = 2)
        rhs = || (a_alpha <alpha>^N)_alpha ||_{l^2},  <alpha> = (1 + |alpha|^2)^{1/2}

    The (2 pi)^{-d/2} makes N = 0 exactly the Parseval ratio 1.
    """
    if coeffs.max_degree > 12:
        raise InvalidArgumentError(f"norm equivalence is certified up to degree 12, got {coeffs.max_degree}")
    pg = pg or equivalence_grid(coeffs.dim)
    lhs = fock_norm(coeffs, sigma(2 * N), MixedNormSpec(2, 2), pg) / (2 * np.pi) ** (coeffs.dim / 2)
    rhs = math.sqrt(sum(abs(a) ** 2 * (1.0 + alpha.order ** 2) ** N for alpha, a in coeffs.items()))
    return NormEquivalence(lhs, rhs)


@dataclass(frozen=True)
class HolderCheck:
    lhs: float
    rhs: float
    constant: float              # ||<.>^{-d-1}||_{L^r}, may be inf
    quadrature_constant: float   # the same norm with the grid's measure

    @property
    def holds(self) -> bool:
        """Discrete Holder: exact for the quadrature measure"""
        return self.lhs <= self.quadrature_constant * self.rhs * (1.0 + 1e-10) + 1e-300

    @property
    def holds_analytic(self) -> bool:
        return self.lhs <= self.constant * self.rhs * (1.0 + 1e-10) + 1e-300


def bracket_power_norm(dim: int, power: float, r: float) -> float:
    """||(1 + |w|^2)^{-power/2}||_{L^r(R^{2d})}, inf when divergent"""
    if math.isinf(r):
        return 1.0
    a = r * power / 2.0
    if a <= dim:
        return math.inf
    log_integral = dim * math.log(math.pi) + gammaln(a - dim) - gammaln(a)
    return math.exp(log_integral / r)


def _plain_lp(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    if math.isinf(p):
        return float(values.max())
    return float(np.sum(values ** p * weights) ** (1.0 / p))


def holder_embedding_check(
    F: FockFunction,
    N: float,
    p1: float,
    p2: float,
    grid: PhaseGrid | None = None,
) -> HolderCheck:
    """
    ||F e^{-|.|^2/2} <.>^{-N-d-1}||_{L^{p1}} <= C ||F e^{-|.|^2/2} <.>^{-N}||_{L^{p2}},
    C = ||<.>^{-d-1}||_{L^r}, 1/p2 + 1/r = 1/p1, all on C^d = R^{2d}.

    Raises:
        InvalidArgumentError: p1 > p2 or an exponent below 1
    """
    if not (1.0 <= p1 <= p2):
        raise InvalidArgumentError(f"need 1 <= p1 <= p2, got p1={p1}, p2={p2}")
    grid, values = plane_samples(F, grid)
    d = grid.dim
    bracket = np.sqrt(1.0 + grid.radius_squared())
    damped = np.abs(values) * np.exp(-0.5 * grid.radius_squared())
    weights = grid.weights

    lhs = _plain_lp(damped * bracket ** (-N - d - 1), weights, p1)
    rhs = _plain_lp(damped * bracket ** (-N), weights, p2)
    inv_r = 1.0 / p1 - (0.0 if math.isinf(p2) else 1.0 / p2)
    r = math.inf if inv_r == 0 else 1.0 / inv_r
    constant = bracket_power_norm(d, d + 1, r)
    quadrature = _plain_lp(bracket ** (-d - 1), weights, r)
    return HolderCheck(lhs, rhs, constant, quadrature)


@dataclass(frozen=True)
class DualityCheck:
    pairing: complex
    bound: float
    kappa: float

    @property
    def holds(self) -> bool:
        return abs(self.pairing) <= self.bound * (1.0 + 1e-6) + 1e-12


def duality_bound_check(
    F: FockFunction,
    G: FockFunction,
    w: WeightSpec | None = None,
    spec: MixedNormSpec | None = None,
    pg: PhaseGrid | None = None,
) -> DualityCheck:
    """|(F, G)_{A^2}| <= kappa(d) ||F||_{A^{p,q}(omega)} ||G||_{A^{p',q'}(1/omega)}"""
    w = w or unit_weight()
    spec = spec or MixedNormSpec()
    kappa = DUALITY_KAPPA[F.dim]
    pairing = a2_inner(F, G)
    bound = kappa * fock_norm(F, w, spec, pg) * fock_norm(G, w.reciprocal(), spec.conjugate(), pg)
    return DualityCheck(pairing, bound, kappa)


@dataclass(frozen=True)
class EmbeddingReport:
    constant: float
    ratios: tuple[float, ...]


def embedding_constant(
    family: Sequence[FockFunction],
    s: float,
    small: MixedNormSpec,
    large: MixedNormSpec,
    pg: PhaseGrid | None = None,
) -> EmbeddingReport:
    """
    Smallest C with fock_norm(F, sigma_{s-1}, large) <= C fock_norm(F, sigma_s, small)
    over the family; small must have p1 <= p2 and q1 <= q2.
    """
    if small.p > large.p or small.q > large.q:
        raise InvalidArgumentError("embedding needs p1 <= p2 and q1 <= q2")
    ratios = []
    for F in family:
        denominator = fock_norm(F, sigma(s), small, pg)
        if denominator == 0:
            continue
        ratios.append(fock_norm(F, sigma(s - 1), large, pg) / denominator)
    if not ratios:
        raise InvalidArgumentError("embedding constant of an all-zero family is undefined")
    logger.debug("embedding %s -> %s ratios %s", small.label, large.label, ratios)
    return EmbeddingReport(max(ratios), tuple(ratios))

