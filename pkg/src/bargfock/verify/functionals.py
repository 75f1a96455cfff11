"""
Suites for the Fock-space functionals: norm equivalence, the ball cover,
narrow convergence and the embedding inequalities.
"""
import logging
import math

import numpy as np

from bargfock.bargmann import TaylorCoeffs
from bargfock.config import RunConfig
from bargfock.fock.covering import INNER_RADIUS, build_ball_cover, cover_diagnostics
from bargfock.fock.narrow import narrow_convergence_check, narrow_profile
from bargfock.fock.norms import (
    MixedNormSpec,
    duality_bound_check,
    embedding_constant,
    equivalence_grid,
    holder_embedding_check,
    norm_equivalence_report,
    norm_phase_grid,
)
from bargfock.fock.weights import moderateness_check, sigma, unit_weight
from bargfock.grid import make_phase_grid
from bargfock.hermite import MultiIndex
from bargfock.verify.report import CheckResult, at_least, at_most, holds
from bargfock.verify.transforms import disk_points, random_taylor

logger = logging.getLogger(__name__)

EQUIVALENCE_FAMILY = 6
EQUIVALENCE_DEGREE = 12
NARROW_RATE = 0.3
HOLDER_PAIRS = [(1.0, 2.0), (1.0, math.inf), (2.0, math.inf)]
DUALITY_SPECS = [MixedNormSpec(1, math.inf), MixedNormSpec(2, 2), MixedNormSpec(math.inf, 1)]


def _ratio_band(ratios: list[float]) -> float:
    return max(max(ratios), 1.0 / min(ratios))


def equivalence_family(rng: np.random.Generator) -> list[TaylorCoeffs]:
    """
    Normalized monomials e_0 .. e_12 followed by random polynomials.

    The weights are radial, so every ratio of the family lies between the
    extreme monomial ratios.
    """
    family = [TaylorCoeffs(1, k, {MultiIndex.of(k): 1.0}) for k in range(EQUIVALENCE_DEGREE + 1)]
    return family + [random_taylor(rng, 1, EQUIVALENCE_DEGREE) for _ in range(EQUIVALENCE_FAMILY)]


def norm_equivalence(config: RunConfig) -> list[CheckResult]:
    """
    Weighted Fock norm against weighted coefficient norm for N in {-1, 0, 1},
    on the default grid and on one with twice the nodes.
    """
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    family = equivalence_family(rng)
    base = equivalence_grid(1)
    doubled = make_phase_grid(1, base.x_axes[0].half_width, 2 * base.x_axes[0].n - 1)

    checks = []
    for N in (-1, 0, 1):
        ratios = [norm_equivalence_report(F, N, base).ratio for F in family]
        refined = [norm_equivalence_report(F, N, doubled).ratio for F in family]
        drift = abs(_ratio_band(ratios) - _ratio_band(refined)) / _ratio_band(refined)
        logger.debug("N=%d ratios %s", N, ratios)
        checks.append(at_most(f"band_N{N}", _ratio_band(ratios), tol.equivalence_band))
        checks.append(at_most(f"drift_N{N}", drift, tol.equivalence_drift))
        if N == 0:
            checks.append(at_most("parseval_N0", max(abs(r - 1.0) for r in ratios), tol.parseval))
    return checks


def covering(config: RunConfig) -> list[CheckResult]:
    tol = config.tolerances
    cover = build_ball_cover(config.r_max)
    diagnostics = cover_diagnostics(cover)
    logger.info("cover: %d balls, %d sampled annulus points", len(cover), diagnostics.sampled)
    return [
        at_most("uncovered_points", diagnostics.uncovered, 0),
        at_most("radius_product", diagnostics.worst_radius_product, 1.0 + 1e-12),
        at_least("min_center_modulus", diagnostics.min_center_modulus, INNER_RADIUS - 1e-12),
        at_most("max_overlap", diagnostics.max_overlap, tol.max_overlap),
    ]


def exponential_taylor(rate: float, degree: int) -> TaylorCoeffs:
    """Degree-bounded Taylor polynomial of e^{rate z} at d = 1"""
    coeffs = {MultiIndex.of(k): rate ** k / math.sqrt(math.factorial(k)) for k in range(degree + 1)}
    return TaylorCoeffs(1, degree, coeffs)


def narrow(config: RunConfig) -> list[CheckResult]:
    """Taylor truncations of e^{0.3 z}, degrees 4..12, against the degree-30 limit"""
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    limit = exponential_taylor(NARROW_RATE, 30)
    sequence = [exponential_taylor(NARROW_RATE, j) for j in range(4, 13)]
    points = disk_points(rng, 20, 3.0)

    report = narrow_convergence_check(sequence, limit, points=points)
    weighted = narrow_convergence_check(sequence, limit, w=sigma(1), points=points)
    steps = [b / a for a, b in zip(report.profile_distances, report.profile_distances[1:])]

    profile = narrow_profile(limit)
    rotated = narrow_profile(limit.map_coefficients(lambda alpha, a: a * np.exp(0.7j)))
    rotation = float(np.abs(rotated.values - profile.values).max() / profile.values.max())
    return [
        holds("profile_decreasing", report.decreasing_from(0), max(steps), 1.0),
        at_most("profile_distance_j12", report.profile_distances[-1], tol.narrow_limit),
        at_most("profile_distance_j12_sigma1", weighted.profile_distances[-1], tol.narrow_limit),
        at_most("pointwise_j12", report.pointwise_errors[-1], tol.narrow_limit),
        at_most("rotation_invariance", rotation, 1e-12),
    ]


def embeddings(config: RunConfig) -> list[CheckResult]:
    """Holder embedding, duality bound, moderateness of sigma_s and the sigma_s -> sigma_{s-1} embedding"""
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    checks = []

    family = [random_taylor(rng, 1, 6) for _ in range(10)]
    for p1, p2 in HOLDER_PAIRS:
        results = [holder_embedding_check(F, 0.0, p1, p2) for F in family]
        worst = max(r.lhs / (r.quadrature_constant * r.rhs) for r in results)
        checks.append(holds(f"holder_p{p1:g}_{p2:g}", all(r.holds for r in results), worst, 1.0))
        if math.isfinite(results[0].constant):
            analytic = max(r.lhs / (r.constant * r.rhs) for r in results)
            checks.append(holds(f"holder_analytic_p{p1:g}_{p2:g}", all(r.holds_analytic for r in results), analytic, 1.0))

    one = TaylorCoeffs(1, 0, {MultiIndex.of(0): 1.0})
    equality = duality_bound_check(one, one, unit_weight(), MixedNormSpec(2, 2))
    checks.append(holds("duality_unit", equality.holds, abs(equality.pairing) / equality.bound, 1.0))
    F, G = random_taylor(rng, 1, 4), random_taylor(rng, 1, 4)
    for spec in DUALITY_SPECS:
        result = duality_bound_check(F, G, sigma(2), spec)
        checks.append(holds(
            f"duality_sigma2_p{spec.p:g}_q{spec.q:g}", result.holds, abs(result.pairing) / result.bound, 1.0
        ))

    coarse = make_phase_grid(1, 3.0, 7)
    for s in (-4.0, -2.0, 2.0, 4.0):
        report = moderateness_check(sigma(s), coarse)
        checks.append(holds(f"moderate_sigma{s:g}", report.holds, report.worst_ratio, report.constant))

    small, large = MixedNormSpec(2, 2), MixedNormSpec(math.inf, math.inf)
    embed_family = [random_taylor(rng, 1, 4) for _ in range(5)]
    default = embedding_constant(embed_family, 2.0, small, large, norm_phase_grid(1)).constant
    refined = embedding_constant(embed_family, 2.0, small, large, make_phase_grid(1, 8.0, 513)).constant
    checks.append(at_most("embedding_constant", default, 1.0))
    checks.append(at_most("embedding_constant_drift", abs(default - refined) / refined, tol.equivalence_drift))
    return checks


def get_suites() -> dict:
    return {
        "norm-equivalence": norm_equivalence,
        "covering": covering,
        "narrow": narrow,
        "embeddings": embeddings,
    }
