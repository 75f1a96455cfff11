"""
Suites for the transforms themselves: the Hermite-monomial map, the
oscillator spectrum and the isometry between modulation and Fock norms.
"""
import logging
import math

import numpy as np

from bargfock.bargmann import (
    TaylorCoeffs,
    bargmann_coefficients,
    bargmann_direct,
    bargmann_from_hermite,
    bargmann_via_stft,
    cauchy_riemann_residual,
    inverse_bargmann,
    sample_taylor,
)
from bargfock.config import RunConfig
from bargfock.fock.kernel import a2_inner
from bargfock.fock.norms import MixedNormSpec, dilated_damped, mixed_norm, norm_phase_grid
from bargfock.fock.weights import sigma, unit_weight
from bargfock.grid import AxisGrid, default_axes, make_phase_grid
from bargfock.hermite import (
    HermiteExpansion,
    MultiIndex,
    apply_H_power,
    apply_oscillator_on_grid,
    hermite_synthesize,
    oscillator_eigenvalue,
    random_expansion,
)
from bargfock.stft import gaussian_window, stft
from bargfock.verify.report import CheckResult, at_most

logger = logging.getLogger(__name__)

ISOMETRY_PAIRS = [(1.0, 1.0), (2.0, 2.0), (math.inf, math.inf), (2.0, math.inf), (math.inf, 1.0)]
FAMILY_SIZE = 10


def disk_points(rng: np.random.Generator, m: int, radius: float) -> np.ndarray:
    """m points uniformly distributed in the disk |z| <= radius"""
    r = radius * np.sqrt(rng.random(m))
    return r * np.exp(2j * np.pi * rng.random(m))


def random_taylor(rng: np.random.Generator, dim: int, max_degree: int) -> TaylorCoeffs:
    return bargmann_coefficients(random_expansion(rng, dim, max_degree))


def hermite_map(config: RunConfig) -> list[CheckResult]:
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    axes = default_axes(1)
    z = disk_points(rng, 20, 3.0)

    worst = 0.0
    for k in range(9):
        f = hermite_synthesize(HermiteExpansion(1, k, {MultiIndex.of(k): 1.0}), axes)
        expected = z ** k / math.sqrt(math.factorial(k))
        worst = max(worst, float(np.max(np.abs(bargmann_direct(f, z) - expected) / (1.0 + np.abs(z)) ** 8)))

    e = random_expansion(rng, 1, 10)
    f = hermite_synthesize(e, axes)
    exact = bargmann_from_hermite(e, z)
    scale = max(1.0, float(np.abs(exact).max()))
    route = max(
        float(np.abs(bargmann_direct(f, z) - exact).max()),
        float(np.abs(bargmann_via_stft(f, z) - exact).max()),
    ) / scale

    back, _ = inverse_bargmann(bargmann_coefficients(e))
    round_trip = math.sqrt(sum(abs(back.coefficient(alpha) - a) ** 2 for alpha, a in e.items()))

    sampled = sample_taylor(random_taylor(rng, 1, 6), make_phase_grid(1, 2.0, 81))
    return [
        at_most("monomial_map", worst, tol.hermite_map),
        at_most("route_agreement", route, tol.hermite_map),
        at_most("inverse_round_trip", round_trip, tol.round_trip),
        at_most("cauchy_riemann", cauchy_riemann_residual(sampled), tol.cauchy_riemann),
    ]


def _eigen_residual(k: int, axis: AxisGrid, method: str) -> float:
    f = hermite_synthesize(HermiteExpansion(1, k, {MultiIndex.of(k): 1.0}), (axis,))
    lam = oscillator_eigenvalue(k, 1)
    residual = apply_oscillator_on_grid(f, method).values - lam * f.values
    return f.with_values(residual).l2_norm() / (lam * f.l2_norm())


def oscillator(config: RunConfig) -> list[CheckResult]:
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    fine = AxisGrid(10.0, 1025)

    spectral = max(_eigen_residual(k, fine, "spectral") for k in range(9))
    central = max(_eigen_residual(k, fine, "central") for k in range(3))

    f = hermite_synthesize(HermiteExpansion(2, 2, {MultiIndex.of(1, 1): 1.0}), default_axes(2))
    rayleigh = (apply_oscillator_on_grid(f).inner(f) / f.inner(f)).real
    expected = oscillator_eigenvalue(MultiIndex.of(1, 1), 2)

    e = random_expansion(rng, 1, 8)
    back = apply_H_power(apply_H_power(e, 1), -1)
    power = max(abs(back.coefficient(alpha) - a) for alpha, a in e.items())
    return [
        at_most("eigen_spectral_d1", spectral, tol.oscillator),
        at_most("eigen_central_d1", central, tol.central_difference),
        at_most("eigen_d2_alpha11", abs(rayleigh - expected) / expected, tol.oscillator),
        at_most("power_inverse", power, tol.round_trip),
    ]


def isometry(config: RunConfig) -> list[CheckResult]:
    """
    fock_norm(V f) against modulation_norm(f) for a seeded polynomial family.

    The family is drawn on the Fock side and pulled back with inverse_bargmann.
    """
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    axes = default_axes(1)
    window = gaussian_window(1, axes)
    pg = norm_phase_grid(1)
    weights = {"unit": unit_weight(), "sigma_2": sigma(2), "sigma_-2": sigma(-2)}

    worst = {(label, pair): 0.0 for label in weights for pair in ISOMETRY_PAIRS}
    parseval = 0.0
    for _ in range(FAMILY_SIZE):
        F = random_taylor(rng, 1, 8)
        e, _ = inverse_bargmann(F)
        f = hermite_synthesize(e, axes)
        modulation_field = stft(f, window, pg)
        fock_field = dilated_damped(F, pg)
        for label, w in weights.items():
            for p, q in ISOMETRY_PAIRS:
                spec = MixedNormSpec(p, q)
                expected = mixed_norm(modulation_field, spec, w)
                measured = mixed_norm(fock_field, spec, w)
                worst[label, (p, q)] = max(worst[label, (p, q)], abs(measured - expected) / expected)
        parseval = max(parseval, abs(a2_inner(F, F).real - f.l2_norm() ** 2))

    logger.debug("isometry worst relative deviations %s", worst)
    checks = [
        at_most(f"isometry_{label}_p{p:g}_q{q:g}", value, tol.isometry)
        for (label, (p, q)), value in worst.items()
    ]
    checks.append(at_most("parseval", parseval, tol.parseval))
    return checks


def get_suites() -> dict:
    return {
        "hermite-map": hermite_map,
        "oscillator": oscillator,
        "isometry": isometry,
    }
