"""
Suites on phase space: the reproducing kernel, the window-transform
identity and the Toeplitz / Bargmann-Toeplitz intertwining.
"""
import logging
import math

import numpy as np

from bargfock.bargmann import (
    TaylorCoeffs,
    bargmann_coefficients,
    operator_U_V,
    operator_U_V_inverse,
    sample_taylor,
)
from bargfock.config import RunConfig
from bargfock.fock.kernel import (
    bargmann_toeplitz,
    gauss_hermite_plane,
    plane_points,
    reproducing_apply,
    reproducing_field,
)
from bargfock.fock.weights import sigma, sigma_symbol
from bargfock.grid import Signal, default_axes, make_phase_grid
from bargfock.hermite import (
    HermiteExpansion,
    MultiIndex,
    anti_wick_eigenvalue,
    hermite_expand,
    hermite_synthesize,
    multi_indices,
    random_expansion,
)
from bargfock.stft import Convention, PhaseField, gaussian_profile, gaussian_window, projection_pi, toeplitz, window_transform_constant
from bargfock.verify.report import CheckResult, at_least, at_most
from bargfock.verify.transforms import disk_points, random_taylor

logger = logging.getLogger(__name__)


def _relative_max(measured: np.ndarray, expected: np.ndarray) -> float:
    return float(np.abs(measured - expected).max() / max(1.0, np.abs(expected).max()))


def reproducing(config: RunConfig) -> list[CheckResult]:
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    F = random_taylor(rng, 1, 6)
    z = disk_points(rng, 10, 1.5)

    reproduce = _relative_max(reproducing_apply(F, z), F.evaluate(z))
    annihilate = float(np.abs(reproducing_apply(lambda w: np.conj(w[..., 0]), z, gauss_hermite_plane(1))).max())

    # idempotence on a polynomial plus an anti-analytic part, measured where the coarse grid is exact
    coarse = make_phase_grid(1, 7.0, 71)
    once = reproducing_field(lambda w: F.evaluate(w) + np.conj(w[..., 0]), coarse)
    twice = reproducing_field(once)
    inside = coarse.radius_squared() <= 4.0
    first, second = once.field.values[inside], twice.field.values[inside]
    idempotence = float(np.abs(second - first).max() / np.abs(first).max())

    return [
        at_most("reproduce_polynomial", reproduce, tol.reproduce),
        at_most("annihilate_conjugate", annihilate, tol.annihilate),
        at_most("idempotence", idempotence, tol.idempotence),
        at_most("conjugation", _conjugation_residual(random_taylor(rng, 1, 3)), tol.conjugation),
    ]


def _conjugation_residual(F: TaylorCoeffs) -> float:
    """U_V Pi U_V^{-1} F against Pi_A F = F on a small plane grid"""
    pg = make_phase_grid(1, 7.0, 71)
    lifted = operator_U_V_inverse(sample_taylor(F).field, pg)
    projected = projection_pi(lifted, gaussian_window(1))
    target = make_phase_grid(1, 1.5, 7)
    back = operator_U_V(projected, target).values
    expected = F.evaluate(plane_points(target))
    return float(np.abs(back - expected).max() / np.abs(expected).max())


def windowtransf(config: RunConfig) -> list[CheckResult]:
    """(V f) *^ (V phi phi) = c V f with c = 1, on two grid densities"""
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    axes = default_axes(1)
    signals = {
        "gaussian": Signal.from_function(axes, gaussian_profile),
        "h1": hermite_synthesize(HermiteExpansion(1, 1, {MultiIndex.of(1): 1.0}), axes),
        "random": hermite_synthesize(random_expansion(rng, 1, 4), axes),
    }
    coarse = make_phase_grid(1, 7.0, 57)
    fine = make_phase_grid(1, 7.0, 113)

    checks = []
    for name, f in signals.items():
        c_coarse = window_transform_constant(f, coarse)
        c_fine = window_transform_constant(f, fine)
        logger.debug("window constant %s: %s (coarse) %s (fine)", name, c_coarse, c_fine)
        checks.append(at_most(f"constant_{name}", max(abs(c_coarse - 1), abs(c_fine - 1)), tol.window_constant))
        checks.append(at_most(f"drift_{name}", abs(c_coarse - c_fine) / abs(c_fine), tol.window_constant_drift))
    return checks


def _l2_relative(measured: Signal, expected: Signal) -> float:
    return measured.with_values(measured.values - expected.values).l2_norm() / expected.l2_norm()


def toeplitz_intertwine(config: RunConfig) -> list[CheckResult]:
    tol = config.tolerances
    rng = np.random.default_rng(config.seed)
    axes = default_axes(1)
    window = gaussian_window(1, axes)
    pg = make_phase_grid(1, 10.0, 201)
    a = sigma_symbol(pg, 2)

    spectrum = 0.0
    for k in range(5):
        h = hermite_synthesize(HermiteExpansion(1, k, {MultiIndex.of(k): 1.0}), axes)
        lam = anti_wick_eigenvalue(k, 1)
        spectrum = max(spectrum, _l2_relative(toeplitz(a, window, h), h.with_values(lam * h.values)))

    f = hermite_synthesize(random_expansion(rng, 1, 4), axes)
    g = hermite_synthesize(random_expansion(rng, 1, 4), axes)
    ones = PhaseField(pg, np.ones(pg.shape), Convention.SYMBOL)
    identity = _l2_relative(toeplitz(ones, window, f), f)
    tf, tg = toeplitz(a, window, f), toeplitz(a, window, g)
    adjoint = abs(tf.inner(g) - f.inner(tg)) / (f.l2_norm() * g.l2_norm())
    positivity = tf.inner(f).real

    constant = bargmann_toeplitz(sigma(2).at, TaylorCoeffs(1, 0, {MultiIndex.of(0): 1.0}))
    expected = anti_wick_eigenvalue(0, 1)
    sigma_one = math.sqrt(
        abs(constant.coefficient(0) - expected) ** 2
        + sum(abs(b) ** 2 for alpha, b in constant.items() if alpha.order > 0)
    ) / expected

    e = random_expansion(rng, 1, 4)
    lhs = bargmann_toeplitz(sigma(2).at, bargmann_coefficients(e))
    rhs = bargmann_coefficients(hermite_expand(toeplitz(a, window, hermite_synthesize(e, axes)), 8))
    diff = math.sqrt(sum(
        abs(lhs.coefficient(alpha) - rhs.coefficient(alpha)) ** 2 for alpha in multi_indices(1, lhs.max_degree)
    ))
    return [
        at_most("toeplitz_spectrum", spectrum, tol.toeplitz_spectrum),
        at_most("toeplitz_identity", identity, tol.toeplitz_identity),
        at_most("self_adjoint", adjoint, tol.self_adjoint),
        at_least("positivity", positivity, -1e-8),
        at_most("bargmann_toeplitz_sigma2", sigma_one, tol.intertwining),
        at_most("intertwining", diff / rhs.l2_norm(), tol.intertwining),
    ]


def get_suites() -> dict:
    return {
        "reproducing": reproducing,
        "windowtransf": windowtransf,
        "toeplitz-intertwine": toeplitz_intertwine,
    }
