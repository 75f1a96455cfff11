import math

import numpy as np
import pytest

from bargfock.bargmann import (
    SampledFock,
    TaylorCoeffs,
    bargmann_coefficients,
    bargmann_direct,
    bargmann_from_hermite,
    bargmann_via_stft,
    bilinear_dot,
    cauchy_riemann_residual,
    dilation_S,
    hermitian_dot,
    inverse_bargmann,
    operator_U_V,
    sample_taylor,
    taylor_coefficients,
)
from bargfock.errors import IllConditionedWarning, InvalidArgumentError, NumericalOverflowError
from bargfock.grid import Signal, make_phase_grid
from bargfock.hermite import HermiteExpansion, MultiIndex, hermite_synthesize, random_expansion
from bargfock.stft import Convention, PhaseField, gaussian_profile, stft

POINTS = np.array([0.5 + 0.3j, -1.0 + 1.0j, 2.0j, 1.2 - 0.4j])


@pytest.mark.parametrize("k", range(6))
def test_hermite_functions_map_to_monomials(axes, k):
    f = hermite_synthesize(HermiteExpansion(1, k, {k: 1.0}), axes)
    expected = POINTS ** k / math.sqrt(math.factorial(k))
    assert np.allclose(bargmann_direct(f, POINTS), expected, atol=1e-8)


def test_gaussian_maps_to_one(axes):
    f = Signal.from_function(axes, gaussian_profile)
    assert np.allclose(bargmann_direct(f, POINTS), 1.0, atol=1e-10)


def test_three_routes_agree(axes, rng):
    e = random_expansion(rng, 1, 6)
    f = hermite_synthesize(e, axes)
    exact = bargmann_from_hermite(e, POINTS)
    assert np.allclose(bargmann_direct(f, POINTS), exact, atol=1e-8)
    assert np.allclose(bargmann_via_stft(f, POINTS), exact, atol=1e-8)


def test_bargmann_coefficients_are_copied(rng):
    e = random_expansion(rng, 2, 3)
    F = bargmann_coefficients(e)
    assert isinstance(F, TaylorCoeffs)
    assert F.items() == e.items()


def test_kernel_overflow_reports_point(axes):
    f = Signal.from_function(axes, gaussian_profile)
    with pytest.raises(NumericalOverflowError) as info:
        bargmann_direct(f, np.array([40.0j]))
    assert info.value.point == (40.0j,)


def test_dot_products():
    z, w = np.array([1j, 2.0]), np.array([1j, 1.0])
    assert bilinear_dot(z, w) == pytest.approx(1.0)
    assert hermitian_dot(z, w) == pytest.approx(3.0)


def test_taylor_coefficients_of_polynomial():
    F = TaylorCoeffs(1, 4, {0: 1.0, 2: -0.5j, 4: 0.25})
    recovered = taylor_coefficients(F, 6)
    for k in range(7):
        assert recovered.coefficient(k) == pytest.approx(F.coefficient(k), abs=1e-12)


def test_taylor_coefficients_of_exponential():
    recovered = taylor_coefficients(lambda z: np.exp(z[..., 0]), 10, dim=1)
    for k in range(11):
        assert recovered.coefficient(k) == pytest.approx(1 / math.sqrt(math.factorial(k)), abs=1e-10)


def test_taylor_coefficients_warn_on_aliasing():
    with pytest.warns(IllConditionedWarning):
        taylor_coefficients(lambda z: np.exp(5 * z[..., 0]), 2, dim=1)


def test_taylor_coefficients_arguments():
    with pytest.raises(InvalidArgumentError):
        taylor_coefficients(lambda z: z[..., 0], 3)
    with pytest.raises(InvalidArgumentError):
        taylor_coefficients(TaylorCoeffs(1, 0, {0: 1.0}), -1)


def test_inverse_bargmann_reports_truncation():
    F = TaylorCoeffs(1, 3, {0: 1.0, 3: 0.5})
    e, report = inverse_bargmann(F, max_degree=2)
    assert isinstance(e, HermiteExpansion)
    assert e.coefficient(0) == 1.0
    assert report.truncated
    assert report.dropped == 1
    assert report.tail_l2 == pytest.approx(0.5)


def test_inverse_bargmann_of_samples_needs_degree():
    with pytest.raises(InvalidArgumentError):
        inverse_bargmann(sample_taylor(TaylorCoeffs(1, 1, {1: 1.0})))


def test_inverse_bargmann_of_samples():
    F = TaylorCoeffs(1, 3, {1: 1.0, 3: -0.5j})
    e, report = inverse_bargmann(sample_taylor(F), max_degree=3)
    assert report.tail_l2 < 1e-6
    assert e.coefficient(3) == pytest.approx(-0.5j, abs=1e-6)


def test_sampled_fock_interpolates():
    F = TaylorCoeffs(1, 2, {2: 1.0})
    sampled = sample_taylor(F)
    z = 0.33 + 0.21j
    assert sampled.evaluate(z) == pytest.approx(F.evaluate(z), abs=1e-6)


def test_sampled_fock_needs_plane_convention(small_phase_grid):
    field = PhaseField(small_phase_grid, np.ones(small_phase_grid.shape), Convention.STFT_PLAIN)
    with pytest.raises(InvalidArgumentError):
        SampledFock(field)


def test_cauchy_riemann():
    grid = make_phase_grid(1, 2.0, 81)
    assert cauchy_riemann_residual(sample_taylor(TaylorCoeffs(1, 3, {3: 1.0}), grid)) < 1e-4
    x, xi = grid.mesh()
    conjugate = SampledFock(PhaseField(grid, x[0] - 1j * xi[0], Convention.FOCK_PLANE))
    assert cauchy_riemann_residual(conjugate) > 0.1


def test_U_V_maps_stft_to_bargmann(axes, window):
    e = HermiteExpansion(1, 1, {1: 1.0})
    f = hermite_synthesize(e, axes)
    field = stft(f, window, make_phase_grid(1, 6.0, 121))
    target = make_phase_grid(1, 1.0, 5)
    x, xi = target.mesh()
    expected = bargmann_from_hermite(e, x[0] + 1j * xi[0])
    values = operator_U_V(field, target).values
    assert np.abs(values - expected).max() < 1e-3 * np.abs(expected).max()


def test_dilation_S_of_callable(small_phase_grid):
    S = dilation_S(lambda x, xi: x + 2 * xi, small_phase_grid)
    x, xi = small_phase_grid.mesh()
    assert np.allclose(S.values, x[0] / math.sqrt(2) - 2 * xi[0] / math.sqrt(2))
    assert S.convention == Convention.SYMBOL
