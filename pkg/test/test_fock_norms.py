import math

import numpy as np
import pytest

from bargfock.bargmann import TaylorCoeffs
from bargfock.errors import InvalidArgumentError, NumericalOverflowError
from bargfock.fock.norms import (
    DUALITY_KAPPA,
    MixedNormSpec,
    MixedNormVariant,
    bracket_power_norm,
    conjugate_exponent,
    dilated_damped,
    duality_bound_check,
    embedding_constant,
    fock_norm,
    holder_embedding_check,
    mixed_norm,
    modulation_norm,
    norm_equivalence_report,
    norm_phase_grid,
)
from bargfock.fock.weights import sigma, unit_weight
from bargfock.grid import Signal, make_phase_grid
from bargfock.hermite import HermiteExpansion, hermite_synthesize
from bargfock.stft import PhaseField, gaussian_profile

ONE = TaylorCoeffs(1, 0, {0: 1.0})
Z = TaylorCoeffs(1, 1, {1: 1.0})


def test_conjugate_exponents():
    assert conjugate_exponent(1.0) == math.inf
    assert conjugate_exponent(2.0) == 2.0
    assert conjugate_exponent(math.inf) == 1.0
    assert MixedNormSpec(1, math.inf).conjugate() == MixedNormSpec(math.inf, 1)


def test_spec_rejects_small_exponents():
    with pytest.raises(InvalidArgumentError):
        MixedNormSpec(0.5, 2)


def test_mixed_norm_of_constant():
    grid = make_phase_grid(1, 1.0, 3)
    field = PhaseField(grid, np.ones(grid.shape))
    assert mixed_norm(field, MixedNormSpec(2, 2)) == pytest.approx(2.0)
    assert mixed_norm(field, MixedNormSpec(1, 1)) == pytest.approx(4.0)
    assert mixed_norm(field, MixedNormSpec(math.inf, math.inf)) == 1.0


def test_variants_agree_when_exponents_match(rng):
    grid = make_phase_grid(1, 2.0, 9)
    field = PhaseField(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
    x_first = mixed_norm(field, MixedNormSpec(3, 3, MixedNormVariant.XFIRST), sigma(1))
    xi_first = mixed_norm(field, MixedNormSpec(3, 3, MixedNormVariant.XIFIRST), sigma(1))
    assert x_first == pytest.approx(xi_first)


def test_variants_differ_in_general():
    grid = make_phase_grid(1, 2.0, 9)
    x, xi = grid.mesh()
    field = PhaseField(grid, np.exp(-x[0] ** 2 - 3 * (x[0] - xi[0]) ** 2))
    x_first = mixed_norm(field, MixedNormSpec(1, math.inf, "x-first"))
    xi_first = mixed_norm(field, MixedNormSpec(1, math.inf, "xi-first"))
    assert x_first != pytest.approx(xi_first)


def test_modulation_norm_of_gaussian(axes):
    f = Signal.from_function(axes, gaussian_profile)
    assert modulation_norm(f) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)


def test_fock_norm_of_constant():
    assert fock_norm(ONE) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)
    assert fock_norm(Z) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-8)


@pytest.mark.parametrize("spec", [MixedNormSpec(1, math.inf), MixedNormSpec(math.inf, 1), MixedNormSpec(2, 2)])
def test_fock_norm_equals_modulation_norm(axes, spec):
    f = hermite_synthesize(HermiteExpansion(1, 1, {1: 1.0}), axes)
    expected = modulation_norm(f, sigma(2), spec)
    assert fock_norm(Z, sigma(2), spec) == pytest.approx(expected, rel=1e-6)


def test_dilated_damped_overflow():
    huge = TaylorCoeffs(1, 1, {1: 1e308})
    with pytest.raises(NumericalOverflowError):
        dilated_damped(huge, norm_phase_grid(1))


def test_dilated_damped_dimension():
    with pytest.raises(InvalidArgumentError):
        dilated_damped(ONE, make_phase_grid(2, 2.0, 5))


def test_norm_equivalence_of_constant():
    assert norm_equivalence_report(ONE, 0).ratio == pytest.approx(1.0, abs=1e-8)
    assert norm_equivalence_report(ONE, 1).ratio == pytest.approx(math.sqrt(13.0), rel=1e-8)


def test_norm_equivalence_of_monomial():
    # ||sigma_2 z^k e^{-|.|^2/2}||^2 / 2 pi = 4k^2 + 16k + 13 against 1 + k^2
    F = TaylorCoeffs(1, 3, {3: 1.0})
    assert norm_equivalence_report(F, 1).ratio == pytest.approx(math.sqrt(97.0 / 10.0), rel=1e-6)


def test_norm_equivalence_degree_limit():
    with pytest.raises(InvalidArgumentError):
        norm_equivalence_report(TaylorCoeffs(1, 13, {13: 1.0}), 0)


def test_bracket_power_norm():
    assert bracket_power_norm(1, 2, math.inf) == 1.0
    assert bracket_power_norm(1, 2, 1.0) == math.inf
    assert bracket_power_norm(1, 2, 2.0) == pytest.approx(math.sqrt(math.pi))


def test_holder_embedding():
    result = holder_embedding_check(Z, 0.0, 1.0, 2.0)
    assert result.holds
    assert result.holds_analytic
    unbounded = holder_embedding_check(Z, 0.0, 1.0, math.inf)
    assert unbounded.constant == math.inf
    assert unbounded.holds


def test_holder_needs_ordered_exponents():
    with pytest.raises(InvalidArgumentError):
        holder_embedding_check(Z, 0.0, 2.0, 1.0)


def test_duality_is_sharp_for_constant():
    result = duality_bound_check(ONE, ONE, unit_weight(), MixedNormSpec(2, 2))
    assert result.kappa == DUALITY_KAPPA[1]
    assert result.pairing == pytest.approx(1.0)
    assert result.bound == pytest.approx(1.0, rel=1e-8)
    assert result.holds


def test_embedding_constant():
    report = embedding_constant([ONE, Z], 2.0, MixedNormSpec(2, 2), MixedNormSpec(math.inf, math.inf))
    assert len(report.ratios) == 2
    assert report.constant == max(report.ratios)
    with pytest.raises(InvalidArgumentError):
        embedding_constant([ONE], 2.0, MixedNormSpec(math.inf, 2), MixedNormSpec(2, 2))
