import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bargfock.errors import InvalidArgumentError
from bargfock.fock.weights import (
    WeightKind,
    moderateness_check,
    sigma,
    sigma_symbol,
    tabulated_weight,
    unit_weight,
)
from bargfock.grid import make_phase_grid
from bargfock.stft import Convention, PhaseField

COARSE = make_phase_grid(1, 3.0, 7)


def test_sigma_values():
    assert sigma(2).at(np.array(3.0), np.array(4.0)) == pytest.approx(26.0)
    assert sigma(-2).at(np.array(0.0), np.array(1.0)) == pytest.approx(0.5)
    assert unit_weight().evaluate(COARSE).max() == 1.0


def test_sigma_labels_and_reciprocal():
    assert sigma(2).label == "sigma_2"
    assert sigma(-2).reciprocal().s == 2.0
    assert sigma(3).moderate_order == 3.0
    assert sigma(-2).moderate_constant == pytest.approx(2.0)


@settings(max_examples=20, deadline=None)
@given(s=st.floats(-4.0, 4.0))
def test_sigma_is_moderate(s):
    report = moderateness_check(sigma(s), COARSE)
    assert report.holds
    assert report.pairs == COARSE.size ** 2


def test_sigma_symbol_is_real_and_positive():
    symbol = sigma_symbol(COARSE, 2)
    assert symbol.convention == Convention.SYMBOL
    assert np.all(symbol.values.real >= 1.0)
    assert symbol.values.real.max() == pytest.approx(1 + 18.0)


def test_tabulated_weight_matches_sigma():
    w = tabulated_weight(sigma_symbol(COARSE, 2), order=2)
    assert w.kind == WeightKind.TABULATED
    assert np.allclose(w.evaluate(COARSE), sigma(2).evaluate(COARSE))
    report = moderateness_check(w, COARSE, constant=2.0)
    assert report.holds
    assert report.pairs < COARSE.size ** 2


def test_tabulated_weight_must_be_positive():
    table = PhaseField(COARSE, -np.ones(COARSE.shape), Convention.SYMBOL)
    with pytest.raises(InvalidArgumentError):
        tabulated_weight(table)


def test_tabulated_moderateness_needs_order_and_constant():
    with pytest.raises(InvalidArgumentError):
        moderateness_check(tabulated_weight(sigma_symbol(COARSE, 2)), COARSE)
    with pytest.raises(InvalidArgumentError):
        moderateness_check(tabulated_weight(sigma_symbol(COARSE, 2), order=2), COARSE)


def test_tabulated_reciprocal():
    w = tabulated_weight(sigma_symbol(COARSE, 2), order=2).reciprocal()
    assert np.allclose(w.evaluate(COARSE), sigma(-2).evaluate(COARSE))
