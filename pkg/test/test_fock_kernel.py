import numpy as np
import pytest

from bargfock.bargmann import TaylorCoeffs, fock_plane_grid, sample_taylor
from bargfock.errors import InvalidArgumentError
from bargfock.fock.kernel import (
    a2_inner,
    a2_norm,
    bargmann_toeplitz,
    gauss_hermite_plane,
    plane_points,
    plane_samples,
    reproducing_apply,
    reproducing_field,
)
from bargfock.fock.narrow import narrow_convergence_check, narrow_profile
from bargfock.fock.norms import holder_embedding_check
from bargfock.fock.weights import sigma
from bargfock.grid import make_phase_grid
from bargfock.hermite import anti_wick_eigenvalue

F = TaylorCoeffs(1, 3, {0: 1.0, 1: 0.5j, 3: -0.25})
G = TaylorCoeffs(1, 2, {0: 2.0, 1: 1.0})
POINTS = np.array([0.5 + 0.5j, -1.0j, 0.8])

F2 = TaylorCoeffs(2, 2, {(0, 0): 1.0, (1, 0): 0.5j, (1, 1): -0.25})
G2 = TaylorCoeffs(2, 1, {(0, 0): 2.0, (0, 1): 1.0})
POINTS2 = np.array([[0.5, 0.2j], [-0.3 + 0.1j, 0.4]])


def test_plane_points():
    grid = make_phase_grid(1, 1.0, 3)
    w = plane_points(grid)
    assert w.shape == (3, 3, 1)
    assert w[2, 0, 0] == 1.0 - 1.0j


def test_a2_inner_of_polynomials_is_exact():
    assert a2_inner(F, G) == pytest.approx(2.0 + 0.5j)
    assert a2_norm(TaylorCoeffs(1, 2, {2: 3.0})) == pytest.approx(3.0)


def test_a2_inner_by_quadrature():
    sampled = sample_taylor(F)
    assert a2_inner(sampled, G) == pytest.approx(a2_inner(F, G), abs=1e-8)


def test_reproduces_polynomials():
    assert np.allclose(reproducing_apply(F, POINTS), F.evaluate(POINTS), atol=1e-8)


def test_annihilates_conjugate():
    projected = reproducing_apply(lambda w: np.conj(w[..., 0]), POINTS, fock_plane_grid(1))
    assert np.abs(projected).max() < 1e-8


def test_reproducing_field_is_sampled_fock():
    grid = make_phase_grid(1, 7.0, 71)
    projected = reproducing_field(F, grid)
    assert projected.grid == grid
    inside = grid.radius_squared() <= 4.0
    exact = F.evaluate(plane_points(grid))
    assert np.abs(projected.field.values - exact)[inside].max() < 1e-6


def test_callables_need_a_grid():
    with pytest.raises(InvalidArgumentError):
        plane_samples(lambda w: w[..., 0])


def test_bargmann_toeplitz_on_monomials():
    for k in range(3):
        monomial = TaylorCoeffs(1, k, {k: 1.0})
        out = bargmann_toeplitz(sigma(2).at, monomial)
        assert out.coefficient(k) == pytest.approx(anti_wick_eigenvalue(k, 1), rel=1e-6)
        others = [abs(b) for alpha, b in out.items() if alpha.order != k]
        assert max(others) < 1e-6


def test_bargmann_toeplitz_is_self_adjoint_and_positive():
    def T(H):
        return bargmann_toeplitz(sigma(2).at, H, degree=12)

    assert a2_inner(T(F), G) == pytest.approx(a2_inner(F, T(G)), abs=1e-8)
    pairing = a2_inner(T(F), F)
    assert abs(pairing.imag) < 1e-8
    # S^{-1} sigma_2 >= 1
    assert pairing.real >= a2_norm(F) ** 2


def test_gauss_hermite_plane_integrates_against_mu():
    for dim, nodes in ((1, 48 ** 2), (2, 16 ** 4)):
        rule = gauss_hermite_plane(dim)
        assert len(rule) == nodes
        assert rule.weights.sum() == pytest.approx(1.0, rel=1e-12)
        # integral |w|^2 d mu = d
        assert np.sum(np.sum(np.abs(rule.points) ** 2, axis=-1) * rule.weights) == pytest.approx(dim, rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        gauss_hermite_plane(3)


def test_reproducing_with_gauss_hermite_rule():
    rule = gauss_hermite_plane(1)
    assert np.allclose(reproducing_apply(lambda w: F.evaluate(w), POINTS, rule), F.evaluate(POINTS), atol=1e-10)
    assert np.abs(reproducing_apply(lambda w: np.conj(w[..., 0]), POINTS, rule)).max() < 1e-10


def test_annihilation_ratio_of_anti_analytic_part():
    # Pi keeps the entire part of F + conj(w) and drops the rest
    mixed = lambda w: F.evaluate(w) + np.conj(w[..., 0]) ** 2
    projected = reproducing_apply(mixed, POINTS, gauss_hermite_plane(1))
    removed = np.abs(mixed(POINTS[:, None]) - F.evaluate(POINTS))
    assert np.abs(projected - F.evaluate(POINTS)).max() / removed.max() < 0.1
    assert np.allclose(projected, F.evaluate(POINTS), atol=1e-9)


def test_fock_plane_grid_shrinks_at_two_dimensions():
    assert fock_plane_grid(1).shape == (141, 141)
    assert fock_plane_grid(2).shape == (25,) * 4


def test_two_dimensional_defaults():
    assert np.allclose(reproducing_apply(F2, POINTS2), F2.evaluate(POINTS2), atol=1e-8)
    assert reproducing_apply(TaylorCoeffs(2, 1, {(1, 0): 1}), [[0.5, 0.2j]]) == pytest.approx([0.5], abs=1e-8)

    sampled = sample_taylor(F2)
    assert sampled.grid == fock_plane_grid(2)
    assert a2_inner(sampled, G2) == pytest.approx(a2_inner(F2, G2), abs=1e-8)
    assert a2_inner(F2, G2) == pytest.approx(2.0)

    profile = narrow_profile(TaylorCoeffs(2, 0, {(0, 0): 1.0}))
    center = profile.grid.xi_axes[0].center
    assert profile.values[center, center] == pytest.approx(2 * np.pi, rel=1e-7)
    report = narrow_convergence_check([TaylorCoeffs(2, 0, {(0, 0): 1.0}), F2], F2)
    assert report.profile_distances[-1] == pytest.approx(0.0, abs=1e-12)

    assert holder_embedding_check(F2, 0.0, 1.0, 2.0).holds


def test_bargmann_toeplitz_two_dimensional():
    out = bargmann_toeplitz(sigma(2).at, TaylorCoeffs(2, 1, {(1, 0): 1.0}))
    assert out.coefficient((1, 0)) == pytest.approx(anti_wick_eigenvalue((1, 0), 2), rel=1e-10)
    assert out.coefficient((1, 0)) == pytest.approx(7.0)
    others = [abs(b) for alpha, b in out.items() if alpha.entries != (1, 0)]
    assert max(others) < 1e-10

    identity = bargmann_toeplitz(lambda *c: np.ones_like(c[0]), F2)
    for alpha, a in F2.items():
        assert identity.coefficient(alpha) == pytest.approx(a, abs=1e-10)


def test_bargmann_toeplitz_two_dimensional_on_a_grid():
    grid = make_phase_grid(2, 5.0, 21)
    out = bargmann_toeplitz(sigma(2).at, TaylorCoeffs(2, 1, {(1, 0): 1.0}), degree=3, grid=grid)
    assert out.coefficient((1, 0)) == pytest.approx(7.0, rel=1e-6)
    assert max(abs(b) for alpha, b in out.items() if alpha.entries != (1, 0)) < 1e-6
