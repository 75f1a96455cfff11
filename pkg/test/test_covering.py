import pytest

from bargfock.errors import ConstructionFailure, InvalidArgumentError
from bargfock.fock.covering import INNER_RADIUS, build_ball_cover, cover_diagnostics


def test_cover_properties():
    cover = build_ball_cover(6.0)
    diagnostics = cover_diagnostics(cover)
    assert diagnostics.covers
    assert diagnostics.sampled > 0
    assert diagnostics.worst_radius_product <= 1.0 + 1e-12
    assert diagnostics.min_center_modulus >= INNER_RADIUS - 1e-12
    assert diagnostics.max_overlap <= 64
    assert cover.max_overlap == diagnostics.max_overlap


def test_cover_balls():
    cover = build_ball_cover(5.0)
    balls = cover.balls()
    assert len(balls) == len(cover)
    center, radius = balls[0]
    assert abs(center) == pytest.approx(4.0)
    assert radius == pytest.approx(0.2)


def test_cover_needs_outer_radius():
    with pytest.raises(InvalidArgumentError):
        build_ball_cover(4.5)


def test_cover_refinement_too_coarse():
    with pytest.raises(ConstructionFailure) as info:
        build_ball_cover(6.0, n_refine=0.2)
    assert info.value.sphere_index == 0


@pytest.mark.parametrize("n_refine", [2, 3])
def test_cover_refinement_too_fine_overlaps(n_refine):
    with pytest.raises(ConstructionFailure, match="overlap"):
        build_ball_cover(8.0, n_refine=n_refine)
