"""
Constructive ball cover of the annulus 4 <= |z| <= R_max in C.

Shell [k, k+1) gets k * n_refine concentric circles, spaced 1/(k n_refine)
apart; each circle carries equally spaced centers at most 1/(k+1) apart and
every ball has radius 1/(k+1) <= 1/|z_j|. A last circle sits on |z| = R_max.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from bargfock.config import COVER_SAMPLES
from bargfock.errors import ConstructionFailure, InvalidArgumentError

logger = logging.getLogger(__name__)

INNER_RADIUS = 4.0
INFLATION = 4.0
# bound on how many inflated balls B(z_j, 4 r_j) may share a point
MAX_OVERLAP = 64


@dataclass(frozen=True, eq=False)
class BallCover:
    """Ball centers and radii covering {4 <= |z| <= r_max}"""
    centers: np.ndarray
    radii: np.ndarray
    r_max: float
    n_refine: int
    max_overlap: int

    def __len__(self) -> int:
        return len(self.centers)

    def balls(self) -> list[tuple[complex, float]]:
        return [(complex(c), float(r)) for c, r in zip(self.centers, self.radii)]


@dataclass(frozen=True)
class CoverDiagnostics:
    sampled: int
    uncovered: int
    worst_radius_product: float
    min_center_modulus: float
    max_overlap: int

    @property
    def covers(self) -> bool:
        return self.uncovered == 0


def _circle(radius: float, k: int, index: int) -> np.ndarray:
    count = math.ceil(2 * math.pi * radius * (k + 1))
    points = radius * np.exp(2j * np.pi * np.arange(count) / count)
    spacing = 2 * radius * math.sin(math.pi / count)
    if spacing > 1.0 / (k + 1) + 1e-12 or spacing < 1.0 / (2 * k):
        raise ConstructionFailure(
            f"circle {index} (|z| = {radius:.4f}) has center spacing {spacing:.4f} outside "
            f"[1/(2k), 1/(k+1)] for k = {k}",
            sphere_index=index,
        )
    return points


def build_ball_cover(r_max: float, n_refine: int = 1, samples: int = COVER_SAMPLES) -> BallCover:
    """
    Build the cover and measure its overlap.

    Args:
        r_max: outer radius, at least 5
        n_refine: circles per unit radius per k; below 1 some shells get none
        samples: per-axis resolution of the overlap measurement

    Raises:
        InvalidArgumentError: r_max < 5
        ConstructionFailure: a shell gets no circle, a circle's spacing is off, a sampled
            annulus point is uncovered or the overlap exceeds MAX_OVERLAP
    """
    if not r_max >= 5.0:
        raise InvalidArgumentError(f"R_max must be at least 5, got {r_max}")

    centers, radii = [], []
    index = 0
    last_k = math.ceil(r_max) - 1
    for k in range(int(INNER_RADIUS), last_k + 1):
        circles = int(math.floor(k * n_refine))
        if circles < 1:
            raise ConstructionFailure(
                f"n_refine={n_refine} leaves shell [{k}, {k + 1}) without circles", sphere_index=index
            )
        for l in range(circles):
            radius = k + l / circles
            if radius >= r_max:
                break
            points = _circle(radius, k, index)
            centers.append(points)
            radii.append(np.full(len(points), 1.0 / (k + 1)))
            index += 1
    points = _circle(r_max, last_k, index)
    centers.append(points)
    radii.append(np.full(len(points), 1.0 / (last_k + 1)))

    centers = np.concatenate(centers)
    radii = np.concatenate(radii)
    diagnostics = _measure(centers, radii, r_max, samples)
    logger.info("cover of R_max=%g: %d balls on %d circles, max overlap %d",
                r_max, len(centers), index + 1, diagnostics.max_overlap)
    if not diagnostics.covers:
        raise ConstructionFailure(f"{diagnostics.uncovered} of {diagnostics.sampled} annulus samples lie in no ball")
    if diagnostics.max_overlap > MAX_OVERLAP:
        raise ConstructionFailure(
            f"inflated balls overlap {diagnostics.max_overlap} times, more than {MAX_OVERLAP} (n_refine={n_refine})"
        )
    return BallCover(centers, radii, float(r_max), int(n_refine), diagnostics.max_overlap)


def _annulus_samples(r_max: float, samples: int) -> np.ndarray:
    axis = np.linspace(-r_max, r_max, samples)
    x, y = np.meshgrid(axis, axis, indexing="ij")
    modulus = np.hypot(x, y)
    keep = (modulus >= INNER_RADIUS) & (modulus <= r_max)
    return np.stack([x[keep], y[keep]], axis=1)


def _measure(centers: np.ndarray, radii: np.ndarray, r_max: float, samples: int) -> CoverDiagnostics:
    points = _annulus_samples(r_max, samples)
    tree = cKDTree(points)
    xy = np.stack([centers.real, centers.imag], axis=1)

    hits = tree.query_ball_point(xy, radii, return_sorted=False)
    covered = np.zeros(len(points), dtype=bool)
    covered[np.concatenate([np.asarray(h, dtype=int) for h in hits])] = True

    inflated = tree.query_ball_point(xy, INFLATION * radii, return_sorted=False)
    overlap = np.bincount(np.concatenate([np.asarray(h, dtype=int) for h in inflated]), minlength=len(points))

    return CoverDiagnostics(
        sampled=len(points),
        uncovered=int((~covered).sum()),
        worst_radius_product=float(np.max(radii * np.abs(centers))),
        min_center_modulus=float(np.min(np.abs(centers))),
        max_overlap=int(overlap.max()),
    )


def cover_diagnostics(cover: BallCover, samples: int = COVER_SAMPLES) -> CoverDiagnostics:
    """
    Machine-check the three cover properties on a samples x samples grid:
    every annulus point lies in a ball, r_j |z_j| <= 1 with |z_j| >= 4, and
    the inflated balls B(z_j, 4 r_j) overlap at most max_overlap times.
    """
    return _measure(cover.centers, cover.radii, cover.r_max, samples)
