"""Literature occlusion estimators used for comparison.

Two estimators: the CityPersons full-box method (head-to-feet line plus a
fixed 0.41 width/height aspect box) and the bounding-box occlusion rate
(fraction of a target box covered by the union of its overlaps with other
boxes). Both are reported with the same orientation as the rest of the
toolkit: 0 means fully visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .detections import BoundingBox
from .errors import DegenerateInputError

__all__ = [
    "CITYPERSONS_ASPECT",
    "CityPersonsAnnotation",
    "FullExtentBox",
    "citypersons_full_box",
    "citypersons_occlusion",
    "bbox_occlusion_rate",
]

CITYPERSONS_ASPECT = 0.41  # width / height


@dataclass(frozen=True)
class CityPersonsAnnotation:
    """Head-top and feet-mid landmarks plus the visible-extent box."""

    head_top: tuple[float, float]
    feet_mid: tuple[float, float]
    bbox_visible: BoundingBox

    def __post_init__(self) -> None:
        if self.feet_mid[1] <= self.head_top[1]:
            raise DegenerateInputError(
                "feet must lie below the head (zero or negative body height)"
            )


@dataclass(frozen=True)
class FullExtentBox:
    """Estimated full-pedestrian box at the fixed aspect ratio."""

    bbox_full: BoundingBox
    aspect_ratio: float = CITYPERSONS_ASPECT

    def __post_init__(self) -> None:
        w = self.bbox_full.x_max - self.bbox_full.x_min
        h = self.bbox_full.y_max - self.bbox_full.y_min
        if h <= 0 or abs(w / h - self.aspect_ratio) > 1e-9:
            raise DegenerateInputError(
                f"full box must have aspect ratio {self.aspect_ratio}, got "
                f"{w}x{h}"
            )


def citypersons_full_box(ann: CityPersonsAnnotation) -> FullExtentBox:
    """Estimate the full pedestrian box from the head-to-feet line.

    The box spans the line vertically, takes width 0.41 x height, and is
    centered horizontally on the line's x midpoint.
    """
    height = ann.feet_mid[1] - ann.head_top[1]
    if height <= 0:
        raise DegenerateInputError("head-to-feet height must be positive")
    width = CITYPERSONS_ASPECT * height
    x_mid = (ann.head_top[0] + ann.feet_mid[0]) / 2.0
    box = BoundingBox(
        x_min=x_mid - width / 2.0,
        y_min=ann.head_top[1],
        x_max=x_mid + width / 2.0,
        y_max=ann.feet_mid[1],
    )
    return FullExtentBox(bbox_full=box)


def citypersons_occlusion(ann: CityPersonsAnnotation) -> float:
    """Occlusion fraction 1 - Area(BB-vis)/Area(BB-full), clamped to [0, 1].

    The clamp absorbs wide poses whose visible box exceeds the fixed-aspect
    full box.
    """
    full = citypersons_full_box(ann).bbox_full
    if full.area <= 0:
        raise DegenerateInputError("full box has zero area")
    ratio = ann.bbox_visible.area / full.area
    return min(max(1.0 - ratio, 0.0), 1.0)


def _intersect(a: BoundingBox, b: BoundingBox) -> tuple[float, float, float, float] | None:
    x0 = max(a.x_min, b.x_min)
    y0 = max(a.y_min, b.y_min)
    x1 = min(a.x_max, b.x_max)
    y1 = min(a.y_max, b.y_max)
    if x1 <= x0 or y1 <= y0:
        return None
    return (x0, y0, x1, y1)


def _union_area(rects: Sequence[tuple[float, float, float, float]]) -> float:
    # exact union via x-coordinate sweep; per slab, merge the y intervals
    xs = sorted({r[0] for r in rects} | {r[2] for r in rects})
    total = 0.0
    for x0, x1 in zip(xs, xs[1:]):
        if x1 <= x0:
            continue
        spans = sorted(
            (r[1], r[3]) for r in rects if r[0] <= x0 and r[2] >= x1
        )
        covered = 0.0
        cur_lo: float | None = None
        cur_hi = 0.0
        for lo, hi in spans:
            if cur_lo is None:
                cur_lo, cur_hi = lo, hi
            elif lo <= cur_hi:
                cur_hi = max(cur_hi, hi)
            else:
                covered += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
        if cur_lo is not None:
            covered += cur_hi - cur_lo
        total += covered * (x1 - x0)
    return total


def bbox_occlusion_rate(target: BoundingBox, others: Sequence[BoundingBox]) -> float:
    """Fraction of the target box covered by the union of its overlaps
    with the other boxes."""
    if target.area <= 0:
        raise DegenerateInputError("target box has zero area")
    overlaps = [r for r in (_intersect(target, o) for o in others) if r is not None]
    if not overlaps:
        return 0.0
    return min(_union_area(overlaps) / target.area, 1.0)
