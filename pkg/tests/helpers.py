"""Shared builders for the test suite."""

import numpy as np

from occlometer import (
    BoundingBox,
    CityPersonsPoints,
    ImageFrame,
    InstanceMask,
    KEYPOINT_ORDER,
    Keypoint,
    PedestrianInstance,
)

FRAME_W = 24
FRAME_H = 32


def grid_mask(rows):
    """Mask from ASCII art: '#' set, anything else unset."""
    bits = np.array([[ch == "#" for ch in row] for row in rows], dtype=bool)
    return InstanceMask(bits)


def solid_mask(width=FRAME_W, height=FRAME_H):
    return InstanceMask(np.ones((height, width), dtype=bool))


def empty_mask(width=FRAME_W, height=FRAME_H):
    return InstanceMask(np.zeros((height, width), dtype=bool))


def default_position(index):
    # a diagonal spread that stays interior to the default frame
    return (2.0 + index, 3.0 + index)


def make_keypoints(positions=None, scores=None, default_score=1.0):
    """All 17 keypoints in canonical order.

    positions/scores are optional dicts keyed by keypoint name string;
    anything not named falls back to the diagonal default layout.
    """
    positions = positions or {}
    scores = scores or {}
    kps = []
    for i, name in enumerate(KEYPOINT_ORDER):
        x, y = positions.get(name.value, default_position(i))
        kps.append(Keypoint(name, x, y, scores.get(name.value, default_score)))
    return tuple(kps)


def make_instance(
    mask=None,
    positions=None,
    scores=None,
    instance_id="p0",
    bbox=None,
    citypersons=None,
):
    mask = mask if mask is not None else solid_mask()
    return PedestrianInstance(
        instance_id=instance_id,
        keypoints=make_keypoints(positions, scores),
        mask=mask,
        bbox_visible=bbox or BoundingBox(0.0, 0.0, float(mask.width), float(mask.height)),
        citypersons=citypersons,
    )


def make_frame(*instances, frame_id="frame", width=None, height=None):
    if not instances:
        return ImageFrame(frame_id, FRAME_W, FRAME_H, ())
    w = width if width is not None else instances[0].mask.width
    h = height if height is not None else instances[0].mask.height
    return ImageFrame(frame_id, w, h, tuple(instances))


def cp_points(head_top=(12.0, 2.0), feet_mid=(12.0, 30.0)):
    return CityPersonsPoints(head_top=head_top, feet_mid=feet_mid)
