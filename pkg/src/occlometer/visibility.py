"""Two-step keypoint visibility: score threshold plus mask cross-reference.

A keypoint counts as visible only when its score clears the threshold AND
its rounded location lies inside the image AND inside the instance's own
mask. The checks run in the fixed order image-bounds, threshold, mask, so
the recorded reason is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .detections import KeypointName, PedestrianInstance
from .maskops import round_pixel

__all__ = [
    "VisibilityReason",
    "VisibilityConfig",
    "KeypointVerdict",
    "resolve_keypoint_visibility",
]

DEFAULT_SCORE_THRESHOLD = 0.3


class VisibilityReason(str, Enum):
    VISIBLE = "visible"
    BELOW_THRESHOLD = "below_threshold"
    OUTSIDE_MASK = "outside_mask"
    OUTSIDE_IMAGE = "outside_image"


@dataclass(frozen=True)
class VisibilityConfig:
    """Tunable knobs for the visibility resolution step."""

    score_threshold: float = DEFAULT_SCORE_THRESHOLD

    def __post_init__(self) -> None:
        if not 0.0 <= self.score_threshold <= 1.0:
            raise ValueError(
                f"score_threshold must lie in [0, 1], got {self.score_threshold}"
            )


@dataclass(frozen=True)
class KeypointVerdict:
    name: KeypointName
    visible: bool
    reason: VisibilityReason

    def __post_init__(self) -> None:
        if self.visible != (self.reason is VisibilityReason.VISIBLE):
            raise ValueError("visible flag must agree with reason")


def resolve_keypoint_visibility(
    instance: PedestrianInstance,
    frame_width: int,
    frame_height: int,
    config: VisibilityConfig,
) -> tuple[KeypointVerdict, ...]:
    """Resolve all 17 keypoints of one instance to visibility verdicts."""
    verdicts = []
    for kp in instance.keypoints:
        col = round_pixel(kp.x)
        row = round_pixel(kp.y)
        if not (0 <= col < frame_width and 0 <= row < frame_height):
            reason = VisibilityReason.OUTSIDE_IMAGE
        elif kp.score < config.score_threshold:
            reason = VisibilityReason.BELOW_THRESHOLD
        elif not instance.mask.contains(kp.x, kp.y):
            reason = VisibilityReason.OUTSIDE_MASK
        else:
            reason = VisibilityReason.VISIBLE
        verdicts.append(
            KeypointVerdict(kp.name, reason is VisibilityReason.VISIBLE, reason)
        )
    return tuple(verdicts)
