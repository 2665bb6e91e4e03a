"""2D body-surface-area model and the occlusion level classifier.

Eleven semantic parts carry fixed surface-area weights (an adaptation of
the Wallace burn-assessment convention to a single visible body side).
A part is visible when its required keypoints are visible: the head needs
ANY facial landmark, every other part needs BOTH of its listed joints.
The weights sum to 99 (the groin's 1% has no keypoint pair), so visible
surface is normalized by 99 and a fully visible pedestrian reports 0%.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, Sequence

from .detections import ImageFrame, KeypointName, PedestrianInstance, KEYPOINT_ORDER
from .errors import ContractError
from .visibility import KeypointVerdict, VisibilityConfig, resolve_keypoint_visibility

__all__ = [
    "SemanticPart",
    "BsaModel",
    "OcclusionResult",
    "BSA_MODEL",
    "PART_ORDER",
    "TOTAL_BSA_PERCENT",
    "part_visibility",
    "visible_part_names",
    "classify_occlusion",
    "classify_frame",
]

_N = KeypointName

ANY = "any"
ALL = "all"


@dataclass(frozen=True)
class SemanticPart:
    """One body part: its area weight and its keypoint requirement."""

    name: str
    bsa_percent: float
    mode: str  # ANY or ALL over required_keypoints
    required_keypoints: tuple[KeypointName, ...]

    def is_visible(self, visible: AbstractSet[KeypointName]) -> bool:
        if self.mode == ANY:
            return any(k in visible for k in self.required_keypoints)
        return all(k in visible for k in self.required_keypoints)


@dataclass(frozen=True)
class BsaModel:
    """The fixed 11-part surface model."""

    parts: tuple[SemanticPart, ...]

    def __post_init__(self) -> None:
        names = [p.name for p in self.parts]
        if len(set(names)) != len(names):
            raise ContractError("part names must be unique")
        total = sum(p.bsa_percent for p in self.parts)
        if abs(total - 99.0) > 1e-12:
            raise ContractError(f"part percentages must sum to 99, got {total}")

    @property
    def total_percent(self) -> float:
        return sum(p.bsa_percent for p in self.parts)

    def part(self, name: str) -> SemanticPart:
        for p in self.parts:
            if p.name == name:
                return p
        raise ContractError(f"unknown part '{name}'")


BSA_MODEL = BsaModel(
    parts=(
        SemanticPart(
            "head",
            9.0,
            ANY,
            (_N.NOSE, _N.LEFT_EYE, _N.RIGHT_EYE, _N.LEFT_EAR, _N.RIGHT_EAR),
        ),
        SemanticPart("upper_torso", 18.0, ALL, (_N.LEFT_SHOULDER, _N.RIGHT_SHOULDER)),
        SemanticPart("upper_left_arm", 4.5, ALL, (_N.LEFT_SHOULDER, _N.LEFT_ELBOW)),
        SemanticPart("lower_left_arm", 4.5, ALL, (_N.LEFT_ELBOW, _N.LEFT_WRIST)),
        SemanticPart("upper_right_arm", 4.5, ALL, (_N.RIGHT_SHOULDER, _N.RIGHT_ELBOW)),
        SemanticPart("lower_right_arm", 4.5, ALL, (_N.RIGHT_ELBOW, _N.RIGHT_WRIST)),
        SemanticPart("lower_torso", 18.0, ALL, (_N.LEFT_HIP, _N.RIGHT_HIP)),
        SemanticPart("upper_left_leg", 9.0, ALL, (_N.LEFT_HIP, _N.LEFT_KNEE)),
        SemanticPart("lower_left_leg", 9.0, ALL, (_N.LEFT_KNEE, _N.LEFT_ANKLE)),
        SemanticPart("upper_right_leg", 9.0, ALL, (_N.RIGHT_HIP, _N.RIGHT_KNEE)),
        SemanticPart("lower_right_leg", 9.0, ALL, (_N.RIGHT_KNEE, _N.RIGHT_ANKLE)),
    )
)

PART_ORDER: tuple[str, ...] = tuple(p.name for p in BSA_MODEL.parts)
TOTAL_BSA_PERCENT = 99.0


@dataclass(frozen=True)
class OcclusionResult:
    """Classifier output for one instance."""

    instance_id: str
    visible_parts: frozenset[str]
    occluded_parts: frozenset[str]
    visible_bsa_percent: float
    occlusion_percent: float
    keypoint_verdicts: tuple[KeypointVerdict, ...]

    def occluded_parts_ordered(self) -> tuple[str, ...]:
        """Occluded part names in the canonical part order."""
        return tuple(p for p in PART_ORDER if p in self.occluded_parts)

    def visible_parts_ordered(self) -> tuple[str, ...]:
        return tuple(p for p in PART_ORDER if p in self.visible_parts)


def visible_part_names(visible_keypoints: AbstractSet[KeypointName]) -> frozenset[str]:
    """Part names whose keypoint requirement is met by the given set."""
    return frozenset(
        p.name for p in BSA_MODEL.parts if p.is_visible(visible_keypoints)
    )


def part_visibility(verdicts: Sequence[KeypointVerdict]) -> frozenset[str]:
    """Group keypoint verdicts into the set of visible part names.

    Requires exactly one verdict per keypoint name.
    """
    names = [v.name for v in verdicts]
    if sorted(n.value for n in names) != sorted(n.value for n in KEYPOINT_ORDER):
        raise ContractError("verdicts must cover each keypoint name exactly once")
    visible = {v.name for v in verdicts if v.visible}
    return visible_part_names(visible)


def classify_occlusion(
    instance: PedestrianInstance,
    frame: ImageFrame,
    config: VisibilityConfig | None = None,
) -> OcclusionResult:
    """Classify one instance's occlusion level inside its frame."""
    config = config or VisibilityConfig()
    verdicts = resolve_keypoint_visibility(instance, frame.width, frame.height, config)
    visible = part_visibility(verdicts)
    occluded = frozenset(PART_ORDER) - visible
    visible_sum = sum(BSA_MODEL.part(name).bsa_percent for name in visible)
    visible_bsa_percent = 100.0 * visible_sum / TOTAL_BSA_PERCENT
    return OcclusionResult(
        instance_id=instance.instance_id,
        visible_parts=visible,
        occluded_parts=occluded,
        visible_bsa_percent=visible_bsa_percent,
        occlusion_percent=100.0 - visible_bsa_percent,
        keypoint_verdicts=verdicts,
    )


def classify_frame(
    frame: ImageFrame, config: VisibilityConfig | None = None
) -> list[OcclusionResult]:
    """Classify every instance in a frame, preserving instance order."""
    return [classify_occlusion(inst, frame, config) for inst in frame.instances]
