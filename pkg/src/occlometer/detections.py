"""Detection data model plus the JSON document codec.

Input documents are self-describing (they carry frame dimensions and the
mask payload), so nothing downstream needs access to image pixels. One
document describes one image frame; see ``parse_frame_document`` for the
field-by-field contract.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .errors import ParseError, SchemaError, ValidationError
from .maskops import InstanceMask, rle_decode, rle_encode

if TYPE_CHECKING:  # pragma: no cover
    from .bsa import OcclusionResult

__all__ = [
    "KeypointName",
    "KEYPOINT_ORDER",
    "Keypoint",
    "BoundingBox",
    "CityPersonsPoints",
    "PedestrianInstance",
    "ImageFrame",
    "ResultEntry",
    "ResultDocument",
    "parse_frame_document",
    "serialize_frame_document",
    "serialize_results",
    "parse_result_document",
    "serialize_result_document",
]


class KeypointName(str, Enum):
    """The 17 named skeletal landmarks, in the fixed serialization order."""

    NOSE = "nose"
    LEFT_EYE = "left_eye"
    RIGHT_EYE = "right_eye"
    LEFT_EAR = "left_ear"
    RIGHT_EAR = "right_ear"
    LEFT_SHOULDER = "left_shoulder"
    RIGHT_SHOULDER = "right_shoulder"
    LEFT_ELBOW = "left_elbow"
    RIGHT_ELBOW = "right_elbow"
    LEFT_WRIST = "left_wrist"
    RIGHT_WRIST = "right_wrist"
    LEFT_HIP = "left_hip"
    RIGHT_HIP = "right_hip"
    LEFT_KNEE = "left_knee"
    RIGHT_KNEE = "right_knee"
    LEFT_ANKLE = "left_ankle"
    RIGHT_ANKLE = "right_ankle"


KEYPOINT_ORDER: tuple[KeypointName, ...] = tuple(KeypointName)


@dataclass(frozen=True)
class Keypoint:
    """One detected landmark: continuous pixel coordinates plus a score.

    Coordinates may lie outside the image bounds; that is how truncation
    reaches the classifier. The score is a detector confidence in [0, 1].
    """

    name: KeypointName
    x: float
    y: float
    score: float

    def __post_init__(self) -> None:
        if not isinstance(self.name, KeypointName):
            object.__setattr__(self, "name", KeypointName(self.name))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"keypoint {self.name.value}: coordinates must be finite")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(
                f"keypoint {self.name.value}: score {self.score} outside [0, 1]"
            )


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box; min corner never exceeds max corner."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(
                f"degenerate box ordering: ({self.x_min}, {self.y_min}, "
                f"{self.x_max}, {self.y_max})"
            )

    @property
    def area(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)


@dataclass(frozen=True)
class CityPersonsPoints:
    """Optional per-instance annotation: head-top and feet-mid landmarks
    of the full (possibly hidden) pedestrian extent."""

    head_top: tuple[float, float]
    feet_mid: tuple[float, float]


@dataclass(frozen=True)
class PedestrianInstance:
    """One detected pedestrian within a frame."""

    instance_id: str
    keypoints: tuple[Keypoint, ...]
    mask: InstanceMask
    bbox_visible: BoundingBox
    citypersons: CityPersonsPoints | None = None

    def __post_init__(self) -> None:
        names = tuple(kp.name for kp in self.keypoints)
        if names != KEYPOINT_ORDER:
            raise ValueError(
                f"instance '{self.instance_id}' must carry the 17 keypoints "
                "in canonical order"
            )

    def keypoint(self, name: KeypointName) -> Keypoint:
        return self.keypoints[KEYPOINT_ORDER.index(KeypointName(name))]


@dataclass(frozen=True)
class ImageFrame:
    """A frame's dimensions and its detected instances."""

    frame_id: str
    width: int
    height: int
    instances: tuple[PedestrianInstance, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"frame dimensions must be positive, got "
                             f"{self.width}x{self.height}")
        seen: set[str] = set()
        for inst in self.instances:
            if inst.instance_id in seen:
                raise ValueError(f"duplicate instance_id '{inst.instance_id}'")
            seen.add(inst.instance_id)
            if (inst.mask.width, inst.mask.height) != (self.width, self.height):
                raise ValueError(
                    f"instance '{inst.instance_id}' mask is "
                    f"{inst.mask.width}x{inst.mask.height}, frame is "
                    f"{self.width}x{self.height}"
                )


# --------------------------------------------------------------------------
# parsing helpers

_MISSING = object()


def _get(obj: Mapping, key: str, path: str):
    value = obj.get(key, _MISSING)
    if value is _MISSING:
        raise ParseError(f"missing required field '{_join(path, key)}'")
    return value


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _as_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"field '{path}' must be a string, got {type(value).__name__}")
    return value


def _as_int(value, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"field '{path}' must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ParseError(f"field '{path}' must be >= {minimum}, got {value}")
    return value


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"field '{path}' must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ParseError(f"field '{path}' must be finite, got {value!r}")
    return out


def _as_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"field '{path}' must be an array, got {type(value).__name__}")
    return value


def _as_obj(value, path: str) -> Mapping:
    if not isinstance(value, dict):
        raise ParseError(f"field '{path}' must be an object, got {type(value).__name__}")
    return value


def _parse_point(value, path: str) -> tuple[float, float]:
    arr = _as_list(value, path)
    if len(arr) != 2:
        raise ParseError(f"field '{path}' must be a [x, y] pair")
    return (_as_number(arr[0], f"{path}[0]"), _as_number(arr[1], f"{path}[1]"))


def _parse_bbox(value, path: str) -> BoundingBox:
    arr = _as_list(value, path)
    if len(arr) != 4:
        raise ParseError(f"field '{path}' must be [x_min, y_min, x_max, y_max]")
    coords = [_as_number(v, f"{path}[{i}]") for i, v in enumerate(arr)]
    if coords[0] > coords[2] or coords[1] > coords[3]:
        raise ParseError(f"field '{path}' has min corner beyond max corner")
    return BoundingBox(*coords)


def _parse_mask(value, path: str) -> InstanceMask:
    obj = _as_obj(value, path)
    fmt = _as_str(_get(obj, "format", path), _join(path, "format"))
    if fmt != "rle_rowmajor":
        raise ParseError(f"field '{_join(path, 'format')}' must be 'rle_rowmajor', got {fmt!r}")
    counts = _as_list(_get(obj, "counts", path), _join(path, "counts"))
    width = _as_int(_get(obj, "width", path), _join(path, "width"), minimum=1)
    height = _as_int(_get(obj, "height", path), _join(path, "height"), minimum=1)
    for i, c in enumerate(counts):
        if isinstance(c, bool) or not isinstance(c, int) or c < 0:
            raise ParseError(
                f"field '{_join(path, 'counts')}[{i}]' must be a non-negative integer"
            )
    try:
        return rle_decode(counts, width, height)
    except Exception as exc:
        raise ParseError(f"field '{path}' holds an invalid mask payload: {exc}") from exc


def _parse_keypoints(value, path: str, instance_id: str) -> tuple[Keypoint, ...]:
    arr = _as_list(value, path)
    if len(arr) != len(KEYPOINT_ORDER):
        raise SchemaError(
            f"instance '{instance_id}' has {len(arr)} keypoints, expected "
            f"{len(KEYPOINT_ORDER)}"
        )
    kps = []
    for i, raw in enumerate(arr):
        kp_path = f"{path}[{i}]"
        obj = _as_obj(raw, kp_path)
        name = _as_str(_get(obj, "name", kp_path), _join(kp_path, "name"))
        if name != KEYPOINT_ORDER[i].value:
            raise SchemaError(
                f"instance '{instance_id}': keypoint {i} is '{name}', expected "
                f"'{KEYPOINT_ORDER[i].value}' (fixed order)"
            )
        x = _as_number(_get(obj, "x", kp_path), _join(kp_path, "x"))
        y = _as_number(_get(obj, "y", kp_path), _join(kp_path, "y"))
        score = _as_number(_get(obj, "score", kp_path), _join(kp_path, "score"))
        if not 0.0 <= score <= 1.0:
            raise ParseError(
                f"field '{_join(kp_path, 'score')}' must lie in [0, 1], got {score}"
            )
        kps.append(Keypoint(KEYPOINT_ORDER[i], x, y, score))
    return tuple(kps)


def parse_frame_document(text: str) -> ImageFrame:
    """Parse and validate one frame document.

    Raises ParseError for malformed JSON or field-level violations (the
    message names the field), SchemaError for structural violations such
    as a wrong keypoint count, and ValidationError when an instance mask
    does not match the frame dimensions.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")

    frame_id = _as_str(_get(doc, "frame_id", ""), "frame_id")
    width = _as_int(_get(doc, "width", ""), "width", minimum=1)
    height = _as_int(_get(doc, "height", ""), "height", minimum=1)
    raw_instances = _as_list(_get(doc, "instances", ""), "instances")

    instances: list[PedestrianInstance] = []
    seen: set[str] = set()
    for idx, raw in enumerate(raw_instances):
        path = f"instances[{idx}]"
        obj = _as_obj(raw, path)
        instance_id = _as_str(_get(obj, "instance_id", path), _join(path, "instance_id"))
        if instance_id in seen:
            raise SchemaError(f"duplicate instance_id '{instance_id}' in frame '{frame_id}'")
        seen.add(instance_id)
        bbox = _parse_bbox(_get(obj, "bbox_visible", path), _join(path, "bbox_visible"))
        keypoints = _parse_keypoints(
            _get(obj, "keypoints", path), _join(path, "keypoints"), instance_id
        )
        mask = _parse_mask(_get(obj, "mask", path), _join(path, "mask"))
        if (mask.width, mask.height) != (width, height):
            raise ValidationError(
                f"instance '{instance_id}' mask is {mask.width}x{mask.height}, "
                f"frame '{frame_id}' is {width}x{height}"
            )
        citypersons = None
        if obj.get("citypersons") is not None:
            cp_path = _join(path, "citypersons")
            cp = _as_obj(obj["citypersons"], cp_path)
            citypersons = CityPersonsPoints(
                head_top=_parse_point(_get(cp, "head_top", cp_path), _join(cp_path, "head_top")),
                feet_mid=_parse_point(_get(cp, "feet_mid", cp_path), _join(cp_path, "feet_mid")),
            )
        instances.append(
            PedestrianInstance(instance_id, keypoints, mask, bbox, citypersons)
        )
    return ImageFrame(frame_id, width, height, tuple(instances))


# --------------------------------------------------------------------------
# serialization

def _mask_to_dict(mask: InstanceMask) -> dict:
    return {
        "format": "rle_rowmajor",
        "counts": rle_encode(mask),
        "width": mask.width,
        "height": mask.height,
    }


def _instance_to_dict(inst: PedestrianInstance) -> dict:
    out = {
        "instance_id": inst.instance_id,
        "bbox_visible": [
            inst.bbox_visible.x_min,
            inst.bbox_visible.y_min,
            inst.bbox_visible.x_max,
            inst.bbox_visible.y_max,
        ],
        "keypoints": [
            {"name": kp.name.value, "x": kp.x, "y": kp.y, "score": kp.score}
            for kp in inst.keypoints
        ],
        "mask": _mask_to_dict(inst.mask),
    }
    if inst.citypersons is not None:
        out["citypersons"] = {
            "head_top": list(inst.citypersons.head_top),
            "feet_mid": list(inst.citypersons.feet_mid),
        }
    return out


def serialize_frame_document(frame: ImageFrame) -> str:
    """Emit the Input Schema document for a frame. Round-trips exactly
    through ``parse_frame_document``."""
    doc = {
        "frame_id": frame.frame_id,
        "width": frame.width,
        "height": frame.height,
        "instances": [_instance_to_dict(inst) for inst in frame.instances],
    }
    return json.dumps(doc, indent=2) + "\n"


# --------------------------------------------------------------------------
# result documents

@dataclass(frozen=True)
class ResultEntry:
    """One instance's row in an output document (values as serialized)."""

    instance_id: str
    occlusion_percent: float
    visible_bsa_percent: float
    occluded_parts: tuple[str, ...]
    keypoint_visibility: tuple[bool, ...]
    category: str | None = None


@dataclass(frozen=True)
class ResultDocument:
    frame_id: str
    entries: tuple[ResultEntry, ...]


def serialize_results(
    frame: ImageFrame,
    results: Sequence["OcclusionResult"],
    categories: Mapping[str, str] | None = None,
) -> str:
    """Emit the Output Schema document for a frame's classification results.

    Results are matched to instances by instance_id; the document preserves
    the frame's instance order. Percentages are rounded to 2 decimals.
    """
    by_id = {}
    for res in results:
        if res.instance_id in by_id:
            raise ValidationError(f"duplicate result for instance '{res.instance_id}'")
        by_id[res.instance_id] = res
    known = {inst.instance_id for inst in frame.instances}
    unknown = sorted(set(by_id) - known)
    if unknown:
        raise ValidationError(
            f"results reference unknown instance ids: {', '.join(unknown)}"
        )
    missing = [i.instance_id for i in frame.instances if i.instance_id not in by_id]
    if missing:
        raise ValidationError(
            f"missing results for instance ids: {', '.join(missing)}"
        )
    entries = []
    for inst in frame.instances:
        res = by_id[inst.instance_id]
        entries.append(
            ResultEntry(
                instance_id=inst.instance_id,
                occlusion_percent=round(res.occlusion_percent, 2),
                visible_bsa_percent=round(res.visible_bsa_percent, 2),
                occluded_parts=tuple(res.occluded_parts_ordered()),
                keypoint_visibility=tuple(v.visible for v in res.keypoint_verdicts),
                category=None if categories is None else categories.get(inst.instance_id),
            )
        )
    return serialize_result_document(ResultDocument(frame.frame_id, tuple(entries)))


def serialize_result_document(doc: ResultDocument) -> str:
    payload = {"frame_id": doc.frame_id, "instances": []}
    for e in doc.entries:
        entry = {
            "instance_id": e.instance_id,
            "occlusion_percent": round(e.occlusion_percent, 2),
            "visible_bsa_percent": round(e.visible_bsa_percent, 2),
            "occluded_parts": list(e.occluded_parts),
            "keypoint_visibility": [bool(v) for v in e.keypoint_visibility],
        }
        if e.category is not None:
            entry["category"] = e.category
        payload["instances"].append(entry)
    return json.dumps(payload, indent=2) + "\n"


def parse_result_document(text: str) -> ResultDocument:
    """Parse an Output Schema document back into entries (used by tests
    and downstream consumers; inverse of ``serialize_result_document``)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    frame_id = _as_str(_get(doc, "frame_id", ""), "frame_id")
    entries = []
    for idx, raw in enumerate(_as_list(_get(doc, "instances", ""), "instances")):
        path = f"instances[{idx}]"
        obj = _as_obj(raw, path)
        vis = _as_list(_get(obj, "keypoint_visibility", path), _join(path, "keypoint_visibility"))
        if len(vis) != len(KEYPOINT_ORDER) or not all(isinstance(v, bool) for v in vis):
            raise SchemaError(
                f"field '{_join(path, 'keypoint_visibility')}' must be 17 booleans"
            )
        parts = _as_list(_get(obj, "occluded_parts", path), _join(path, "occluded_parts"))
        category = obj.get("category")
        if category is not None:
            category = _as_str(category, _join(path, "category"))
        entries.append(
            ResultEntry(
                instance_id=_as_str(_get(obj, "instance_id", path), _join(path, "instance_id")),
                occlusion_percent=_as_number(
                    _get(obj, "occlusion_percent", path), _join(path, "occlusion_percent")
                ),
                visible_bsa_percent=_as_number(
                    _get(obj, "visible_bsa_percent", path), _join(path, "visible_bsa_percent")
                ),
                occluded_parts=tuple(_as_str(p, _join(path, "occluded_parts")) for p in parts),
                keypoint_visibility=tuple(vis),
                category=category,
            )
        )
    return ResultDocument(frame_id, tuple(entries))
