"""Frame document assembly.

The adapter writes the exact JSON document format the occlusion toolkit
reads: frame metadata plus one instance per joined proposal, keypoints
in the fixed 17-name order, and masks as row-major run-length counts
alternating unset/set starting with the unset run.
"""

import json

import numpy as np

from .join import JoinedInstance

KEYPOINT_NAMES = (
    "nose",
    "left_eye",
    "right_eye",
    "left_ear",
    "right_ear",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "left_hip",
    "right_hip",
    "left_knee",
    "right_knee",
    "left_ankle",
    "right_ankle",
)


def rle_counts(bits: np.ndarray) -> list[int]:
    """Row-major run lengths, alternating unset/set, leading unset run."""
    flat = np.asarray(bits, dtype=bool).ravel()
    if flat.size == 0:
        return []
    changes = np.flatnonzero(np.diff(flat)) + 1
    bounds = np.concatenate(([0], changes, [flat.size]))
    runs = np.diff(bounds).tolist()
    if flat[0]:  # first run must count unset pixels, even if zero
        runs.insert(0, 0)
    return [int(r) for r in runs]


def minmax_squash(values: np.ndarray) -> np.ndarray:
    """Map raw scores onto [0, 1] preserving order.

    A constant vector maps to all ones: with no spread there is nothing
    to rank, and the schema only promises the range.
    """
    values = np.asarray(values, dtype=np.float64)
    low = float(values.min())
    high = float(values.max())
    if high == low:
        return np.ones_like(values)
    return (values - low) / (high - low)


def build_document(
    frame_id: str,
    width: int,
    height: int,
    instances: list[JoinedInstance],
    squash_point_scores: bool,
) -> dict:
    """Assemble the frame document for one image.

    When `squash_point_scores` is set (backends with unbounded keypoint
    scores), the squash is computed over every point score in the frame
    so relative confidence across instances survives.
    """
    all_scores = None
    if squash_point_scores and instances:
        raw = np.concatenate([inst.keypoints.point_scores for inst in instances])
        all_scores = minmax_squash(raw)

    out_instances = []
    for idx, inst in enumerate(instances):
        if all_scores is not None:
            scores = all_scores[idx * 17:(idx + 1) * 17]
        else:
            scores = np.clip(inst.keypoints.point_scores, 0.0, 1.0)
        keypoints = [
            {
                "name": name,
                "x": float(inst.keypoints.points[k, 0]),
                "y": float(inst.keypoints.points[k, 1]),
                "score": float(scores[k]),
            }
            for k, name in enumerate(KEYPOINT_NAMES)
        ]
        x0, y0, x1, y1 = inst.mask.box
        out_instances.append(
            {
                "instance_id": f"{frame_id}_{idx}",
                "bbox_visible": [float(x0), float(y0), float(x1), float(y1)],
                "keypoints": keypoints,
                "mask": {
                    "format": "rle_rowmajor",
                    "width": width,
                    "height": height,
                    "counts": rle_counts(inst.mask.bits),
                },
            }
        )
    return {
        "frame_id": frame_id,
        "width": width,
        "height": height,
        "instances": out_instances,
    }


def serialize_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"
