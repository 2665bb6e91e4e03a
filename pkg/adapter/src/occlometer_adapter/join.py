"""Associating keypoint proposals with mask proposals.

The two models propose people independently, so their outputs must be
joined before a document can be emitted. A keypoint proposal claims the
mask containing the greatest number of its 17 points (rounded to pixel
centers the same way the downstream classifier rounds); ties fall back
to the overlap (IoU) of the two proposals' boxes. Assignment is greedy
in descending keypoint-proposal confidence and each mask is used at most
once. A pairing with zero contained points and zero box overlap is
evidence of nothing and is dropped.
"""

import math
from dataclasses import dataclass

from .backends import KeypointProposal, MaskProposal


@dataclass(frozen=True)
class JoinedInstance:
    keypoints: KeypointProposal
    mask: MaskProposal
    contained: int  # how many of the 17 points the mask contains


def _round_pixel(value: float) -> int:
    return int(math.floor(value + 0.5))


def _containment(kp: KeypointProposal, mask: MaskProposal) -> int:
    height, width = mask.bits.shape
    count = 0
    for x, y in kp.points:
        col = _round_pixel(float(x))
        row = _round_pixel(float(y))
        if 0 <= col < width and 0 <= row < height and mask.bits[row, col]:
            count += 1
    return count


def box_iou(a: tuple, b: tuple) -> float:
    ax0, ay0, ax1, ay1 = a
    bx0, by0, bx1, by1 = b
    iw = min(ax1, bx1) - max(ax0, bx0)
    ih = min(ay1, by1) - max(ay0, by0)
    if iw <= 0.0 or ih <= 0.0:
        return 0.0
    inter = iw * ih
    union = (ax1 - ax0) * (ay1 - ay0) + (bx1 - bx0) * (by1 - by0) - inter
    return inter / union if union > 0.0 else 0.0


def join_proposals(
    keypoint_proposals: list[KeypointProposal],
    mask_proposals: list[MaskProposal],
) -> list[JoinedInstance]:
    """Pair each keypoint proposal with its best available mask."""
    order = sorted(
        range(len(keypoint_proposals)),
        key=lambda i: (-keypoint_proposals[i].score, i),
    )
    taken = [False] * len(mask_proposals)
    joined = []
    for i in order:
        kp = keypoint_proposals[i]
        best = None
        best_key = None
        for j, mask in enumerate(mask_proposals):
            if taken[j]:
                continue
            contained = _containment(kp, mask)
            overlap = box_iou(kp.box, mask.box)
            if contained == 0 and overlap == 0.0:
                continue
            key = (contained, overlap, -j)  # earlier proposal wins last tie
            if best_key is None or key > best_key:
                best, best_key = j, key
        if best is None:
            continue
        taken[best] = True
        joined.append(
            JoinedInstance(
                keypoints=kp,
                mask=mask_proposals[best],
                contained=best_key[0],
            )
        )
    # emit in keypoint-confidence order to keep instance ids stable
    return joined
