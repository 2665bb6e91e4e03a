"""Synthetic pedestrian scenes with exact masks, keypoints, and occlusion.

Figures are stick bodies rasterized from capsules (limbs, torso) and a
disc (head) whose skeleton endpoints double as the 17 keypoints. Because
the mask is constructed rather than predicted, the occluded-area fraction
of every generated pair is known analytically and the pixel-wise oracle
can be checked for exact agreement.

Determinism: every random draw comes from numpy's PCG64 generator seeded
through SeedSequence with plain integers (``np.random.default_rng(seed)``
or ``np.random.default_rng((seed, index))``). Both the seeding scheme and
the PCG64 stream are specified independently of platform word size, so a
given seed reproduces identical fixtures on any machine.

Segment radii are proportioned so each body part's standalone pixel area
sits within 20% of its weight in the surface-area model, which keeps the
keypoint classifier's quantization error small on clean scenes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bsa import PART_ORDER, visible_part_names
from .detections import (
    BoundingBox,
    CityPersonsPoints,
    ImageFrame,
    KEYPOINT_ORDER,
    Keypoint,
    KeypointName,
    PedestrianInstance,
)
from .errors import ValidationError
from .maskops import InstanceMask, round_pixel
from .oracle import PairedInstance

__all__ = [
    "FigureSpec",
    "OccluderSpec",
    "SyntheticScene",
    "OcclusionOutcome",
    "POSES",
    "MIN_FIGURE_HEIGHT",
    "generate_figure",
    "apply_occluder",
    "generate_scenes",
]

POSES = ("standing", "walking", "running", "cycling")

# Below this height the thinnest capsule is barely a pixel wide and the
# limb rasterization falls apart.
MIN_FIGURE_HEIGHT = 40.0

# Segment half-widths as fractions of figure height.
HEAD_R = 0.082
TORSO_R = 0.085
UPPER_ARM_R = 0.028
LOWER_ARM_R = 0.028
UPPER_LEG_R = 0.042
LOWER_LEG_R = 0.038

JITTER = 0.008

# Skeleton joints as (x, y) fractions of figure height, measured from the
# top-center anchor; +x runs toward the image right. Keys follow the
# keypoint naming; face landmarks hang off the head center instead.
_JOINTS = (
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
    "left_hip", "right_hip",
    "left_knee", "right_knee",
    "left_ankle", "right_ankle",
)

_STANDING = {
    "left_shoulder": (0.100, 0.185), "right_shoulder": (-0.100, 0.185),
    "left_elbow": (0.118, 0.335), "right_elbow": (-0.118, 0.335),
    "left_wrist": (0.125, 0.475), "right_wrist": (-0.125, 0.475),
    "left_hip": (0.062, 0.505), "right_hip": (-0.062, 0.505),
    "left_knee": (0.072, 0.720), "right_knee": (-0.072, 0.720),
    "left_ankle": (0.078, 0.945), "right_ankle": (-0.078, 0.945),
}

_WALKING = dict(_STANDING)
_WALKING.update({
    "left_elbow": (0.088, 0.335), "right_elbow": (-0.083, 0.335),
    "left_wrist": (0.055, 0.465), "right_wrist": (-0.055, 0.460),
    "left_knee": (0.117, 0.715), "right_knee": (-0.112, 0.720),
    "left_ankle": (0.183, 0.935), "right_ankle": (-0.163, 0.945),
})

_RUNNING = {
    "left_shoulder": (0.095, 0.190), "right_shoulder": (-0.095, 0.190),
    "left_elbow": (0.085, 0.320), "right_elbow": (-0.105, 0.330),
    "left_wrist": (0.175, 0.265), "right_wrist": (-0.195, 0.290),
    "left_hip": (0.065, 0.505), "right_hip": (-0.060, 0.505),
    "left_knee": (0.165, 0.680), "right_knee": (-0.110, 0.700),
    "left_ankle": (0.210, 0.845), "right_ankle": (-0.195, 0.870),
}

_CYCLING = {
    "left_shoulder": (0.115, 0.235), "right_shoulder": (0.075, 0.245),
    "left_elbow": (0.205, 0.330), "right_elbow": (0.185, 0.345),
    "left_wrist": (0.275, 0.400), "right_wrist": (0.255, 0.415),
    "left_hip": (0.010, 0.500), "right_hip": (-0.030, 0.505),
    "left_knee": (0.105, 0.630), "right_knee": (0.030, 0.680),
    "left_ankle": (0.130, 0.790), "right_ankle": (0.010, 0.885),
}

_POSE_TABLES = {
    "standing": _STANDING,
    "walking": _WALKING,
    "running": _RUNNING,
    "cycling": _CYCLING,
}

# Head center relative to the shoulder midpoint; cycling leans forward.
_HEAD_OFFSET = {
    "standing": (0.0, -0.105),
    "walking": (0.0, -0.105),
    "running": (0.0, -0.105),
    "cycling": (0.045, -0.100),
}

# Face landmarks relative to the head center (front view, so the
# subject's left appears at +x).
_FACE_OFFSETS = {
    "nose": (0.0, 0.012),
    "left_eye": (0.024, -0.012),
    "right_eye": (-0.024, -0.012),
    "left_ear": (0.047, 0.0),
    "right_ear": (-0.047, 0.0),
}


@dataclass(frozen=True)
class FigureSpec:
    """Placement and pose of one synthetic pedestrian.

    ``anchor`` is the top-center of the figure in pixels; all joints are
    laid out below and around it in fractions of ``height``.
    """

    anchor: tuple[float, float]
    height: float
    pose: str
    seed: int

    def __post_init__(self) -> None:
        if self.pose not in POSES:
            raise ValidationError(
                f"unknown pose '{self.pose}'; expected one of {', '.join(POSES)}"
            )
        if not self.height >= MIN_FIGURE_HEIGHT:
            raise ValidationError(
                f"figure height {self.height} is below the minimum "
                f"{MIN_FIGURE_HEIGHT}"
            )


@dataclass(frozen=True)
class OccluderSpec:
    """One occluder to stamp over a figure.

    ``placement`` is (x_min, y_min, x_max, y_max) in pixels; strips use
    only the axis they run across. ``coverage_target`` records the
    intended occluded-area fraction (the achieved value is whatever the
    geometry yields). ``figure`` supplies the second pedestrian when
    shape is "second_pedestrian" and is ignored otherwise.
    """

    shape: str
    placement: tuple[float, float, float, float]
    coverage_target: float
    figure: FigureSpec | None = None

    def __post_init__(self) -> None:
        shapes = ("rectangle", "vertical_strip", "horizontal_strip", "second_pedestrian")
        if self.shape not in shapes:
            raise ValidationError(f"unknown occluder shape '{self.shape}'")
        if not 0.0 <= self.coverage_target <= 1.0:
            raise ValidationError(
                f"coverage_target {self.coverage_target} outside [0, 1]"
            )
        if self.shape == "second_pedestrian" and self.figure is None:
            raise ValidationError("second_pedestrian occluder needs a figure spec")


def _skeleton(spec: FigureSpec) -> dict[str, tuple[float, float]]:
    """All 17 keypoint positions in pixels, jittered per the figure seed."""
    rng = np.random.default_rng(spec.seed)
    jitter = rng.uniform(-JITTER, JITTER, size=(len(_JOINTS), 2))
    table = _POSE_TABLES[spec.pose]
    ax, ay = spec.anchor
    h = spec.height
    pts: dict[str, tuple[float, float]] = {}
    for i, name in enumerate(_JOINTS):
        dx, dy = table[name]
        pts[name] = (ax + (dx + jitter[i, 0]) * h, ay + (dy + jitter[i, 1]) * h)
    sx = (pts["left_shoulder"][0] + pts["right_shoulder"][0]) / 2.0
    sy = (pts["left_shoulder"][1] + pts["right_shoulder"][1]) / 2.0
    hx, hy = _HEAD_OFFSET[spec.pose]
    head = (sx + hx * h, sy + hy * h)
    pts["__head_center"] = head
    for name, (fx, fy) in _FACE_OFFSETS.items():
        pts[name] = (head[0] + fx * h, head[1] + fy * h)
    return pts


def _stamp_capsule(grid, p0, p1, radius) -> None:
    """Set every pixel whose center lies within `radius` of segment p0-p1.

    Pixel (col, row) has its center at exactly (col, row).
    """
    height, width = grid.shape
    x0 = max(0, math.floor(min(p0[0], p1[0]) - radius) - 1)
    x1 = min(width - 1, math.ceil(max(p0[0], p1[0]) + radius) + 1)
    y0 = max(0, math.floor(min(p0[1], p1[1]) - radius) - 1)
    y1 = min(height - 1, math.ceil(max(p0[1], p1[1]) + radius) + 1)
    if x1 < x0 or y1 < y0:
        return
    cols = np.arange(x0, x1 + 1, dtype=np.float64)
    rows = np.arange(y0, y1 + 1, dtype=np.float64)
    px = cols[np.newaxis, :] - p0[0]
    py = rows[:, np.newaxis] - p0[1]
    dx = p1[0] - p0[0]
    dy = p1[1] - p0[1]
    seg_sq = dx * dx + dy * dy
    if seg_sq == 0.0:
        dist_sq = px * px + py * py
    else:
        t = np.clip((px * dx + py * dy) / seg_sq, 0.0, 1.0)
        dist_sq = (px - t * dx) ** 2 + (py - t * dy) ** 2
    grid[y0 : y1 + 1, x0 : x1 + 1] |= dist_sq <= radius * radius


def _body_segments(pts, height):
    """The 11 stamped shapes as (p0, p1, radius) triples, head first."""
    head = pts["__head_center"]
    sx = (pts["left_shoulder"][0] + pts["right_shoulder"][0]) / 2.0
    sy = (pts["left_shoulder"][1] + pts["right_shoulder"][1]) / 2.0
    hx = (pts["left_hip"][0] + pts["right_hip"][0]) / 2.0
    hy = (pts["left_hip"][1] + pts["right_hip"][1]) / 2.0
    mx, my = (sx + hx) / 2.0, (sy + hy) / 2.0
    segs = [
        (head, head, HEAD_R * height),
        ((sx, sy), (mx, my), TORSO_R * height),
        ((mx, my), (hx, hy), TORSO_R * height),
    ]
    for side in ("left", "right"):
        segs.append((pts[f"{side}_shoulder"], pts[f"{side}_elbow"], UPPER_ARM_R * height))
        segs.append((pts[f"{side}_elbow"], pts[f"{side}_wrist"], LOWER_ARM_R * height))
        segs.append((pts[f"{side}_hip"], pts[f"{side}_knee"], UPPER_LEG_R * height))
        segs.append((pts[f"{side}_knee"], pts[f"{side}_ankle"], LOWER_LEG_R * height))
    return segs


def _tight_bbox(bits: np.ndarray) -> BoundingBox:
    rows = np.flatnonzero(bits.any(axis=1))
    cols = np.flatnonzero(bits.any(axis=0))
    if rows.size == 0:
        return BoundingBox(0.0, 0.0, 0.0, 0.0)
    return BoundingBox(
        float(cols[0]), float(rows[0]), float(cols[-1] + 1), float(rows[-1] + 1)
    )


def generate_figure(
    spec: FigureSpec,
    frame_width: int,
    frame_height: int,
    instance_id: str = "figure",
) -> PedestrianInstance:
    """Rasterize one pedestrian into a frame-sized mask.

    All keypoint scores are 1.0; parts falling outside the frame are
    simply clipped (truncation), which the classifier later reports as
    out-of-image keypoints.
    """
    pts = _skeleton(spec)
    grid = np.zeros((frame_height, frame_width), dtype=bool)
    for p0, p1, radius in _body_segments(pts, spec.height):
        _stamp_capsule(grid, p0, p1, radius)
    mask = InstanceMask(grid)

    keypoints = tuple(
        Keypoint(name, pts[name.value][0], pts[name.value][1], 1.0)
        for name in KEYPOINT_ORDER
    )
    head = pts["__head_center"]
    ankle_mx = (pts["left_ankle"][0] + pts["right_ankle"][0]) / 2.0
    ankle_my = (pts["left_ankle"][1] + pts["right_ankle"][1]) / 2.0
    cp = CityPersonsPoints(
        head_top=(head[0], head[1] - HEAD_R * spec.height),
        feet_mid=(ankle_mx, ankle_my + LOWER_LEG_R * spec.height),
    )
    return PedestrianInstance(
        instance_id=instance_id,
        keypoints=keypoints,
        mask=mask,
        bbox_visible=_tight_bbox(grid),
        citypersons=cp,
    )


def _occluder_bits(occ: OccluderSpec, width: int, height: int) -> np.ndarray:
    grid = np.zeros((height, width), dtype=bool)
    x0, y0, x1, y1 = occ.placement
    if occ.shape == "vertical_strip":
        y0, y1 = 0.0, float(height)
    elif occ.shape == "horizontal_strip":
        x0, x1 = 0.0, float(width)
    elif occ.shape == "second_pedestrian":
        other = generate_figure(occ.figure, width, height, instance_id="occluder")
        return np.asarray(other.mask.bits)
    c0 = max(0, math.ceil(x0))
    c1 = min(width, math.ceil(x1))
    r0 = max(0, math.ceil(y0))
    r1 = min(height, math.ceil(y1))
    if c0 < c1 and r0 < r1:
        grid[r0:r1, c0:c1] = True
    return grid


@dataclass(frozen=True)
class OcclusionOutcome:
    """An occluder applied to a figure: the updated detection-side
    instance, the oracle pair, and the generator's own ground truth."""

    occluded_instance: PedestrianInstance
    pair: PairedInstance
    analytic_occlusion: float
    expected_occluded_parts: tuple[str, ...]


def apply_occluder(instance: PedestrianInstance, occ: OccluderSpec) -> OcclusionOutcome:
    """Clear mask bits under the occluder and zero covered keypoint scores.

    The analytic fraction uses the identical arithmetic as the pixel-wise
    oracle (one division, one subtraction, clamped), so the two agree
    exactly on every pair.
    """
    width, height = instance.mask.width, instance.mask.height
    occluder = InstanceMask(_occluder_bits(occ, width, height))
    remaining = InstanceMask(np.asarray(instance.mask.bits) & ~np.asarray(occluder.bits))

    new_kps = []
    survivors: set[KeypointName] = set()
    for kp in instance.keypoints:
        covered = occluder.contains(kp.x, kp.y)
        new_kps.append(replace(kp, score=0.0) if covered else kp)
        col, row = round_pixel(kp.x), round_pixel(kp.y)
        in_frame = 0 <= col < width and 0 <= row < height
        if in_frame and not covered:
            survivors.add(kp.name)

    occluded_instance = PedestrianInstance(
        instance_id=instance.instance_id,
        keypoints=tuple(new_kps),
        mask=remaining,
        bbox_visible=_tight_bbox(np.asarray(remaining.bits)),
        citypersons=instance.citypersons,
    )
    pair = PairedInstance(
        instance_id=instance.instance_id,
        mask_full=instance.mask,
        mask_occluded=remaining,
    )
    ratio = remaining.area() / instance.mask.area()
    analytic = 1.0 - min(max(ratio, 0.0), 1.0)
    visible = visible_part_names(survivors)
    expected = tuple(p for p in PART_ORDER if p not in visible)
    return OcclusionOutcome(occluded_instance, pair, analytic, expected)


# --------------------------------------------------------------------------
# batch scenario generation

_SCENE_KINDS = (
    "lower_strip",
    "vertical_strip",
    "rectangle",
    "second_pedestrian",
    "truncated_lower_strip",
)


@dataclass(frozen=True)
class SyntheticScene:
    """One generated frame with its oracle pair and analytic ground truth."""

    frame: ImageFrame
    pair: PairedInstance
    analytic_occlusion: float
    expected_occluded_parts: tuple[str, ...]
    kind: str

    @property
    def target_id(self) -> str:
        return self.pair.instance_id


def _row_strip_top(bits: np.ndarray, target: float) -> int:
    """Top row of a bottom-anchored strip covering ~target of the mask.

    Index bits.shape[0] means no strip at all.
    """
    row_sums = bits.sum(axis=1, dtype=np.int64)
    total = int(row_sums.sum())
    if total == 0 or target <= 0.0:
        return bits.shape[0]
    covered_from = np.concatenate([np.cumsum(row_sums[::-1])[::-1], [0]])
    return int(np.argmin(np.abs(covered_from - target * total)))


def _col_strip_edge(bits: np.ndarray, target: float, from_left: bool) -> int:
    """Number of strip columns (from one side) covering ~target of the mask."""
    col_sums = bits.sum(axis=0, dtype=np.int64)
    total = int(col_sums.sum())
    if total == 0 or target <= 0.0:
        return 0
    sums = col_sums if from_left else col_sums[::-1]
    covered = np.concatenate([[0], np.cumsum(sums)])
    return int(np.argmin(np.abs(covered - target * total)))


def _rect_for_target(bits: np.ndarray, center, target: float, rng) -> tuple[float, float, float, float]:
    """Grow a centered rectangle until it hides ~target of the mask."""
    height, width = bits.shape
    integral = np.zeros((height + 1, width + 1), dtype=np.int64)
    integral[1:, 1:] = np.cumsum(np.cumsum(bits, axis=0), axis=1)
    total = int(integral[-1, -1])

    def covered(scale: float) -> int:
        half_w = scale * width / 2.0
        half_h = scale * height / 2.0
        c0 = max(0, math.ceil(center[0] - half_w))
        c1 = min(width, math.ceil(center[0] + half_w))
        r0 = max(0, math.ceil(center[1] - half_h))
        r1 = min(height, math.ceil(center[1] + half_h))
        if c0 >= c1 or r0 >= r1:
            return 0
        return int(
            integral[r1, c1] - integral[r0, c1] - integral[r1, c0] + integral[r0, c0]
        )

    want = target * total
    lo, hi = 0.0, 2.0
    for _ in range(40):
        mid = (lo + hi) / 2.0
        if covered(mid) < want:
            lo = mid
        else:
            hi = mid
    scale = hi if abs(covered(hi) - want) <= abs(covered(lo) - want) else lo
    half_w = scale * width / 2.0
    half_h = scale * height / 2.0
    return (center[0] - half_w, center[1] - half_h, center[0] + half_w, center[1] + half_h)


def _horizontal_reach(spec_pose: str) -> float:
    """Worst-case half-width of a pose, as a fraction of height."""
    table = _POSE_TABLES[spec_pose]
    reach = max(abs(x) for x, _ in table.values())
    return reach + TORSO_R + JITTER + 0.01


def _second_figure_spec(
    target_spec: FigureSpec,
    target_instance: PedestrianInstance,
    target_fraction: float,
    frame_width: int,
    frame_height: int,
    rng,
) -> FigureSpec:
    """Search occluder anchors left-to-right for the closest coverage.

    A blocking pedestrian rarely hides much more than ~70% of the one
    behind, so the requested fraction is clamped there.
    """
    want = min(target_fraction, 0.70)
    pose = POSES[int(rng.integers(len(POSES)))]
    occ_height = min(
        target_spec.height * float(rng.uniform(0.96, 1.10)),
        frame_height * 0.92,
    )
    # Ground-align the two: same feet line, occluder a touch lower so it
    # reads as standing in front.
    anchor_y = target_spec.anchor[1] + target_spec.height * 0.97 - occ_height * 0.97
    anchor_y += float(rng.uniform(1.0, 5.0))
    seed = int(rng.integers(2**63))

    reach = _horizontal_reach(pose) * occ_height
    lo = reach + 1.0
    hi = frame_width - reach - 1.0
    target_area = target_instance.mask.area()

    best_spec, best_gap = None, math.inf
    offsets = np.linspace(0.0, 0.85 * target_spec.height, num=12)
    side = 1.0 if rng.uniform() < 0.5 else -1.0
    for off in offsets:
        ax = min(max(target_spec.anchor[0] + side * float(off), lo), hi)
        cand = FigureSpec(anchor=(ax, anchor_y), height=occ_height, pose=pose, seed=seed)
        occ_inst = generate_figure(cand, frame_width, frame_height)
        covered = target_instance.mask.intersection_area(occ_inst.mask)
        gap = abs(covered / target_area - want)
        if gap < best_gap:
            best_spec, best_gap = cand, gap
    return best_spec


def generate_scenes(
    count: int,
    seed: int,
    frame_width: int = 192,
    frame_height: int = 256,
) -> list[SyntheticScene]:
    """Generate a stratified batch of occluded-pedestrian scenes.

    Scene i targets the (i mod 10)-th occlusion decile and cycles through
    five scenarios: strips from the bottom edge (the dominant real-world
    pattern), side strips, free rectangles, a second occluding
    pedestrian, and bottom strips on a frame-truncated figure. Every
    scene is independently seeded from (seed, i), so any subset can be
    regenerated without the rest.
    """
    if count < 1:
        raise ValidationError(f"scene count must be positive, got {count}")
    scenes: list[SyntheticScene] = []
    for i in range(count):
        rng = np.random.default_rng((seed, i))
        stratum = i % 10
        kind = _SCENE_KINDS[(i // 10) % len(_SCENE_KINDS)]
        target = (stratum + float(rng.uniform(0.08, 0.92))) / 10.0
        pose = POSES[int(rng.integers(len(POSES)))]
        fig_height = float(rng.uniform(0.58, 0.86)) * frame_height

        reach = _horizontal_reach(pose) * fig_height
        ax = float(rng.uniform(reach + 1.0, frame_width - reach - 1.0))
        if kind == "truncated_lower_strip":
            visible_frac = float(rng.uniform(0.62, 0.82))
            ay = frame_height - visible_frac * fig_height
        else:
            top_pad = 0.03 * fig_height
            ay = float(rng.uniform(top_pad, max(top_pad + 1.0, frame_height - 1.0 - fig_height)))

        frame_id = f"scene_{i:04d}"
        target_id = f"{frame_id}_t"
        fig_spec = FigureSpec(
            anchor=(ax, ay), height=fig_height, pose=pose,
            seed=int(rng.integers(2**63)),
        )
        figure = generate_figure(fig_spec, frame_width, frame_height, target_id)
        bits = np.asarray(figure.mask.bits)

        extra_instances: list[PedestrianInstance] = []
        if stratum == 0 and kind != "second_pedestrian" and rng.uniform() < 0.35:
            # A genuinely unoccluded scene: an empty strip below the frame.
            occ = OccluderSpec(
                shape="horizontal_strip",
                placement=(0.0, float(frame_height), 0.0, float(frame_height)),
                coverage_target=0.0,
            )
        elif kind in ("lower_strip", "truncated_lower_strip"):
            top = _row_strip_top(bits, target)
            occ = OccluderSpec(
                shape="horizontal_strip",
                placement=(0.0, float(top), float(frame_width), float(frame_height)),
                coverage_target=target,
            )
        elif kind == "vertical_strip":
            from_left = bool(rng.uniform() < 0.5)
            n = _col_strip_edge(bits, target, from_left)
            if from_left:
                placement = (0.0, 0.0, float(n), float(frame_height))
            else:
                placement = (
                    float(frame_width - n), 0.0,
                    float(frame_width), float(frame_height),
                )
            occ = OccluderSpec(
                shape="vertical_strip", placement=placement, coverage_target=target
            )
        elif kind == "rectangle":
            bb = figure.bbox_visible
            cx = float(rng.uniform(bb.x_min + 0.3 * (bb.x_max - bb.x_min),
                                   bb.x_min + 0.7 * (bb.x_max - bb.x_min)))
            cy = float(rng.uniform(bb.y_min + 0.3 * (bb.y_max - bb.y_min),
                                   bb.y_min + 0.7 * (bb.y_max - bb.y_min)))
            occ = OccluderSpec(
                shape="rectangle",
                placement=_rect_for_target(bits, (cx, cy), target, rng),
                coverage_target=target,
            )
        else:
            occ_fig = _second_figure_spec(
                fig_spec, figure, target, frame_width, frame_height, rng
            )
            occ = OccluderSpec(
                shape="second_pedestrian",
                placement=(0.0, 0.0, float(frame_width), float(frame_height)),
                coverage_target=min(target, 0.70),
                figure=occ_fig,
            )
            extra_instances.append(
                generate_figure(occ_fig, frame_width, frame_height, f"{frame_id}_o")
            )

        outcome = apply_occluder(figure, occ)
        frame = ImageFrame(
            frame_id=frame_id,
            width=frame_width,
            height=frame_height,
            instances=tuple([outcome.occluded_instance] + extra_instances),
        )
        scenes.append(
            SyntheticScene(
                frame=frame,
                pair=outcome.pair,
                analytic_occlusion=outcome.analytic_occlusion,
                expected_occluded_parts=outcome.expected_occluded_parts,
                kind=kind,
            )
        )
    return scenes
