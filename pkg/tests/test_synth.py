import numpy as np
import pytest

from occlometer import (
    FigureSpec,
    OccluderSpec,
    ValidationError,
    apply_occluder,
    classify_occlusion,
    generate_figure,
    generate_scenes,
    pixelwise_occlusion,
    resolve_keypoint_visibility,
    VisibilityConfig,
)
from occlometer.bsa import BSA_MODEL, PART_ORDER, visible_part_names
from occlometer.synth import MIN_FIGURE_HEIGHT, POSES

from helpers import make_frame

W, H = 192, 256


def standing(seed=3, height=200.0, anchor=(96.0, 20.0)):
    return FigureSpec(anchor=anchor, height=height, pose="standing", seed=seed)


def test_spec_validation():
    with pytest.raises(ValidationError):
        FigureSpec(anchor=(0.0, 0.0), height=MIN_FIGURE_HEIGHT - 1, pose="standing", seed=0)
    with pytest.raises(ValidationError):
        FigureSpec(anchor=(0.0, 0.0), height=100.0, pose="handstand", seed=0)
    with pytest.raises(ValidationError):
        OccluderSpec(shape="blob", placement=(0, 1, 0, 1), coverage_target=0.5)
    with pytest.raises(ValidationError):
        OccluderSpec(shape="rectangle", placement=(0, 1, 0, 1), coverage_target=1.5)
    with pytest.raises(ValidationError):
        # a second pedestrian occluder needs the figure to rasterize
        OccluderSpec(shape="second_pedestrian", placement=(0, 1, 0, 1), coverage_target=0.5)


def test_generation_is_deterministic():
    a = generate_figure(standing(), W, H)
    b = generate_figure(standing(), W, H)
    assert a.mask == b.mask
    assert a.keypoints == b.keypoints
    c = generate_figure(standing(seed=4), W, H)
    assert a.keypoints != c.keypoints


def test_all_keypoints_inside_generated_mask():
    for pose in POSES:
        spec = FigureSpec(anchor=(96.0, 15.0), height=210.0, pose=pose, seed=11)
        inst = generate_figure(spec, W, H)
        for kp in inst.keypoints:
            assert 0 <= kp.x < W and 0 <= kp.y < H
            assert inst.mask.contains(kp.x, kp.y), (pose, kp.name)
        result = classify_occlusion(inst, make_frame(inst))
        assert result.occlusion_percent == 0.0


def test_truncated_anchor_puts_ankles_below_frame():
    inst = generate_figure(standing(anchor=(96.0, H - 140.0)), W, H)
    names = {kp.name: kp for kp in inst.keypoints}
    assert names["left_ankle"].y >= H
    assert names["right_ankle"].y >= H
    assert inst.mask.area() > 0  # clipped but present


# stamp order used by the rasterizer: head, torso halves, then per side
_SEGMENT_PARTS = (
    "head",
    "upper_torso",
    "lower_torso",
    "upper_left_arm",
    "lower_left_arm",
    "upper_left_leg",
    "lower_left_leg",
    "upper_right_arm",
    "lower_right_arm",
    "upper_right_leg",
    "lower_right_leg",
)


def test_standalone_part_areas_track_bsa_shares():
    # Rasterize each body part in isolation and compare its pixel share of
    # the whole figure against the model's area share.
    from occlometer.synth import _body_segments, _skeleton, _stamp_capsule

    spec = standing(height=220.0, anchor=(240.0, 20.0))
    joints = _skeleton(spec)
    segments = _body_segments(joints, spec.height)
    assert len(segments) == len(_SEGMENT_PARTS)
    areas = {}
    for part, (p0, p1, radius) in zip(_SEGMENT_PARTS, segments):
        bits = np.zeros((520, 480), dtype=bool)
        _stamp_capsule(bits, p0, p1, radius)
        areas[part] = int(bits.sum())
    # compare against the sum of standalone areas: parts overlap at the
    # joints, so the union would inflate every share by the same factor
    whole = sum(areas.values())
    for part, pixels in areas.items():
        share = pixels / whole
        ref = BSA_MODEL.part(part).bsa_percent / 99.0
        assert share == pytest.approx(ref, rel=0.20), part


def test_disjoint_occluder_changes_nothing():
    inst = generate_figure(standing(anchor=(140.0, 20.0)), W, H)
    occ = OccluderSpec(shape="rectangle", placement=(0.0, 0.0, 10.0, 10.0), coverage_target=0.0)
    outcome = apply_occluder(inst, occ)
    assert outcome.analytic_occlusion == 0.0
    assert outcome.pair.mask_occluded == inst.mask
    assert outcome.occluded_instance.keypoints == inst.keypoints
    assert outcome.expected_occluded_parts == ()


def test_full_frame_occluder_hides_everything():
    inst = generate_figure(standing(), W, H)
    occ = OccluderSpec(shape="rectangle", placement=(0.0, 0.0, float(W), float(H)), coverage_target=1.0)
    outcome = apply_occluder(inst, occ)
    assert outcome.analytic_occlusion == 1.0
    assert outcome.pair.mask_occluded.area() == 0
    assert all(kp.score == 0.0 for kp in outcome.occluded_instance.keypoints)
    assert len(outcome.expected_occluded_parts) == 11


def test_lower_strip_takes_out_leg_parts():
    inst = generate_figure(standing(anchor=(96.0, 16.0), height=200.0), W, H)
    knee_y = max(kp.y for kp in inst.keypoints if kp.name.endswith("_knee"))
    occ = OccluderSpec(
        shape="horizontal_strip",
        placement=(0.0, knee_y - 6.0, float(W), float(H)),
        coverage_target=0.3,
    )
    outcome = apply_occluder(inst, occ)
    for part in ("lower_left_leg", "lower_right_leg"):
        assert part in outcome.expected_occluded_parts
    assert "head" not in outcome.expected_occluded_parts
    assert 0.0 < outcome.analytic_occlusion < 1.0


def test_covered_keypoints_never_inside_occluded_mask():
    inst = generate_figure(standing(), W, H)
    occ = OccluderSpec(shape="horizontal_strip", placement=(0.0, 130.0, float(W), float(H)), coverage_target=0.4)
    outcome = apply_occluder(inst, occ)
    zeroed = [kp for kp in outcome.occluded_instance.keypoints if kp.score == 0.0]
    assert zeroed
    for kp in zeroed:
        assert not outcome.pair.mask_occluded.contains(kp.x, kp.y)


def test_analytic_fraction_equals_pixel_oracle_exactly():
    for i, scene in enumerate(generate_scenes(25, seed=19)):
        assert scene.analytic_occlusion == pixelwise_occlusion(scene.pair), i


def test_expected_parts_agree_with_classifier_verdicts():
    for scene in generate_scenes(40, seed=23):
        target = next(
            inst for inst in scene.frame.instances
            if inst.instance_id == scene.target_id
        )
        verdicts = resolve_keypoint_visibility(
            target, scene.frame.width, scene.frame.height, VisibilityConfig()
        )
        survivors = {v.name for v in verdicts if v.visible}
        hidden = tuple(
            p for p in PART_ORDER if p not in visible_part_names(survivors)
        )
        assert hidden == scene.expected_occluded_parts, scene.frame.frame_id


def test_scene_batch_shape_and_determinism():
    scenes = generate_scenes(50, seed=7)
    assert len(scenes) == 50
    again = generate_scenes(50, seed=7)
    for a, b in zip(scenes, again):
        assert a.analytic_occlusion == b.analytic_occlusion
        assert a.pair.mask_full == b.pair.mask_full
    ids = [s.frame.frame_id for s in scenes]
    assert len(set(ids)) == 50


def test_scene_batch_spans_scenario_kinds_and_strata():
    scenes = generate_scenes(100, seed=5)
    kinds = {s.kind for s in scenes}
    assert kinds == {
        "lower_strip",
        "vertical_strip",
        "rectangle",
        "second_pedestrian",
        "truncated_lower_strip",
    }
    # stratified targets: every decile of the range shows up
    deciles = {min(int(s.analytic_occlusion * 10), 9) for s in scenes}
    assert len(deciles) >= 8


def test_second_pedestrian_scenes_have_two_instances():
    scenes = [s for s in generate_scenes(60, seed=2) if s.kind == "second_pedestrian"]
    assert scenes
    for scene in scenes:
        assert len(scene.frame.instances) == 2
        ids = {inst.instance_id for inst in scene.frame.instances}
        assert scene.target_id in ids


def test_lower_strip_scenes_rise_from_bottom_edge():
    scenes = [s for s in generate_scenes(60, seed=2) if s.kind == "lower_strip"]
    assert scenes
    occluded_rows_seen = False
    for scene in scenes:
        full = np.asarray(scene.pair.mask_full.bits)
        occ = np.asarray(scene.pair.mask_occluded.bits)
        removed = full & ~occ
        rows = np.flatnonzero(removed.any(axis=1))
        if rows.size == 0:
            continue  # the zero-coverage stratum keeps some scenes clean
        occluded_rows_seen = True
        # everything the strip removes sits in one band touching the bottom
        # of the figure's own extent, never above untouched figure rows
        assert rows.max() == np.flatnonzero(full.any(axis=1)).max()
    assert occluded_rows_seen


def test_generate_scenes_validates_count():
    with pytest.raises(ValidationError):
        generate_scenes(0, seed=1)
