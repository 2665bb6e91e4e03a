"""Proposal types, the synthetic backends, and output conversion."""

import numpy as np
import pytest

from occlometer_adapter import (
    AdapterConfig,
    KeypointProposal,
    MaskProposal,
    convert_keypoint_output,
    convert_mask_output,
    resolve_backends,
    resolve_keypoint_backend,
    resolve_mask_backend,
)
from occlometer_adapter.backends import (
    PERSON_LABEL,
    SyntheticKeypointBackend,
    SyntheticMaskBackend,
)
from occlometer_adapter.errors import BackendUnavailableError, ConfigError

from helpers import blank_canvas, draw_person


# ---------------------------------------------------------- proposal types

def make_keypoint_proposal(points=None, scores=None, box=(0.0, 0.0, 4.0, 4.0)):
    if points is None:
        points = np.tile([2.0, 2.0], (17, 1))
    if scores is None:
        scores = np.full(17, 0.5)
    return KeypointProposal(points=points, point_scores=scores, box=box, score=0.9)


def test_keypoint_proposal_rejects_wrong_shapes():
    with pytest.raises(ValueError):
        make_keypoint_proposal(points=np.zeros((16, 2)))
    with pytest.raises(ValueError):
        make_keypoint_proposal(scores=np.zeros((17, 1)))


def test_keypoint_proposal_arrays_are_read_only():
    proposal = make_keypoint_proposal()
    with pytest.raises(ValueError):
        proposal.points[0, 0] = 99.0
    with pytest.raises(ValueError):
        proposal.point_scores[0] = 99.0


def test_mask_proposal_area_and_immutability():
    bits = np.zeros((4, 5), dtype=bool)
    bits[1:3, 1:4] = True
    proposal = MaskProposal(bits=bits, box=(1.0, 1.0, 4.0, 3.0), score=1.0)
    assert proposal.area() == 6
    with pytest.raises(ValueError):
        proposal.bits[0, 0] = True
    with pytest.raises(ValueError):
        MaskProposal(bits=np.zeros((2, 2, 2), dtype=bool), box=(0, 0, 1, 1), score=1.0)


# ------------------------------------------------------- synthetic backends

def test_synthetic_mask_backend_blank_image_yields_nothing():
    assert SyntheticMaskBackend().infer(blank_canvas(30, 20)) == []


def test_synthetic_mask_backend_finds_one_blob():
    canvas = blank_canvas(30, 20)
    canvas[5:15, 8:14] = 200
    proposals = SyntheticMaskBackend().infer(canvas)
    assert len(proposals) == 1
    mask = proposals[0]
    assert mask.bits.shape == (20, 30)
    assert mask.area() == 10 * 6
    assert mask.box == (8.0, 5.0, 14.0, 15.0)
    assert mask.score == 1.0


def test_synthetic_mask_backend_orders_by_area_and_scores_relatively():
    canvas = blank_canvas(40, 20)
    canvas[2:12, 2:12] = 200    # 100 px
    canvas[5:8, 30:33] = 200    # 9 px speck
    proposals = SyntheticMaskBackend().infer(canvas)
    assert len(proposals) == 2
    assert proposals[0].area() == 100
    assert proposals[1].area() == 9
    assert proposals[0].score == 1.0
    assert proposals[1].score == pytest.approx(0.09)


def test_synthetic_keypoint_backend_blank_image_yields_nothing():
    assert SyntheticKeypointBackend().infer(blank_canvas(30, 20)) == []


def test_synthetic_keypoint_backend_places_17_points_inside_the_box():
    canvas = blank_canvas(80, 120)
    draw_person(canvas, left=20, top=10, width=30, height=100)
    proposals = SyntheticKeypointBackend().infer(canvas)
    assert len(proposals) == 1
    kp = proposals[0]
    assert kp.points.shape == (17, 2)
    x0, y0, x1, y1 = kp.box
    assert np.all(kp.points[:, 0] >= x0) and np.all(kp.points[:, 0] <= x1 - 1)
    assert np.all(kp.points[:, 1] >= y0) and np.all(kp.points[:, 1] <= y1 - 1)


def test_synthetic_keypoint_scores_are_raw_intensities():
    # the backend advertises unbounded scores and means it: values are
    # 0..255 patch intensities, so the emitter's squash is load-bearing
    assert SyntheticKeypointBackend.point_scores_bounded is False
    canvas = blank_canvas(80, 120)
    draw_person(canvas, left=20, top=10, width=30, height=100, value=230)
    kp = SyntheticKeypointBackend().infer(canvas)[0]
    assert kp.point_scores.max() > 1.0
    assert kp.point_scores.max() <= 255.0


def test_synthetic_backends_disagree_on_proposal_order():
    # keypoints come left to right, masks come largest first; with a
    # small left figure and a large right one the orders are opposite,
    # which is what makes the downstream join observable
    canvas = blank_canvas(200, 160)
    draw_person(canvas, left=10, top=60, width=24, height=80)
    draw_person(canvas, left=120, top=10, width=40, height=140)
    kp_props = SyntheticKeypointBackend().infer(canvas)
    mask_props = SyntheticMaskBackend().infer(canvas)
    assert len(kp_props) == 2 and len(mask_props) == 2
    assert kp_props[0].box[0] < kp_props[1].box[0]
    assert mask_props[0].area() > mask_props[1].area()
    assert mask_props[0].box[0] > mask_props[1].box[0]


# --------------------------------------------------------------- conversion

class FakeTensor:
    """Stands in for a torch tensor: detach().cpu().numpy() chain."""

    def __init__(self, array):
        self._array = np.asarray(array)

    def detach(self):
        return self

    def cpu(self):
        return self

    def numpy(self):
        return self._array


def keypoint_output(wrap=lambda a: a):
    points = np.zeros((3, 17, 3))
    points[:, :, 0] = np.arange(17)
    points[:, :, 1] = 5.0
    return {
        "boxes": wrap(np.array([[0, 0, 10, 20], [5, 5, 9, 9], [1, 1, 8, 18]])),
        "scores": wrap(np.array([0.95, 0.80, 0.40])),
        "labels": wrap(np.array([PERSON_LABEL, 27, PERSON_LABEL])),
        "keypoints": wrap(points),
        "keypoints_scores": wrap(np.tile(np.linspace(-3.0, 4.0, 17), (3, 1))),
    }


def test_convert_keypoint_output_keeps_only_person_label():
    proposals = convert_keypoint_output(keypoint_output())
    assert len(proposals) == 2
    assert proposals[0].score == pytest.approx(0.95)
    assert proposals[1].score == pytest.approx(0.40)
    assert proposals[0].box == (0.0, 0.0, 10.0, 20.0)
    assert proposals[0].points.shape == (17, 2)
    assert proposals[0].points[3, 0] == 3.0
    # raw heatmap logits pass through unsquashed
    assert proposals[0].point_scores.min() == pytest.approx(-3.0)


def test_convert_keypoint_output_accepts_tensor_like_values():
    direct = convert_keypoint_output(keypoint_output())
    wrapped = convert_keypoint_output(keypoint_output(wrap=FakeTensor))
    assert len(direct) == len(wrapped)
    for a, b in zip(direct, wrapped):
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.point_scores, b.point_scores)
        assert a.box == b.box and a.score == b.score


def test_convert_mask_output_thresholds_soft_masks():
    soft = np.zeros((2, 1, 4, 4))
    soft[0, 0, 0:2, 0:2] = 0.9
    soft[0, 0, 2, 2] = 0.5  # exactly 0.5 is background
    soft[1, 0, :, :] = 0.7
    output = {
        "boxes": np.array([[0, 0, 2, 2], [0, 0, 4, 4]]),
        "scores": np.array([0.9, 0.8]),
        "labels": np.array([PERSON_LABEL, 3]),
        "masks": soft,
    }
    proposals = convert_mask_output(output)
    assert len(proposals) == 1
    assert proposals[0].bits.dtype == bool
    assert proposals[0].area() == 4
    assert not proposals[0].bits[2, 2]


# --------------------------------------------------------------- resolution

def test_resolution_caches_backend_instances():
    first = resolve_keypoint_backend("synthetic/blob17", "cpu")
    second = resolve_keypoint_backend("synthetic/blob17", "cpu")
    assert first is second
    assert isinstance(first, SyntheticKeypointBackend)
    assert isinstance(resolve_mask_backend("synthetic/blob", "cpu"), SyntheticMaskBackend)


@pytest.mark.parametrize("model_id", ["synthetic/unknown", "noslash"])
def test_resolution_rejects_unknown_ids(model_id):
    with pytest.raises(ConfigError):
        resolve_keypoint_backend(model_id, "cpu")
    with pytest.raises(ConfigError):
        resolve_mask_backend(model_id, "cpu")


def test_resolve_backends_returns_the_configured_pair():
    config = AdapterConfig(keypoint_model="synthetic/blob17", mask_model="synthetic/blob")
    kp_backend, mask_backend = resolve_backends(config)
    assert isinstance(kp_backend, SyntheticKeypointBackend)
    assert isinstance(mask_backend, SyntheticMaskBackend)


def test_torchvision_backend_runs_where_weights_are_available():
    pytest.importorskip("torchvision")
    try:
        backend = resolve_keypoint_backend(
            "torchvision/keypointrcnn_resnet50_fpn", "cpu"
        )
    except BackendUnavailableError as err:
        pytest.skip(f"pretrained weights not fetchable here: {err}")
    proposals = backend.infer(blank_canvas(64, 48))
    assert isinstance(proposals, list)
