"""Model backends producing keypoint and mask proposals.

Two families are registered. The torchvision family wraps the pretrained
COCO detection models (ResNet-50-FPN backbones); it needs torch,
torchvision, and downloadable weights, and raises BackendUnavailableError
when any of those is missing. The synthetic family is a dependency-light
stand-in that reads bright blobs out of the image with connected-component
labeling; it exists so the full pipeline can run and be tested on machines
that cannot fetch model weights.

Both families always apply the person category filter: torchvision keeps
label 1 detections, the synthetic detector only ever proposes person
instances. Keypoint backends expose `point_scores_bounded`; when False,
the emitter min-max squashes point scores into [0, 1].
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.ndimage

from .config import AdapterConfig, backend_of
from .errors import BackendUnavailableError, ConfigError

PERSON_LABEL = 1  # COCO category id used by the torchvision models

# 17 keypoint positions as (x, y) fractions of a standing person's tight
# bounding box; used by the synthetic detector only.
_BLOB_LAYOUT = (
    (0.50, 0.060),  # nose
    (0.56, 0.045),  # left_eye
    (0.44, 0.045),  # right_eye
    (0.62, 0.055),  # left_ear
    (0.38, 0.055),  # right_ear
    (0.72, 0.210),  # left_shoulder
    (0.28, 0.210),  # right_shoulder
    (0.78, 0.370),  # left_elbow
    (0.22, 0.370),  # right_elbow
    (0.80, 0.520),  # left_wrist
    (0.20, 0.520),  # right_wrist
    (0.62, 0.530),  # left_hip
    (0.38, 0.530),  # right_hip
    (0.62, 0.740),  # left_knee
    (0.38, 0.740),  # right_knee
    (0.62, 0.950),  # left_ankle
    (0.38, 0.950),  # right_ankle
)


@dataclass(frozen=True)
class KeypointProposal:
    """One person proposal from the keypoint model."""

    points: np.ndarray        # (17, 2) float64, xy
    point_scores: np.ndarray  # (17,) float64, backend-native scale
    box: tuple[float, float, float, float]
    score: float              # person confidence in [0, 1]

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=np.float64)
        scores = np.array(self.point_scores, dtype=np.float64)
        if points.shape != (17, 2):
            raise ValueError(f"points must be (17, 2), got {points.shape}")
        if scores.shape != (17,):
            raise ValueError(f"point_scores must be (17,), got {scores.shape}")
        points.setflags(write=False)
        scores.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "point_scores", scores)


@dataclass(frozen=True)
class MaskProposal:
    """One person proposal from the mask model."""

    bits: np.ndarray  # (H, W) bool
    box: tuple[float, float, float, float]
    score: float      # person confidence in [0, 1]

    def __post_init__(self) -> None:
        bits = np.array(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"mask must be 2-D, got shape {bits.shape}")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def area(self) -> int:
        return int(self.bits.sum())


# --------------------------------------------------------------- synthetic

def _foreground_components(image: np.ndarray):
    gray = image.mean(axis=2)
    labels, count = scipy.ndimage.label(gray > 127)
    return gray, labels, count


def _tight_box(bits: np.ndarray) -> tuple[float, float, float, float]:
    rows = np.flatnonzero(bits.any(axis=1))
    cols = np.flatnonzero(bits.any(axis=0))
    return (float(cols[0]), float(rows[0]), float(cols[-1] + 1), float(rows[-1] + 1))


class SyntheticMaskBackend:
    """Each bright connected component is one person mask proposal.

    Proposal score is the component's area relative to the largest
    component, so specks score low and the score floor can drop them.
    Proposals are ordered largest first.
    """

    def infer(self, image: np.ndarray) -> list[MaskProposal]:
        _, labels, count = _foreground_components(image)
        if count == 0:
            return []
        areas = scipy.ndimage.sum_labels(
            np.ones_like(labels), labels, index=range(1, count + 1)
        )
        largest = float(areas.max())
        proposals = []
        for idx in np.argsort(areas)[::-1]:
            bits = labels == (int(idx) + 1)
            proposals.append(
                MaskProposal(
                    bits=bits,
                    box=_tight_box(bits),
                    score=float(areas[idx]) / largest,
                )
            )
        return proposals


class SyntheticKeypointBackend:
    """Places the 17 keypoints at fixed fractions of each component's box.

    Point scores are raw 3x3 mean intensities (0..255), deliberately NOT
    in [0, 1]: this backend exercises the unbounded-score path, so the
    emitter must squash them. Proposals are ordered left to right, which
    differs from the mask backend's ordering on purpose (the join has to
    re-associate them).
    """

    point_scores_bounded = False

    def infer(self, image: np.ndarray) -> list[KeypointProposal]:
        gray, labels, count = _foreground_components(image)
        if count == 0:
            return []
        height, width = gray.shape
        areas = scipy.ndimage.sum_labels(
            np.ones_like(labels), labels, index=range(1, count + 1)
        )
        largest = float(areas.max())
        proposals = []
        for label in range(1, count + 1):
            bits = labels == label
            x0, y0, x1, y1 = _tight_box(bits)
            points = np.array(
                [
                    (x0 + fx * (x1 - 1 - x0), y0 + fy * (y1 - 1 - y0))
                    for fx, fy in _BLOB_LAYOUT
                ],
                dtype=np.float64,
            )
            scores = np.empty(17, dtype=np.float64)
            for i, (px, py) in enumerate(points):
                c = min(max(int(np.floor(px + 0.5)), 0), width - 1)
                r = min(max(int(np.floor(py + 0.5)), 0), height - 1)
                patch = gray[max(r - 1, 0):r + 2, max(c - 1, 0):c + 2]
                scores[i] = float(patch.mean())
            proposals.append(
                KeypointProposal(
                    points=points,
                    point_scores=scores,
                    box=(x0, y0, x1, y1),
                    score=float(areas[label - 1]) / largest,
                )
            )
        proposals.sort(key=lambda p: p.box[0])
        return proposals


# ------------------------------------------------------------- torchvision

def _load_torchvision(model_name: str, device: str):
    try:
        import torch
        import torchvision.models.detection as det
    except ImportError as err:
        raise BackendUnavailableError(
            f"torchvision backend needs torch and torchvision: {err}"
        ) from err
    factories = {
        "keypointrcnn_resnet50_fpn": (
            det.keypointrcnn_resnet50_fpn,
            det.KeypointRCNN_ResNet50_FPN_Weights.DEFAULT,
        ),
        "maskrcnn_resnet50_fpn": (
            det.maskrcnn_resnet50_fpn,
            det.MaskRCNN_ResNet50_FPN_Weights.DEFAULT,
        ),
    }
    if model_name not in factories:
        raise ConfigError(f"unknown torchvision model '{model_name}'")
    factory, weights = factories[model_name]
    try:
        model = factory(weights=weights)
    except Exception as err:  # weight download failure surfaces as URLError
        raise BackendUnavailableError(
            f"cannot load pretrained weights for '{model_name}': {err}"
        ) from err
    model.eval()
    return model.to(torch.device(device)), torch


def _run_model(model, torch, image: np.ndarray, device: str) -> dict:
    tensor = torch.from_numpy(image.astype(np.float32) / 255.0).permute(2, 0, 1)
    with torch.no_grad():
        return model([tensor.to(torch.device(device))])[0]


def convert_keypoint_output(output: dict) -> list[KeypointProposal]:
    """torchvision keypoint R-CNN output dict -> person proposals.

    keypoints_scores are raw heatmap logits (unbounded); the box scores
    are softmax probabilities in [0, 1].
    """
    boxes = np.asarray(_numpy(output["boxes"]), dtype=np.float64)
    scores = np.asarray(_numpy(output["scores"]), dtype=np.float64)
    labels = np.asarray(_numpy(output["labels"]), dtype=np.int64)
    kps = np.asarray(_numpy(output["keypoints"]), dtype=np.float64)
    kp_scores = np.asarray(_numpy(output["keypoints_scores"]), dtype=np.float64)
    proposals = []
    for i in range(len(scores)):
        if labels[i] != PERSON_LABEL:
            continue
        proposals.append(
            KeypointProposal(
                points=kps[i, :, :2],
                point_scores=kp_scores[i],
                box=tuple(float(v) for v in boxes[i]),
                score=float(scores[i]),
            )
        )
    return proposals


def convert_mask_output(output: dict) -> list[MaskProposal]:
    """torchvision mask R-CNN output dict -> person proposals."""
    boxes = np.asarray(_numpy(output["boxes"]), dtype=np.float64)
    scores = np.asarray(_numpy(output["scores"]), dtype=np.float64)
    labels = np.asarray(_numpy(output["labels"]), dtype=np.int64)
    masks = np.asarray(_numpy(output["masks"]), dtype=np.float64)
    proposals = []
    for i in range(len(scores)):
        if labels[i] != PERSON_LABEL:
            continue
        proposals.append(
            MaskProposal(
                bits=masks[i, 0] > 0.5,
                box=tuple(float(v) for v in boxes[i]),
                score=float(scores[i]),
            )
        )
    return proposals


def _numpy(value):
    detach = getattr(value, "detach", None)
    if detach is not None:
        return detach().cpu().numpy()
    return value


class TorchvisionKeypointBackend:
    point_scores_bounded = False  # heatmap logits

    def __init__(self, device: str) -> None:
        self._model, self._torch = _load_torchvision("keypointrcnn_resnet50_fpn", device)
        self._device = device

    def infer(self, image: np.ndarray) -> list[KeypointProposal]:
        return convert_keypoint_output(
            _run_model(self._model, self._torch, image, self._device)
        )


class TorchvisionMaskBackend:
    def __init__(self, device: str) -> None:
        self._model, self._torch = _load_torchvision("maskrcnn_resnet50_fpn", device)
        self._device = device

    def infer(self, image: np.ndarray) -> list[MaskProposal]:
        return convert_mask_output(
            _run_model(self._model, self._torch, image, self._device)
        )


# --------------------------------------------------------------- resolution

_KEYPOINT_MODELS = {
    "torchvision/keypointrcnn_resnet50_fpn": TorchvisionKeypointBackend,
    "synthetic/blob17": lambda device: SyntheticKeypointBackend(),
}
_MASK_MODELS = {
    "torchvision/maskrcnn_resnet50_fpn": TorchvisionMaskBackend,
    "synthetic/blob": lambda device: SyntheticMaskBackend(),
}


@lru_cache(maxsize=4)
def resolve_keypoint_backend(model_id: str, device: str):
    backend_of(model_id)  # validates the id shape
    if model_id not in _KEYPOINT_MODELS:
        raise ConfigError(f"unknown keypoint model '{model_id}'")
    return _KEYPOINT_MODELS[model_id](device)


@lru_cache(maxsize=4)
def resolve_mask_backend(model_id: str, device: str):
    backend_of(model_id)
    if model_id not in _MASK_MODELS:
        raise ConfigError(f"unknown mask model '{model_id}'")
    return _MASK_MODELS[model_id](device)


def resolve_backends(config: AdapterConfig):
    return (
        resolve_keypoint_backend(config.keypoint_model, config.device),
        resolve_mask_backend(config.mask_model, config.device),
    )
