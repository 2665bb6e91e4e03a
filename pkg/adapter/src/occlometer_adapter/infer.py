"""Per-image inference: models in, one frame document out."""

from pathlib import Path

from .backends import resolve_backends
from .config import AdapterConfig
from .documents import build_document, serialize_document
from .images import load_image
from .join import join_proposals


def infer_frame(image_path: Path, config: AdapterConfig) -> dict:
    """Run both models on one image and return its frame document.

    Zero person detections is a normal outcome: the document is still
    emitted, with an empty instance list.
    """
    image_path = Path(image_path)
    image = load_image(image_path)
    height, width = image.shape[:2]
    kp_backend, mask_backend = resolve_backends(config)

    kp_props = [p for p in kp_backend.infer(image) if p.score >= config.score_floor]
    mask_props = [p for p in mask_backend.infer(image) if p.score >= config.score_floor]
    joined = join_proposals(kp_props, mask_props)

    return build_document(
        frame_id=image_path.stem,
        width=width,
        height=height,
        instances=joined,
        squash_point_scores=not kp_backend.point_scores_bounded,
    )


def infer_frame_text(image_path: Path, config: AdapterConfig) -> str:
    return serialize_document(infer_frame(image_path, config))
