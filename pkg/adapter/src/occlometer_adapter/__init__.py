"""Detection-model adapter emitting occlusion-toolkit frame documents."""

from .backends import (
    KeypointProposal,
    MaskProposal,
    convert_keypoint_output,
    convert_mask_output,
    resolve_backends,
    resolve_keypoint_backend,
    resolve_mask_backend,
)
from .config import AdapterConfig, load_config
from .documents import (
    KEYPOINT_NAMES,
    build_document,
    minmax_squash,
    rle_counts,
    serialize_document,
)
from .errors import (
    AdapterError,
    AdapterIOError,
    BackendUnavailableError,
    ConfigError,
)
from .images import list_images, load_image
from .infer import infer_frame, infer_frame_text
from .join import JoinedInstance, box_iou, join_proposals

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig", "load_config",
    "AdapterError", "AdapterIOError", "BackendUnavailableError", "ConfigError",
    "KeypointProposal", "MaskProposal",
    "convert_keypoint_output", "convert_mask_output",
    "resolve_backends", "resolve_keypoint_backend", "resolve_mask_backend",
    "JoinedInstance", "join_proposals", "box_iou",
    "KEYPOINT_NAMES", "rle_counts", "minmax_squash",
    "build_document", "serialize_document",
    "load_image", "list_images",
    "infer_frame", "infer_frame_text",
    "__version__",
]
