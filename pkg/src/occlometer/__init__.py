"""Objective pedestrian occlusion levels from keypoints and instance masks.

The classifier maps detector outputs (17 skeletal keypoints plus an
instance mask) to the fraction of body surface area that is hidden,
using an 11-part 2D surface model. A pixel-wise oracle, published
baseline estimators, benchmark label schemes, and a synthetic scene
generator round out the evaluation workflow.
"""

from .baselines import (
    CITYPERSONS_ASPECT,
    CityPersonsAnnotation,
    FullExtentBox,
    bbox_occlusion_rate,
    citypersons_full_box,
    citypersons_occlusion,
)
from .bsa import (
    BSA_MODEL,
    PART_ORDER,
    TOTAL_BSA_PERCENT,
    BsaModel,
    OcclusionResult,
    SemanticPart,
    classify_frame,
    classify_occlusion,
    part_visibility,
    visible_part_names,
)
from .detections import (
    KEYPOINT_ORDER,
    BoundingBox,
    CityPersonsPoints,
    ImageFrame,
    Keypoint,
    KeypointName,
    PedestrianInstance,
    ResultDocument,
    ResultEntry,
    parse_frame_document,
    parse_result_document,
    serialize_frame_document,
    serialize_result_document,
    serialize_results,
)
from .errors import (
    CodecError,
    ContractError,
    DegenerateInputError,
    GeometryError,
    JoinError,
    OcclometerError,
    ParseError,
    SchemaError,
    ValidationError,
)
from .maskops import InstanceMask, rle_decode, rle_encode, round_pixel
from .oracle import (
    BatchSummary,
    EvaluationRecord,
    ErrorStats,
    PairedInstance,
    evaluate_batch,
    parse_pairs_document,
    pixelwise_occlusion,
    records_to_csv,
    serialize_pairs_document,
    summarize,
    summary_to_csv,
    visible_pixel_ratio,
)
from .schemes import (
    NOT_NUMERIC,
    SCHEMES,
    UNLABELED,
    Band,
    DatasetScheme,
    categorize,
    get_scheme,
    scheme_names,
)
from .synth import (
    FigureSpec,
    OccluderSpec,
    OcclusionOutcome,
    POSES,
    SyntheticScene,
    apply_occluder,
    generate_figure,
    generate_scenes,
)
from .visibility import (
    DEFAULT_SCORE_THRESHOLD,
    KeypointVerdict,
    VisibilityConfig,
    VisibilityReason,
    resolve_keypoint_visibility,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "OcclometerError", "ParseError", "SchemaError", "ValidationError",
    "CodecError", "GeometryError", "DegenerateInputError", "JoinError",
    "ContractError",
    # masks
    "InstanceMask", "rle_decode", "rle_encode", "round_pixel",
    # detections
    "KeypointName", "KEYPOINT_ORDER", "Keypoint", "BoundingBox",
    "CityPersonsPoints", "PedestrianInstance", "ImageFrame",
    "ResultEntry", "ResultDocument",
    "parse_frame_document", "serialize_frame_document",
    "serialize_results", "serialize_result_document", "parse_result_document",
    # visibility
    "DEFAULT_SCORE_THRESHOLD", "VisibilityConfig", "VisibilityReason",
    "KeypointVerdict", "resolve_keypoint_visibility",
    # surface model
    "BSA_MODEL", "PART_ORDER", "TOTAL_BSA_PERCENT", "BsaModel",
    "SemanticPart", "OcclusionResult", "classify_occlusion", "classify_frame",
    "visible_part_names", "part_visibility",
    # schemes
    "SCHEMES", "UNLABELED", "NOT_NUMERIC", "Band", "DatasetScheme",
    "scheme_names", "get_scheme", "categorize",
    # baselines
    "CITYPERSONS_ASPECT", "CityPersonsAnnotation", "FullExtentBox",
    "citypersons_full_box", "citypersons_occlusion", "bbox_occlusion_rate",
    # oracle
    "PairedInstance", "EvaluationRecord", "ErrorStats", "BatchSummary",
    "pixelwise_occlusion", "visible_pixel_ratio", "evaluate_batch",
    "summarize", "parse_pairs_document", "serialize_pairs_document",
    "summary_to_csv", "records_to_csv",
    # synth
    "POSES", "FigureSpec", "OccluderSpec", "OcclusionOutcome",
    "SyntheticScene", "generate_figure", "apply_occluder", "generate_scenes",
]
