"""Pixel-wise occlusion oracle and the comparative estimator evaluation.

A paired instance holds the same pedestrian's mask with and without
occluders. The oracle occlusion is 1 minus the visible pixel ratio
(occluded area over full area, clamped). ``evaluate_batch`` joins pairs
against detections, runs the proposed classifier and the CityPersons
baseline, and reduces errors against the oracle into overall and
per-decile MAE/RMSE, all expressed in percentage points.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .baselines import CityPersonsAnnotation, citypersons_occlusion
from .bsa import classify_occlusion
from .detections import (
    ImageFrame,
    PedestrianInstance,
    _as_int,
    _as_list,
    _as_obj,
    _as_str,
    _get,
    _join,
    _mask_to_dict,
    _parse_mask,
)
from .errors import DegenerateInputError, GeometryError, JoinError, ParseError
from .maskops import InstanceMask
from .visibility import VisibilityConfig

__all__ = [
    "PairedInstance",
    "EvaluationRecord",
    "ErrorStats",
    "DecileErrors",
    "BatchSummary",
    "pixelwise_occlusion",
    "visible_pixel_ratio",
    "evaluate_batch",
    "parse_pairs_document",
    "serialize_pairs_document",
    "summary_to_csv",
    "records_to_csv",
]

PROPOSED = "proposed"
CITYPERSONS = "citypersons"


@dataclass(frozen=True)
class PairedInstance:
    """Full and occluded masks of one pedestrian, matched by identity."""

    instance_id: str
    mask_full: InstanceMask
    mask_occluded: InstanceMask

    def __post_init__(self) -> None:
        if (self.mask_full.width, self.mask_full.height) != (
            self.mask_occluded.width,
            self.mask_occluded.height,
        ):
            raise GeometryError(
                f"pair '{self.instance_id}': mask dimensions differ"
            )
        if self.mask_full.area() == 0:
            raise DegenerateInputError(
                f"pair '{self.instance_id}': full mask has zero area"
            )


def visible_pixel_ratio(pair: PairedInstance) -> float:
    """Raw visible-area ratio: occluded-mask area over full-mask area.

    Mask noise can push this above 1; callers clamp where needed.
    """
    return pair.mask_occluded.area() / pair.mask_full.area()


def pixelwise_occlusion(pair: PairedInstance) -> float:
    """Oracle occlusion fraction: 1 - visible ratio, clamped to [0, 1]."""
    return 1.0 - min(max(visible_pixel_ratio(pair), 0.0), 1.0)


@dataclass(frozen=True)
class EvaluationRecord:
    """Per-instance oracle and estimator values (fractions in [0, 1])."""

    instance_id: str
    occ_pixel: float
    pixel_visible_ratio: float
    occ_proposed: float
    occ_citypersons: float | None
    occluded_parts: tuple[str, ...]


@dataclass(frozen=True)
class ErrorStats:
    """MAE / RMSE of one estimator against the oracle, in percentage points."""

    n: int
    mae: float | None
    rmse: float | None


@dataclass(frozen=True)
class DecileErrors:
    bin_low: float
    bin_high: float
    proposed: ErrorStats
    citypersons: ErrorStats


@dataclass(frozen=True)
class BatchSummary:
    n: int
    overall_proposed: ErrorStats
    overall_citypersons: ErrorStats
    deciles: tuple[DecileErrors, ...]

    @property
    def defined(self) -> bool:
        return self.n > 0


def _stats(errors_points: Sequence[float]) -> ErrorStats:
    n = len(errors_points)
    if n == 0:
        return ErrorStats(0, None, None)
    mae = math.fsum(abs(e) for e in errors_points) / n
    rmse = math.sqrt(math.fsum(e * e for e in errors_points) / n)
    return ErrorStats(n, mae, rmse)


def _decile_index(occ_pixel_percent: float) -> int:
    return min(int(occ_pixel_percent // 10.0), 9)


def evaluate_batch(
    pairs: Sequence[PairedInstance],
    frames: Sequence[ImageFrame],
    config: VisibilityConfig | None = None,
    require_citypersons: bool = False,
) -> tuple[list[EvaluationRecord], BatchSummary]:
    """Join pairs to detections and score every estimator against the oracle.

    Raises JoinError listing every pair whose instance_id has no detection
    (or, with ``require_citypersons``, no CityPersons annotation).
    """
    config = config or VisibilityConfig()
    by_id: dict[str, tuple[PedestrianInstance, ImageFrame]] = {}
    for frame in frames:
        for inst in frame.instances:
            by_id.setdefault(inst.instance_id, (inst, frame))

    missing = [p.instance_id for p in pairs if p.instance_id not in by_id]
    if missing:
        raise JoinError(f"unresolved instance ids: {', '.join(missing)}")
    if require_citypersons:
        bare = [
            p.instance_id
            for p in pairs
            if by_id[p.instance_id][0].citypersons is None
        ]
        if bare:
            raise JoinError(
                f"instances lack citypersons annotations: {', '.join(bare)}"
            )

    records: list[EvaluationRecord] = []
    for pair in pairs:
        inst, frame = by_id[pair.instance_id]
        result = classify_occlusion(inst, frame, config)
        occ_cp = None
        if inst.citypersons is not None:
            ann = CityPersonsAnnotation(
                head_top=inst.citypersons.head_top,
                feet_mid=inst.citypersons.feet_mid,
                bbox_visible=inst.bbox_visible,
            )
            occ_cp = citypersons_occlusion(ann)
        records.append(
            EvaluationRecord(
                instance_id=pair.instance_id,
                occ_pixel=pixelwise_occlusion(pair),
                pixel_visible_ratio=visible_pixel_ratio(pair),
                occ_proposed=result.occlusion_percent / 100.0,
                occ_citypersons=occ_cp,
                occluded_parts=result.occluded_parts_ordered(),
            )
        )
    return records, summarize(records)


def summarize(records: Sequence[EvaluationRecord]) -> BatchSummary:
    """Reduce records into overall and per-decile error statistics."""
    prop_err: list[list[float]] = [[] for _ in range(10)]
    cp_err: list[list[float]] = [[] for _ in range(10)]
    for rec in records:
        oracle_pts = rec.occ_pixel * 100.0
        idx = _decile_index(oracle_pts)
        prop_err[idx].append(rec.occ_proposed * 100.0 - oracle_pts)
        if rec.occ_citypersons is not None:
            cp_err[idx].append(rec.occ_citypersons * 100.0 - oracle_pts)
    deciles = tuple(
        DecileErrors(
            bin_low=10.0 * i,
            bin_high=10.0 * (i + 1),
            proposed=_stats(prop_err[i]),
            citypersons=_stats(cp_err[i]),
        )
        for i in range(10)
    )
    return BatchSummary(
        n=len(records),
        overall_proposed=_stats([e for bucket in prop_err for e in bucket]),
        overall_citypersons=_stats([e for bucket in cp_err for e in bucket]),
        deciles=deciles,
    )


# --------------------------------------------------------------------------
# paired-input documents and CSV export

def parse_pairs_document(text: str) -> list[PairedInstance]:
    """Parse the paired-input document: a JSON array of
    {instance_id, mask_full, mask_occluded} objects."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise ParseError("paired document must be a top-level array")
    pairs = []
    for idx, raw in enumerate(doc):
        path = f"[{idx}]"
        obj = _as_obj(raw, path)
        pairs.append(
            PairedInstance(
                instance_id=_as_str(_get(obj, "instance_id", path), _join(path, "instance_id")),
                mask_full=_parse_mask(_get(obj, "mask_full", path), _join(path, "mask_full")),
                mask_occluded=_parse_mask(
                    _get(obj, "mask_occluded", path), _join(path, "mask_occluded")
                ),
            )
        )
    return pairs


def serialize_pairs_document(pairs: Sequence[PairedInstance]) -> str:
    doc = [
        {
            "instance_id": p.instance_id,
            "mask_full": _mask_to_dict(p.mask_full),
            "mask_occluded": _mask_to_dict(p.mask_occluded),
        }
        for p in pairs
    ]
    return json.dumps(doc, indent=2) + "\n"


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(value)


def summary_to_csv(summary: BatchSummary) -> str:
    """Summary CSV: one overall row (0-100) plus ten decile rows per
    estimator. MAE/RMSE are in percentage points, full precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["estimator", "bin_low", "bin_high", "n", "mae", "rmse"])
    for name, overall, pick in (
        (PROPOSED, summary.overall_proposed, lambda d: d.proposed),
        (CITYPERSONS, summary.overall_citypersons, lambda d: d.citypersons),
    ):
        writer.writerow([name, 0, 100, overall.n, _fmt(overall.mae), _fmt(overall.rmse)])
        for dec in summary.deciles:
            stats = pick(dec)
            writer.writerow(
                [name, int(dec.bin_low), int(dec.bin_high), stats.n,
                 _fmt(stats.mae), _fmt(stats.rmse)]
            )
    return buf.getvalue()


def records_to_csv(records: Sequence[EvaluationRecord]) -> str:
    """Per-instance CSV with full-precision fractions."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance_id", "occ_pixel", "occ_proposed", "occ_citypersons"])
    for rec in records:
        writer.writerow(
            [
                rec.instance_id,
                repr(rec.occ_pixel),
                repr(rec.occ_proposed),
                "" if rec.occ_citypersons is None else repr(rec.occ_citypersons),
            ]
        )
    return buf.getvalue()
