"""Command-line surface for annotation and evaluation workflows.

Exit codes partition error classes: 0 success, 2 unreadable or unwritable
paths, 3 malformed or inconsistent documents and invalid parameter
values, 4 internal contract violations. Diagnostics go to stderr; set the
OCCLOMETER_LOG environment variable (DEBUG, INFO, WARNING, ERROR) for
more or less chatter.

All outputs are deterministic functions of the inputs and flags; nothing
writes timestamps or machine-local data, and `classify --jobs N` yields
byte-identical files for every N.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .baselines import CityPersonsAnnotation, bbox_occlusion_rate, citypersons_occlusion
from .bsa import classify_frame
from .detections import (
    ImageFrame,
    parse_frame_document,
    serialize_frame_document,
    serialize_results,
)
from .errors import ContractError, OcclometerError, ValidationError
from .oracle import (
    evaluate_batch,
    parse_pairs_document,
    records_to_csv,
    serialize_pairs_document,
    summary_to_csv,
)
from .schemes import SCHEMES, categorize
from .synth import generate_scenes
from .visibility import DEFAULT_SCORE_THRESHOLD, VisibilityConfig

__all__ = ["main"]

log = logging.getLogger("occlometer")

EXIT_OK = 0
EXIT_IO = 2
EXIT_DOCUMENT = 3
EXIT_INTERNAL = 4


def _setup_logging() -> None:
    wanted = os.environ.get("OCCLOMETER_LOG", "").strip().upper()
    level = getattr(logging, wanted, None) if wanted else logging.WARNING
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="occlometer",
        description="Pedestrian occlusion levels from keypoints and instance masks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="annotate detection documents with occlusion levels"
    )
    p_classify.add_argument("--input", required=True, help="frame document or directory")
    p_classify.add_argument("--out", required=True, help="output document or directory")
    p_classify.add_argument(
        "--keypoint-threshold", type=float, default=DEFAULT_SCORE_THRESHOLD,
        help="visibility score cutoff in [0, 1] (default %(default)s)",
    )
    p_classify.add_argument(
        "--scheme", default=None,
        help="also label each instance under this benchmark scheme",
    )
    p_classify.add_argument(
        "--jobs", type=int, default=1, help="worker threads for directory input"
    )

    p_eval = sub.add_parser(
        "evaluate", help="score estimators against the pixel-wise oracle"
    )
    p_eval.add_argument("--input", required=True, help="frame document or directory")
    p_eval.add_argument("--pairs", required=True, help="paired full/occluded mask document")
    p_eval.add_argument("--out", required=True, help="output directory for the two CSVs")
    p_eval.add_argument(
        "--keypoint-threshold", type=float, default=DEFAULT_SCORE_THRESHOLD,
        help="visibility score cutoff in [0, 1] (default %(default)s)",
    )

    p_base = sub.add_parser("baseline", help="published baseline estimators")
    base_sub = p_base.add_subparsers(dest="baseline_command", required=True)
    p_cp = base_sub.add_parser(
        "citypersons", help="fixed-aspect full-box occlusion from annotated lines"
    )
    p_cp.add_argument("--input", required=True, help="frame document or directory")
    p_cp.add_argument("--out", required=True, help="output CSV path")
    p_rate = base_sub.add_parser(
        "bbox-rate", help="pairwise box-overlap occlusion rate per instance"
    )
    p_rate.add_argument("--input", required=True, help="frame document or directory")
    p_rate.add_argument("--out", required=True, help="output CSV path")

    p_synth = sub.add_parser("synth", help="generate synthetic evaluation fixtures")
    p_synth.add_argument("--count", type=int, required=True, help="number of scenes")
    p_synth.add_argument("--seed", type=int, required=True, help="generator seed")
    p_synth.add_argument("--out", required=True, help="output directory")

    p_schemes = sub.add_parser("schemes", help="benchmark scheme reference")
    schemes_sub = p_schemes.add_subparsers(dest="schemes_command", required=True)
    schemes_sub.add_parser("list", help="print every scheme's band table")

    return parser


def _input_documents(path_str: str) -> list[Path]:
    """A single document path, or every .json inside a directory, sorted."""
    path = Path(path_str)
    if path.is_dir():
        docs = sorted(p for p in path.iterdir() if p.suffix == ".json" and p.is_file())
        if not docs:
            raise FileNotFoundError(f"no .json documents in directory '{path}'")
        return docs
    if not path.is_file():
        raise FileNotFoundError(f"input path '{path}' does not exist")
    return [path]


def _read_frames(path_str: str) -> list[ImageFrame]:
    return [parse_frame_document(p.read_text()) for p in _input_documents(path_str)]


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _threshold_config(value: float) -> VisibilityConfig:
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"--keypoint-threshold must lie in [0, 1], got {value}")
    return VisibilityConfig(score_threshold=value)


def _classify_one(doc_path: Path, out_path: Path, config: VisibilityConfig, scheme: str | None) -> None:
    frame = parse_frame_document(doc_path.read_text())
    results = classify_frame(frame, config)
    categories = None
    if scheme is not None:
        categories = {
            r.instance_id: categorize(scheme, r.occlusion_percent) for r in results
        }
    _write_text(out_path, serialize_results(frame, results, categories))
    log.info("classified %s -> %s (%d instances)", doc_path, out_path, len(results))


def _cmd_classify(args) -> int:
    config = _threshold_config(args.keypoint_threshold)
    if args.jobs < 1:
        raise ValidationError(f"--jobs must be at least 1, got {args.jobs}")
    if args.scheme is not None and args.scheme not in SCHEMES:
        raise ValidationError(
            f"unknown scheme '{args.scheme}'; known schemes: {', '.join(SCHEMES)}"
        )
    in_path = Path(args.input)
    docs = _input_documents(args.input)
    if in_path.is_dir():
        out_dir = Path(args.out)
        targets = [(doc, out_dir / doc.name) for doc in docs]
    else:
        targets = [(docs[0], Path(args.out))]

    if args.jobs == 1 or len(targets) == 1:
        for doc, out in targets:
            _classify_one(doc, out, config, args.scheme)
    else:
        # Per-document work is independent and each thread writes only its
        # own output file, so the result is identical for any job count.
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [
                pool.submit(_classify_one, doc, out, config, args.scheme)
                for doc, out in targets
            ]
            for fut in futures:
                fut.result()
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    config = _threshold_config(args.keypoint_threshold)
    frames = _read_frames(args.input)
    pairs = parse_pairs_document(Path(args.pairs).read_text())
    records, summary = evaluate_batch(pairs, frames, config)
    out_dir = Path(args.out)
    _write_text(out_dir / "summary.csv", summary_to_csv(summary))
    _write_text(out_dir / "instances.csv", records_to_csv(records))
    log.info("evaluated %d pairs into %s", len(records), out_dir)
    return EXIT_OK


def _cmd_baseline_citypersons(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["frame_id", "instance_id", "occlusion_fraction"])
    rows = 0
    for frame in _read_frames(args.input):
        for inst in frame.instances:
            if inst.citypersons is None:
                continue
            ann = CityPersonsAnnotation(
                head_top=inst.citypersons.head_top,
                feet_mid=inst.citypersons.feet_mid,
                bbox_visible=inst.bbox_visible,
            )
            writer.writerow([frame.frame_id, inst.instance_id, repr(citypersons_occlusion(ann))])
            rows += 1
    if rows == 0:
        raise ValidationError("no instance carries a citypersons annotation block")
    _write_text(Path(args.out), buf.getvalue())
    return EXIT_OK


def _cmd_baseline_bbox_rate(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["frame_id", "instance_id", "bbox_occlusion_rate"])
    for frame in _read_frames(args.input):
        for inst in frame.instances:
            others = [
                o.bbox_visible for o in frame.instances
                if o.instance_id != inst.instance_id
            ]
            rate = bbox_occlusion_rate(inst.bbox_visible, others)
            writer.writerow([frame.frame_id, inst.instance_id, repr(rate)])
    _write_text(Path(args.out), buf.getvalue())
    return EXIT_OK


def _cmd_synth(args) -> int:
    if args.count < 1:
        raise ValidationError(f"--count must be at least 1, got {args.count}")
    scenes = generate_scenes(args.count, args.seed)
    out_dir = Path(args.out)
    for scene in scenes:
        _write_text(
            out_dir / "frames" / f"{scene.frame.frame_id}.json",
            serialize_frame_document(scene.frame),
        )
    _write_text(
        out_dir / "pairs.json",
        serialize_pairs_document([scene.pair for scene in scenes]),
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance_id", "analytic_occlusion", "occluded_parts"])
    for scene in scenes:
        writer.writerow(
            [
                scene.target_id,
                repr(scene.analytic_occlusion),
                ";".join(scene.expected_occluded_parts),
            ]
        )
    _write_text(out_dir / "ground_truth.csv", buf.getvalue())
    log.info("wrote %d scenes to %s", len(scenes), out_dir)
    return EXIT_OK


def _cmd_schemes_list() -> int:
    for scheme in SCHEMES.values():
        print(scheme.describe())
    return EXIT_OK


def main(argv=None) -> int:
    _setup_logging()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        if args.command == "baseline":
            if args.baseline_command == "citypersons":
                return _cmd_baseline_citypersons(args)
            return _cmd_baseline_bbox_rate(args)
        if args.command == "synth":
            return _cmd_synth(args)
        if args.command == "schemes":
            return _cmd_schemes_list()
        raise ContractError(f"unhandled command '{args.command}'")
    except ContractError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OcclometerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOCUMENT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # pragma: no cover - safety net for bugs
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
