"""Command line front end.

    adapter infer --images <dir> --out <dir> [--config <file.json>]

Exit codes: 0 success, 2 I/O failure, 3 invalid configuration or
unavailable backend. Inference runs per image; output writing is
sequential, one JSON document per image, named after the image stem.
"""

import argparse
import sys
from pathlib import Path

from .config import AdapterConfig, load_config
from .errors import AdapterError, AdapterIOError
from .images import list_images
from .infer import infer_frame_text

EXIT_OK = 0
EXIT_IO = 2
EXIT_CONFIG = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Run detection models on images and emit frame documents",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    infer = sub.add_parser("infer", help="infer every image in a directory")
    infer.add_argument("--images", required=True, type=Path,
                       help="directory of input images")
    infer.add_argument("--out", required=True, type=Path,
                       help="directory for the emitted JSON documents")
    infer.add_argument("--config", type=Path, default=None,
                       help="JSON config file with model identifiers")
    return parser


def _cmd_infer(args) -> int:
    config = load_config(args.config) if args.config else AdapterConfig()
    images = list_images(args.images)
    if not images:
        raise AdapterIOError(f"no image files found in '{args.images}'")
    args.out.mkdir(parents=True, exist_ok=True)
    for image_path in images:
        text = infer_frame_text(image_path, config)
        (args.out / f"{image_path.stem}.json").write_text(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _cmd_infer(args)
    except AdapterIOError as err:
        print(f"io error: {err}", file=sys.stderr)
        return EXIT_IO
    except AdapterError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
