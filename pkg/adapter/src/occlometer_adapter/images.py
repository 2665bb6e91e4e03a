"""Image loading for the adapter."""

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import AdapterIOError

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".pgm", ".ppm")


def load_image(path: Path) -> np.ndarray:
    """Read an image file as an RGB uint8 array of shape (H, W, 3)."""
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("RGB"), dtype=np.uint8)
    except FileNotFoundError as err:
        raise AdapterIOError(f"image '{path}' does not exist") from err
    except (OSError, UnidentifiedImageError) as err:
        raise AdapterIOError(f"cannot read image '{path}': {err}") from err


def list_images(directory: Path) -> list[Path]:
    """Image files directly inside `directory`, sorted by name."""
    if not directory.is_dir():
        raise AdapterIOError(f"'{directory}' is not a directory")
    return sorted(
        p for p in directory.iterdir()
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )
