"""Binary instance masks and their run-length interchange codec.

The interchange form is a flat list of run lengths over the row-major
flattened grid, alternating unset/set and always starting with an unset
run (which may have length zero). It is the uncompressed-counts cousin of
the COCO mask payload, kept codec-simple so documents stay hand-checkable.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import CodecError, GeometryError

__all__ = ["InstanceMask", "rle_decode", "rle_encode", "round_pixel"]


def round_pixel(value: float) -> int:
    """Map a continuous image coordinate to a pixel index.

    Nearest integer with ties toward +inf, so 2.5 -> 3 and -0.5 -> 0.
    """
    return int(math.floor(value + 0.5))


class InstanceMask:
    """Immutable row-major binary occupancy grid for one instance."""

    __slots__ = ("_bits",)

    def __init__(self, bits) -> None:
        arr = np.array(bits, dtype=bool, copy=True)
        if arr.ndim != 2:
            raise GeometryError(f"mask must be two-dimensional, got {arr.ndim} axis/axes")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise GeometryError(
                f"mask dimensions must be positive, got {arr.shape[1]}x{arr.shape[0]}"
            )
        arr.setflags(write=False)
        self._bits = arr

    @property
    def bits(self) -> np.ndarray:
        """Read-only (height, width) boolean array."""
        return self._bits

    @property
    def width(self) -> int:
        return self._bits.shape[1]

    @property
    def height(self) -> int:
        return self._bits.shape[0]

    def area(self) -> int:
        """Number of set pixels."""
        return int(self._bits.sum())

    def contains(self, x: float, y: float) -> bool:
        """True iff the rounded (x, y) indexes a set pixel.

        Coordinates outside [0, width) x [0, height) are never contained.
        """
        col = round_pixel(x)
        row = round_pixel(y)
        if not (0 <= col < self.width and 0 <= row < self.height):
            return False
        return bool(self._bits[row, col])

    def intersection_area(self, other: "InstanceMask") -> int:
        """Count of pixels set in both masks; requires equal dimensions."""
        if (self.width, self.height) != (other.width, other.height):
            raise GeometryError(
                f"mask dimensions differ: {self.width}x{self.height} vs "
                f"{other.width}x{other.height}"
            )
        return int(np.logical_and(self._bits, other._bits).sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InstanceMask):
            return NotImplemented
        return self._bits.shape == other._bits.shape and bool(
            np.array_equal(self._bits, other._bits)
        )

    __hash__ = None  # mutable-baggage semantics: compare by value, never hash

    def __repr__(self) -> str:
        return f"InstanceMask({self.width}x{self.height}, area={self.area()})"


def rle_decode(counts: Sequence[int], width: int, height: int) -> InstanceMask:
    """Expand alternating unset/set run lengths into a mask.

    The first run is always the unset run (possibly zero-length); runs
    cover the row-major flattening of the grid and must sum to
    width * height exactly.
    """
    if width < 1 or height < 1:
        raise GeometryError(f"mask dimensions must be positive, got {width}x{height}")
    clean: list[int] = []
    for i, c in enumerate(counts):
        if isinstance(c, bool) or not isinstance(c, (int, np.integer)):
            raise CodecError(f"counts[{i}] must be an integer, got {c!r}")
        if c < 0:
            raise CodecError(f"counts[{i}] is negative: {c}")
        clean.append(int(c))
    total = sum(clean)
    if total != width * height:
        raise CodecError(
            f"counts sum to {total}, expected width*height = {width * height}"
        )
    values = np.arange(len(clean), dtype=np.int64) % 2 == 1
    flat = np.repeat(values, clean)
    return InstanceMask(flat.reshape(height, width))


def rle_encode(mask: InstanceMask) -> list[int]:
    """Inverse of :func:`rle_decode`, producing the canonical form.

    Canonical means no zero-length interior runs; only the leading unset
    run may be zero (when the mask starts with a set pixel).
    """
    flat = mask.bits.ravel().astype(np.int8)
    change = np.flatnonzero(np.diff(flat)) + 1
    bounds = np.concatenate(([0], change, [flat.size]))
    counts = np.diff(bounds).tolist()
    if flat[0] == 1:
        counts.insert(0, 0)
    return [int(c) for c in counts]
