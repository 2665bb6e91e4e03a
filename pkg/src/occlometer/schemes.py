"""Published benchmark occlusion-category schemes.

Each scheme maps an occlusion percentage onto that benchmark's label
bands, encoded exactly as the benchmarks print them:

* "a-b"  means [a, b] (both ends inclusive)
* "<a"   means [0, a)
* ">a"   means (a, 100]
* "<=a"  means [0, a]
* ">a-b" means (a, b]

Percentages falling between printed bands map to "unlabeled". When a
boundary value is claimed by two printed bands, the lower band wins
(bands are probed in ascending order). Schemes whose labels are purely
verbal carry no numeric bands and always answer "not_numeric".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractError, ValidationError

__all__ = [
    "Band",
    "DatasetScheme",
    "SCHEMES",
    "UNLABELED",
    "NOT_NUMERIC",
    "categorize",
    "get_scheme",
    "scheme_names",
]

UNLABELED = "unlabeled"
NOT_NUMERIC = "not_numeric"


@dataclass(frozen=True)
class Band:
    label: str
    lower: float
    upper: float
    lower_inclusive: bool = True
    upper_inclusive: bool = True

    def contains(self, value: float) -> bool:
        above = value >= self.lower if self.lower_inclusive else value > self.lower
        below = value <= self.upper if self.upper_inclusive else value < self.upper
        return above and below

    def describe(self) -> str:
        lo = "[" if self.lower_inclusive else "("
        hi = "]" if self.upper_inclusive else ")"
        return f"{self.label}: {lo}{self.lower:g}%, {self.upper:g}%{hi}"


@dataclass(frozen=True)
class DatasetScheme:
    """One benchmark's occlusion-severity bands."""

    name: str
    bands: tuple[Band, ...] = field(default_factory=tuple)
    numeric: bool = True
    verbal_labels: tuple[str, ...] = field(default_factory=tuple)

    def categorize(self, occlusion_percent: float) -> str:
        if not 0.0 <= occlusion_percent <= 100.0:
            raise ContractError(
                f"occlusion percentage must lie in [0, 100], got {occlusion_percent}"
            )
        if not self.numeric:
            return NOT_NUMERIC
        for band in self.bands:
            if band.contains(occlusion_percent):
                return band.label
        return UNLABELED

    def describe(self) -> str:
        if not self.numeric:
            return f"{self.name}: not numeric ({', '.join(self.verbal_labels)})"
        return f"{self.name}: " + " | ".join(b.describe() for b in self.bands)


SCHEMES: dict[str, DatasetScheme] = {
    s.name: s
    for s in (
        DatasetScheme(
            "eurocity",
            (
                Band("low", 0, 40, upper_inclusive=False),
                Band("partial", 40, 80),
                Band("heavy", 80, 100, lower_inclusive=False),
            ),
        ),
        DatasetScheme(
            "citypersons",
            (
                Band("partial", 0, 35, upper_inclusive=False),
                Band("heavy", 35, 75),
            ),
        ),
        DatasetScheme(
            "kitti",
            numeric=False,
            verbal_labels=("fully_visible", "partially_occluded", "difficult_to_see"),
        ),
        DatasetScheme(
            "caltech",
            (
                Band("partial", 1, 35),
                Band("heavy", 35, 80),
            ),
        ),
        DatasetScheme(
            "multispectral_ovis",
            (
                Band("partial", 0, 50),
                Band("heavy", 50, 100, lower_inclusive=False),
            ),
        ),
        DatasetScheme(
            "tju_dhd",
            (
                Band("partial", 0, 35),
                Band("heavy", 35, 100, lower_inclusive=False),
            ),
        ),
        DatasetScheme(
            "daimler_tsinghua",
            (
                Band("low", 0, 10, upper_inclusive=False),
                Band("partial", 10, 40),
                Band("heavy", 41, 80),
            ),
        ),
        # the benchmark's lowest band is the verbal "fully visible", which
        # carries no numeric bounds; values below 1% therefore fall in a gap
        DatasetScheme(
            "li2017",
            (
                Band("partial", 1, 40),
                Band("heavy", 41, 80),
            ),
        ),
        DatasetScheme(
            "sailvos",
            (
                Band("partial", 1, 25),
                Band("heavy", 25, 75, lower_inclusive=False),
            ),
        ),
    )
}


def scheme_names() -> tuple[str, ...]:
    return tuple(SCHEMES)


def get_scheme(name: str) -> DatasetScheme:
    try:
        return SCHEMES[name]
    except KeyError:
        raise ValidationError(
            f"unknown scheme '{name}'; known schemes: {', '.join(SCHEMES)}"
        ) from None


def categorize(scheme: DatasetScheme | str, occlusion_percent: float) -> str:
    """Label an occlusion percentage under the given scheme."""
    if isinstance(scheme, str):
        scheme = get_scheme(scheme)
    return scheme.categorize(occlusion_percent)
