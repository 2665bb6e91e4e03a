"""Adapter configuration: which models to run and how to gate proposals."""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import AdapterIOError, ConfigError

KNOWN_BACKENDS = ("torchvision", "synthetic")


@dataclass(frozen=True)
class AdapterConfig:
    """Model selection and proposal gating.

    Model identifiers take the form "<backend>/<model name>". The person
    category filter is always applied inside the backends; `score_floor`
    additionally drops person proposals below that confidence before the
    keypoint/mask join. The underlying annotation method leaves this
    floor unstated, so it is an explicit knob here; 0.5 is the default
    person-detection confidence.
    """

    keypoint_model: str = "torchvision/keypointrcnn_resnet50_fpn"
    mask_model: str = "torchvision/maskrcnn_resnet50_fpn"
    score_floor: float = 0.5
    device: str = "cpu"

    def __post_init__(self) -> None:
        for model_id in (self.keypoint_model, self.mask_model):
            backend = backend_of(model_id)
            if backend not in KNOWN_BACKENDS:
                raise ConfigError(
                    f"unknown backend '{backend}' in model id '{model_id}' "
                    f"(known: {', '.join(KNOWN_BACKENDS)})"
                )
        if not 0.0 <= self.score_floor <= 1.0:
            raise ConfigError(f"score_floor must be in [0, 1], got {self.score_floor}")
        if not self.device:
            raise ConfigError("device must be a non-empty string")


def backend_of(model_id: str) -> str:
    if "/" not in model_id:
        raise ConfigError(
            f"model id '{model_id}' must look like '<backend>/<model name>'"
        )
    return model_id.split("/", 1)[0]


_FIELDS = ("keypoint_model", "mask_model", "score_floor", "device")


def load_config(path: Path) -> AdapterConfig:
    """Read an AdapterConfig from a JSON object file.

    Absent keys keep their defaults; unknown keys are rejected so typos
    do not silently run the wrong model.
    """
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as err:
        raise AdapterIOError(f"cannot read config file: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config file is not valid JSON: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = sorted(set(raw) - set(_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return AdapterConfig(**raw)
