"""Configuration parsing and validation."""

import dataclasses
import json

import pytest

from occlometer_adapter import AdapterConfig, load_config
from occlometer_adapter.config import backend_of
from occlometer_adapter.errors import AdapterIOError, ConfigError


def test_defaults_point_at_torchvision_models():
    config = AdapterConfig()
    assert config.keypoint_model == "torchvision/keypointrcnn_resnet50_fpn"
    assert config.mask_model == "torchvision/maskrcnn_resnet50_fpn"
    assert config.score_floor == 0.5
    assert config.device == "cpu"


def test_config_is_frozen():
    config = AdapterConfig()
    with pytest.raises(dataclasses.FrozenInstanceError):
        config.score_floor = 0.9


@pytest.mark.parametrize(
    "kwargs",
    [
        {"score_floor": -0.1},
        {"score_floor": 1.0001},
        {"keypoint_model": "noslash"},
        {"mask_model": "mystery/model"},
        {"device": ""},
    ],
)
def test_invalid_values_rejected_at_construction(kwargs):
    with pytest.raises(ConfigError):
        AdapterConfig(**kwargs)


def test_unregistered_model_passes_construction_but_not_resolution():
    # construction only checks the backend prefix; the model registry is
    # consulted when the backend is actually resolved
    from occlometer_adapter import resolve_keypoint_backend

    config = AdapterConfig(keypoint_model="synthetic/nonexistent")
    with pytest.raises(ConfigError):
        resolve_keypoint_backend(config.keypoint_model, config.device)


def test_backend_of_splits_on_first_slash():
    assert backend_of("torchvision/keypointrcnn_resnet50_fpn") == "torchvision"
    assert backend_of("a/b/c") == "a"
    with pytest.raises(ConfigError):
        backend_of("nodelimiter")


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "keypoint_model": "synthetic/blob17",
        "mask_model": "synthetic/blob",
        "score_floor": 0.25,
        "device": "cpu",
    }))
    config = load_config(path)
    assert config.keypoint_model == "synthetic/blob17"
    assert config.mask_model == "synthetic/blob"
    assert config.score_floor == 0.25
    assert config.device == "cpu"


def test_load_config_absent_keys_keep_defaults(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"score_floor": 0.1}')
    config = load_config(path)
    assert config.score_floor == 0.1
    assert config.keypoint_model == AdapterConfig().keypoint_model
    assert config.device == "cpu"


def test_load_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"scor_floor": 0.1, "model": "x"}')
    with pytest.raises(ConfigError) as exc:
        load_config(path)
    assert "model" in str(exc.value)
    assert "scor_floor" in str(exc.value)


@pytest.mark.parametrize("text", ["[1, 2]", '"just a string"', "{not json"])
def test_load_config_rejects_non_object_documents(tmp_path, text):
    path = tmp_path / "cfg.json"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(path)


def test_load_config_missing_file_is_io_error(tmp_path):
    with pytest.raises(AdapterIOError):
        load_config(tmp_path / "absent.json")
