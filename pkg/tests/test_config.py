"""Tests for strict camera config parsing."""

from __future__ import annotations

import json

import pytest

from camline import (
    CameraConfig,
    ConfigError,
    DistortionCoefficients,
    Intrinsics,
    SceneConstraints,
    dump_camera_config,
    load_camera_config,
    save_camera_config,
)

VALID = {
    "intrinsics": {"fx": 1000.0, "fy": 1000.0, "cx": 640.0, "cy": 360.0, "skew": 0.0},
    "distortion": {"k1": -1e-8, "k2": 0.0, "p1": 1e-9, "p2": 0.0, "k3": 0.0},
    "scene": {"c0": 2.0, "z0": 3.0},
}


def write_config(tmp_path, doc, name="camera.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_valid_config(tmp_path):
    cfg = load_camera_config(write_config(tmp_path, VALID))
    assert cfg.intrinsics == Intrinsics(fx=1000.0, fy=1000.0, cx=640.0, cy=360.0)
    assert cfg.distortion.k1 == -1e-8
    assert cfg.distortion.p1 == 1e-9
    assert cfg.scene == SceneConstraints(c0=2.0, z0=3.0)


def test_skew_and_distortion_default_to_zero(tmp_path):
    doc = {
        "intrinsics": {"fx": 900.0, "fy": 900.0, "cx": 320.0, "cy": 240.0},
        "scene": {"c0": 1.5, "z0": 4.0},
    }
    cfg = load_camera_config(write_config(tmp_path, doc))
    assert cfg.intrinsics.skew == 0.0
    assert cfg.distortion == DistortionCoefficients.zero()


def test_unknown_top_level_field_is_named(tmp_path):
    doc = dict(VALID, extra={"a": 1})
    with pytest.raises(ConfigError, match="extra"):
        load_camera_config(write_config(tmp_path, doc))


def test_unknown_distortion_coefficient_is_named(tmp_path):
    doc = json.loads(json.dumps(VALID))
    doc["distortion"]["k4"] = 0.1
    with pytest.raises(ConfigError, match="distortion.k4"):
        load_camera_config(write_config(tmp_path, doc))


def test_missing_scene_section(tmp_path):
    doc = {"intrinsics": VALID["intrinsics"]}
    with pytest.raises(ConfigError, match="scene"):
        load_camera_config(write_config(tmp_path, doc))


def test_missing_required_field_is_named(tmp_path):
    doc = json.loads(json.dumps(VALID))
    del doc["intrinsics"]["cy"]
    with pytest.raises(ConfigError, match="intrinsics.cy"):
        load_camera_config(write_config(tmp_path, doc))


def test_invariant_violation_names_field(tmp_path):
    doc = json.loads(json.dumps(VALID))
    doc["intrinsics"]["fy"] = 0.0
    with pytest.raises(ConfigError, match="fy"):
        load_camera_config(write_config(tmp_path, doc))


def test_non_numeric_value_rejected(tmp_path):
    doc = json.loads(json.dumps(VALID))
    doc["scene"]["c0"] = "two"
    with pytest.raises(ConfigError, match="scene.c0"):
        load_camera_config(write_config(tmp_path, doc))


def test_boolean_is_not_a_number(tmp_path):
    doc = json.loads(json.dumps(VALID))
    doc["intrinsics"]["fx"] = True
    with pytest.raises(ConfigError, match="intrinsics.fx"):
        load_camera_config(write_config(tmp_path, doc))


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError, match="JSON"):
        load_camera_config(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="read"):
        load_camera_config(tmp_path / "nope.json")


def test_dump_load_round_trip(tmp_path):
    cfg = CameraConfig(
        intrinsics=Intrinsics(fx=800.0, fy=820.0, cx=400.0, cy=300.0, skew=0.25),
        distortion=DistortionCoefficients(k1=1e-8, k2=-2e-15, k3=3e-21, p1=-1e-9, p2=2e-9),
        scene=SceneConstraints(c0=1.75, z0=6.5),
    )
    path = tmp_path / "out.json"
    save_camera_config(cfg, path)
    assert load_camera_config(path) == cfg


def test_distortion_serialization_order():
    doc = dump_camera_config(
        CameraConfig(
            intrinsics=Intrinsics(fx=1.0, fy=1.0, cx=0.0, cy=0.0),
            distortion=DistortionCoefficients(),
            scene=SceneConstraints(c0=1.0, z0=1.0),
        )
    )
    assert list(doc["distortion"]) == ["k1", "k2", "p1", "p2", "k3"]
