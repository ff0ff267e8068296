import json
import math

import pytest
import yaml

from gripperforge.config import (
    config_from_dict,
    config_to_dict,
    dump_config,
    load_catalog,
    load_config,
    load_scene,
    object_from_record,
    object_to_record,
)
from gripperforge.design import GripperConfig
from gripperforge.errors import DomainError
from gripperforge.grasp import Box, Cylinder, Irregular


def test_defaults_in_external_units():
    doc = config_to_dict(GripperConfig())
    assert doc["leg_length_mm"] == pytest.approx(150)
    assert doc["footprint_area_mm2"] == pytest.approx(35)
    assert doc["opening_max_mm"] == pytest.approx(120)
    assert doc["yield_strength_mpa"] == pytest.approx(200)
    assert doc["young_modulus_gpa"] == pytest.approx(200)


def test_partial_document_overrides_defaults(tmp_path):
    p = tmp_path / "g.yaml"
    p.write_text("leg_diameter_mm: 4\nlegs: 3\ninclination_deg: 1.12\n")
    cfg = load_config(p)
    assert cfg.leg.diameter == pytest.approx(0.004)
    assert cfg.legs == 3
    assert cfg.leg.inclination == pytest.approx(math.radians(1.12))
    assert cfg.opening_max == pytest.approx(0.120)


def test_round_trip_within_tolerance(tmp_path):
    doc = {
        "legs": 4, "leg_diameter_mm": 4.7, "leg_length_mm": 151.3, "pad_length_mm": 98.1,
        "tip_clearance_mm": 9.7, "footprint_area_mm2": 33.3, "inclination_deg": 1.123,
        "opening_min_mm": 5.5, "opening_max_mm": 117.2, "opening_accuracy_mm": 0.9,
        "force_command_max_n": 42.0, "material_name": "ss", "young_modulus_gpa": 193.0,
        "yield_strength_mpa": 215.0,
    }
    p = tmp_path / "g.yaml"
    p.write_text(yaml.safe_dump(doc))
    again = yaml.safe_load(dump_config(load_config(p)))
    for k, v in doc.items():
        if isinstance(v, float):
            assert again[k] == pytest.approx(v, rel=1e-9)
        else:
            assert again[k] == v


def test_json_config_is_accepted(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"legs": 2}))
    assert load_config(p).legs == 2


def test_unknown_key_rejected():
    with pytest.raises(DomainError, match="leg_len"):
        config_from_dict({"leg_len": 3})


def test_bad_value_rejected():
    with pytest.raises(DomainError):
        config_from_dict({"leg_diameter_mm": "thick"})
    with pytest.raises(DomainError):
        config_from_dict({"leg_diameter_mm": -1})


def test_empty_file_gives_defaults(tmp_path):
    p = tmp_path / "g.yaml"
    p.write_text("")
    assert load_config(p) == GripperConfig()


def test_catalog_records_round_trip():
    for obj in load_catalog():
        back = object_from_record(object_to_record(obj))
        assert back.name == obj.name
        assert back.height == pytest.approx(obj.height, rel=1e-12)
        assert back.mass == pytest.approx(obj.mass, rel=1e-12)
        assert type(back.shape) is type(obj.shape)


def test_record_units():
    obj = object_from_record(
        {"name": "b", "shape": "box", "width_mm": 50, "depth_mm": 200, "height_mm": 60, "mass_g": 250, "mu": 0.6}
    )
    assert obj.shape == Box(0.05, 0.2)
    assert obj.mass == pytest.approx(0.25)
    assert obj.mu == 0.6
    poly = object_from_record(
        {"name": "p", "shape": "irregular", "vertices_mm": [[0, 0], [10, 0], [0, 10]], "height_mm": 20, "mass_g": 1}
    )
    assert isinstance(poly.shape, Irregular)
    assert isinstance(load_catalog()[1].shape, Cylinder)


def test_bad_records():
    with pytest.raises(DomainError):
        object_from_record({"name": "x", "shape": "blob", "height_mm": 20, "mass_g": 1})
    with pytest.raises(DomainError):
        object_from_record({"name": "x", "shape": "cylinder", "height_mm": 20, "mass_g": 1})


def test_scene_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps([{"width_mm": 6, "depth_mm": 8}] * 3))
    scene = load_scene(p)
    assert len(scene.gaps) == 3
    assert scene.gaps[0].area == pytest.approx(48e-6)
    assert scene.entry_margin == pytest.approx(0.002)
    assert load_scene(p, 1.0).entry_margin == pytest.approx(0.001)
    p.write_text(json.dumps({"width_mm": 6}))
    with pytest.raises(DomainError):
        load_scene(p)
