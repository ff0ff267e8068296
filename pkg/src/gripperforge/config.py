"""
Loading and saving of external documents.

Files use millimetres, grams, degrees, MPa and GPa, with the unit in every key
name. Everything is converted to SI on load and back on save.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from .design import GripperConfig, LegSpec
from .errors import DomainError
from .grasp import Box, Cylinder, Irregular, ObjectModel
from .mechanics import Material
from .trial import ClutterScene, Gap

MM = 1e-3
MM2 = 1e-6
G = 1e-3
MPA = 1e6
GPA = 1e9

CONFIG_KEYS = (
    "legs",
    "leg_diameter_mm",
    "leg_length_mm",
    "pad_length_mm",
    "tip_clearance_mm",
    "footprint_area_mm2",
    "inclination_deg",
    "opening_min_mm",
    "opening_max_mm",
    "opening_accuracy_mm",
    "force_command_max_n",
    "material_name",
    "young_modulus_gpa",
    "yield_strength_mpa",
)


def config_to_dict(config: GripperConfig) -> dict[str, Any]:
    leg, mat = config.leg, config.material
    return {
        "legs": config.legs,
        "leg_diameter_mm": leg.diameter / MM,
        "leg_length_mm": leg.length / MM,
        "pad_length_mm": leg.pad_length / MM,
        "tip_clearance_mm": leg.tip_clearance / MM,
        "footprint_area_mm2": leg.footprint_area / MM2,
        "inclination_deg": math.degrees(leg.inclination),
        "opening_min_mm": config.opening_min / MM,
        "opening_max_mm": config.opening_max / MM,
        "opening_accuracy_mm": config.opening_accuracy / MM,
        "force_command_max_n": config.force_command_max,
        "material_name": mat.name,
        "young_modulus_gpa": mat.young_modulus / GPA,
        "yield_strength_mpa": mat.yield_strength / MPA,
    }


def config_from_dict(doc: Mapping[str, Any] | None) -> GripperConfig:
    """Build a config from a (possibly partial) document; missing keys keep their defaults."""
    doc = dict(doc or {})
    unknown = set(doc) - set(CONFIG_KEYS)
    if unknown:
        raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
    merged = config_to_dict(GripperConfig())
    merged.update(doc)
    try:
        material = Material(
            str(merged["material_name"]),
            float(merged["young_modulus_gpa"]) * GPA,
            float(merged["yield_strength_mpa"]) * MPA,
        )
        leg = LegSpec(
            diameter=float(merged["leg_diameter_mm"]) * MM,
            length=float(merged["leg_length_mm"]) * MM,
            pad_length=float(merged["pad_length_mm"]) * MM,
            tip_clearance=float(merged["tip_clearance_mm"]) * MM,
            footprint_area=float(merged["footprint_area_mm2"]) * MM2,
            inclination=math.radians(float(merged["inclination_deg"])),
        )
        return GripperConfig(
            legs=int(merged["legs"]),
            leg=leg,
            material=material,
            opening_min=float(merged["opening_min_mm"]) * MM,
            opening_max=float(merged["opening_max_mm"]) * MM,
            opening_accuracy=float(merged["opening_accuracy_mm"]) * MM,
            force_command_max=float(merged["force_command_max_n"]),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad config value: {exc}") from exc


def load_config(path: str | Path | None) -> GripperConfig:
    """Read a YAML (or JSON) gripper config. ``None`` gives the defaults."""
    if path is None:
        return GripperConfig()
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if doc is not None and not isinstance(doc, Mapping):
        raise DomainError(f"{path}: expected a mapping at top level")
    return config_from_dict(doc)


def dump_config(config: GripperConfig) -> str:
    return yaml.safe_dump(config_to_dict(config), sort_keys=False)


# -- object catalog --------------------------------------------------------


def object_from_record(rec: Mapping[str, Any]) -> ObjectModel:
    try:
        shape_kind = rec["shape"]
        if shape_kind == "cylinder":
            shape = Cylinder(rec["radius_mm"] * MM)
        elif shape_kind == "box":
            shape = Box(rec["width_mm"] * MM, rec["depth_mm"] * MM, bool(rec.get("rotated_45", False)))
        elif shape_kind == "irregular":
            shape = Irregular(tuple((x * MM, y * MM) for x, y in rec["vertices_mm"]))
        else:
            raise DomainError(f"unknown shape {shape_kind!r}")
        mu = rec.get("mu")
        return ObjectModel(
            name=rec["name"],
            shape=shape,
            height=rec["height_mm"] * MM,
            mass=rec["mass_g"] * G,
            friction_coeff=None if mu is None else float(mu),
        )
    except KeyError as exc:
        raise DomainError(f"catalog record missing field {exc}") from exc


def object_to_record(obj: ObjectModel) -> dict[str, Any]:
    s = obj.shape
    rec: dict[str, Any] = {"name": obj.name}
    if isinstance(s, Cylinder):
        rec.update(shape="cylinder", radius_mm=s.radius / MM)
    elif isinstance(s, Box):
        rec.update(shape="box", width_mm=s.width / MM, depth_mm=s.depth / MM, rotated_45=s.rotated_45)
    else:
        rec.update(shape="irregular", vertices_mm=[[x / MM, y / MM] for x, y in s.vertices])
    rec.update(height_mm=obj.height / MM, mass_g=obj.mass / G)
    if obj.friction_coeff is not None:
        rec["mu"] = obj.friction_coeff
    return rec


def load_catalog(path: str | Path | None = None) -> list[ObjectModel]:
    """Object catalog from ``path``, or the bundled 18-object trial set."""
    if path is None:
        text = resources.files("gripperforge.data").joinpath("objects.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    records = json.loads(text)
    if not isinstance(records, list):
        raise DomainError("catalog must be a JSON array of object records")
    return [object_from_record(r) for r in records]


def load_scene(path: str | Path, entry_margin_mm: float | None = None) -> ClutterScene:
    """Clutter scene: JSON array of ``{"width_mm", "depth_mm"}`` records."""
    records = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(records, list):
        raise DomainError("scene must be a JSON array of gap records")
    try:
        gaps = tuple(Gap(r["width_mm"] * MM, r["depth_mm"] * MM) for r in records)
    except KeyError as exc:
        raise DomainError(f"gap record missing field {exc}") from exc
    if entry_margin_mm is None:
        return ClutterScene(gaps)
    return ClutterScene(gaps, entry_margin_mm * MM)
