"""Leg sizing, footprint metrics and opening-range checks."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .envelope import ArmGeometry, effective_arm_length
from .errors import DomainError, InfeasibleDesignError
from .mechanics import (
    STAINLESS_STEEL,
    BeamLoadCase,
    Material,
    max_bending_stress,
    max_slope,
    safety_margin,
)

# Common ground-shaft sizes, metres.
DEFAULT_STOCK_DIAMETERS = (0.003, 0.004, 0.005, 0.006, 0.008, 0.010, 0.012)

MARGIN_TOL = 1e-12
LENGTH_TOL = 1e-9


@dataclass(frozen=True)
class LegSpec:
    diameter: float = 0.005
    length: float = 0.150
    pad_length: float = 0.100
    tip_clearance: float = 0.010
    footprint_area: float = 35e-6  # m^2, pad and hair base included
    inclination: float = 0.0  # rad, inward preset

    def __post_init__(self):
        for name in ("diameter", "length", "pad_length", "tip_clearance", "footprint_area"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.pad_length > self.length:
            raise DomainError("pad_length cannot exceed leg length")

    @property
    def arm_geometry(self) -> ArmGeometry:
        return ArmGeometry(
            min_arm=self.length - self.pad_length,
            reach=self.length + self.tip_clearance,
        )


@dataclass(frozen=True)
class GripperConfig:
    legs: int = 4
    leg: LegSpec = field(default_factory=LegSpec)
    material: Material = STAINLESS_STEEL
    opening_min: float = 0.005
    opening_max: float = 0.120
    opening_accuracy: float = 0.001
    force_command_max: float = 50.0

    def __post_init__(self):
        if self.legs < 2:
            raise DomainError(f"a gripper needs at least 2 legs, got {self.legs}")
        if not self.opening_min < self.opening_max:
            raise DomainError("opening_min must be smaller than opening_max")
        if self.opening_accuracy < 0:
            raise DomainError("opening_accuracy must be >= 0")


@dataclass(frozen=True)
class DesignRequest:
    total_force: float  # N
    engaged_legs: int
    design_height: float = 0.040  # m
    stock_diameters: tuple[float, ...] = DEFAULT_STOCK_DIAMETERS
    min_margin: float = 0.0

    def __post_init__(self):
        if not self.stock_diameters:
            raise DomainError("stock_diameters is empty")
        ds = self.stock_diameters
        if any(b <= a for a, b in zip(ds, ds[1:])) or ds[0] <= 0:
            raise DomainError("stock_diameters must be positive and strictly increasing")
        if not 0.0 <= self.min_margin < 1.0:
            raise DomainError(f"min_margin must be in [0, 1), got {self.min_margin}")
        if self.engaged_legs < 1:
            raise DomainError("engaged_legs must be >= 1")
        if self.total_force < 0:
            raise DomainError("total_force must be >= 0")


class OpeningFit(str, enum.Enum):
    FITS = "fits"
    TOO_WIDE = "too-wide"
    BELOW_MIN = "below-min"


def min_leg_diameter(
    req: DesignRequest, material: Material, geometry: ArmGeometry = ArmGeometry()
) -> float:
    """Smallest stock diameter whose clamp stress leaves at least ``req.min_margin``."""
    per_leg = req.total_force / req.engaged_legs
    arm = effective_arm_length(req.design_height, geometry)
    best = None
    for d in req.stock_diameters:
        margin = safety_margin(max_bending_stress(BeamLoadCase(per_leg, arm, d)), material)
        if margin >= req.min_margin - MARGIN_TOL:
            return d
        best = (d, margin)
    d, margin = best
    raise InfeasibleDesignError(
        f"no stock diameter reaches margin {req.min_margin:.3f}; "
        f"best is {margin:.3f} at D={d * 1e3:g} mm",
        best_diameter=d,
        best_margin=margin,
    )


def footprint(config: GripperConfig) -> tuple[float, float]:
    """Per-leg and total penetration footprint areas (m^2)."""
    a_fp = config.leg.footprint_area
    return a_fp, config.legs * a_fp


def bare_rod_footprint_area(diameter: float) -> float:
    return math.pi * diameter**2 / 4.0


def recommended_inclination(case: BeamLoadCase, material: Material) -> float:
    """Inward preset angle so a loaded leg ends up vertical."""
    return max_slope(case, material)


def required_opening(object_width: float, config: GripperConfig) -> float:
    return object_width + 2.0 * config.opening_accuracy


def opening_check(object_width: float, config: GripperConfig) -> OpeningFit:
    if not object_width > 0:
        raise DomainError(f"object_width must be > 0, got {object_width}")
    if object_width < config.opening_min - LENGTH_TOL:
        return OpeningFit.BELOW_MIN
    if required_opening(object_width, config) > config.opening_max + LENGTH_TOL:
        return OpeningFit.TOO_WIDE
    return OpeningFit.FITS
