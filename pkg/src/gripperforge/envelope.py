"""
Maximum grasp force as a function of object height.

Taller objects load the legs closer to the clamp (line contact over the whole
object height), which shortens the effective moment arm and raises the force
the legs can take before yielding.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError
from .mechanics import Material

MIN_OBJECT_HEIGHT = 0.015  # m
MAX_CHARTED_HEIGHT = 0.120  # m, pad covers only the lower part of the leg


class ArmGeometry(NamedTuple):
    """Moment-arm bounds derived from leg geometry.

    ``reach`` is leg length plus tip clearance (0.150 + 0.010 m); ``min_arm``
    is the unpadded upper portion of the leg (0.150 - 0.100 m).
    """

    min_arm: float = 0.05
    reach: float = 0.16


DEFAULT_ARM = ArmGeometry()


class ObliqueMode(str, enum.Enum):
    HALVED = "halved"
    NORMAL_DECOMPOSITION = "normal-decomposition"


@dataclass(frozen=True)
class EnvelopePoint:
    object_height: float  # m
    engaged_legs: int
    f_max: float  # N


@dataclass(frozen=True)
class EnvelopeCurve:
    points: tuple[EnvelopePoint, ...]
    diameter: float
    yield_strength: float

    @property
    def engaged_legs(self) -> int:
        return self.points[0].engaged_legs

    @property
    def heights(self) -> list[float]:
        return [p.object_height for p in self.points]

    @property
    def forces(self) -> list[float]:
        return [p.f_max for p in self.points]


def effective_arm_length(object_height: float, geometry: ArmGeometry = DEFAULT_ARM) -> float:
    if not object_height > 0:
        raise DomainError(f"object_height must be > 0, got {object_height}")
    return max(geometry.min_arm, geometry.reach - object_height)


def max_grasp_force(
    object_height: float,
    engaged_legs: int,
    diameter: float,
    material: Material,
    geometry: ArmGeometry = DEFAULT_ARM,
) -> float:
    """Total squeezing force at which the clamp fiber of every engaged leg reaches yield."""
    if engaged_legs < 1:
        raise DomainError(f"engaged_legs must be >= 1, got {engaged_legs}")
    if not diameter > 0:
        raise DomainError(f"diameter must be > 0, got {diameter}")
    arm = effective_arm_length(object_height, geometry)
    return math.pi * engaged_legs * diameter**3 * material.yield_strength / (32.0 * arm)


def default_heights(start_mm: int = 15, stop_mm: int = 120, step_mm: int = 1) -> list[float]:
    """Sample heights in metres, inclusive of both ends."""
    return [k / 1000.0 for k in range(start_mm, stop_mm + 1, step_mm)]


def envelope_curve(
    heights: Iterable[float],
    engaged_legs: int,
    diameter: float,
    material: Material,
    geometry: ArmGeometry = DEFAULT_ARM,
) -> EnvelopeCurve:
    hs: Sequence[float] = list(heights)
    if not hs:
        raise DomainError("height range is empty")
    for prev, nxt in zip(hs, hs[1:]):
        if not nxt > prev:
            raise DomainError("heights must be strictly increasing")
    if hs[0] < MIN_OBJECT_HEIGHT - 1e-12:
        raise DomainError(f"heights must be >= {MIN_OBJECT_HEIGHT} m, got {hs[0]}")
    if hs[-1] > MAX_CHARTED_HEIGHT + 1e-12:
        warnings.warn(
            f"heights above {MAX_CHARTED_HEIGHT} m lie beyond the padded leg region; "
            "force is on the plateau",
            stacklevel=2,
        )
    points = tuple(
        EnvelopePoint(h, engaged_legs, max_grasp_force(h, engaged_legs, diameter, material, geometry))
        for h in hs
    )
    return EnvelopeCurve(points, diameter, material.yield_strength)


def oblique_contact_factor(
    mode: ObliqueMode | str = ObliqueMode.HALVED, contact_angle: float = math.pi / 4
) -> float:
    """Fraction of the applied leg force that squeezes the object.

    ``contact_angle`` is between the leg's closing direction and the surface
    normal, in radians. A square-on contact (angle 0) is accepted.
    """
    mode = ObliqueMode(mode)
    if not 0.0 <= contact_angle < math.pi / 2:
        raise DomainError(f"contact_angle must be in [0, pi/2), got {contact_angle}")
    if mode is ObliqueMode.HALVED:
        return 0.5
    return math.cos(contact_angle)
