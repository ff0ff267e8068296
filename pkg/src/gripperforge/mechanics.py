"""
Cantilever leg mechanics.

Each gripper leg is a uniform circular rod clamped at the gripper body and
loaded by a point force at its free end. Everything here is SI (m, N, Pa, rad).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Material:
    name: str
    young_modulus: float  # Pa
    yield_strength: float  # Pa

    def __post_init__(self):
        if not self.young_modulus > 0:
            raise DomainError(f"young_modulus must be > 0, got {self.young_modulus}")
        if not self.yield_strength > 0:
            raise DomainError(f"yield_strength must be > 0, got {self.yield_strength}")


STAINLESS_STEEL = Material("stainless steel", young_modulus=200e9, yield_strength=200e6)


@dataclass(frozen=True)
class BeamLoadCase:
    force: float  # N, at the free end
    arm_length: float  # m
    diameter: float  # m

    def __post_init__(self):
        if not self.arm_length > 0:
            raise DomainError(f"arm_length must be > 0, got {self.arm_length}")
        if not self.diameter > 0:
            raise DomainError(f"diameter must be > 0, got {self.diameter}")
        if not self.force >= 0:
            raise DomainError(f"force must be >= 0, got {self.force}")

    @property
    def second_moment(self) -> float:
        return second_moment_of_area(self.diameter)


@dataclass(frozen=True)
class SectionQuery:
    x: float  # m from the fixed end
    y: float  # m from the neutral axis


@dataclass(frozen=True)
class BeamResult:
    sigma_max: float  # Pa
    delta_max: float  # m
    theta_max: float  # rad
    safety_margin: float


def second_moment_of_area(diameter: float) -> float:
    """Area moment of inertia of a solid circular section."""
    return math.pi * diameter**4 / 64.0


def _check_x(case: BeamLoadCase, x: float) -> None:
    if not 0.0 <= x <= case.arm_length:
        raise DomainError(
            f"x={x} outside [0, arm_length={case.arm_length}]"
        )


def bending_stress_at(case: BeamLoadCase, q: SectionQuery) -> float:
    """Bending stress magnitude at distance ``q.x`` from the clamp and ``q.y`` from the neutral axis."""
    _check_x(case, q.x)
    if abs(q.y) > case.diameter / 2.0:
        raise DomainError(f"|y|={abs(q.y)} exceeds diameter/2={case.diameter / 2.0}")
    moment = case.force * (case.arm_length - q.x)
    return abs(moment * q.y) / case.second_moment


def max_bending_stress(case: BeamLoadCase) -> float:
    """Outer-fiber stress at the clamp, where the moment peaks."""
    return 32.0 * case.force * case.arm_length / (math.pi * case.diameter**3)


def deflection_at(case: BeamLoadCase, material: Material, x: float) -> float:
    _check_x(case, x)
    L = case.arm_length
    return case.force * x**2 * (3.0 * L - x) / (6.0 * material.young_modulus * case.second_moment)


def max_deflection(case: BeamLoadCase, material: Material) -> float:
    """Tip deflection."""
    L, D = case.arm_length, case.diameter
    return 64.0 * case.force * L**3 / (3.0 * math.pi * material.young_modulus * D**4)


def max_slope(case: BeamLoadCase, material: Material) -> float:
    """Slope of the deflection curve at the free end, in radians."""
    L, D = case.arm_length, case.diameter
    return 32.0 * case.force * L**2 / (math.pi * material.young_modulus * D**4)


def safety_margin(sigma_max: float, material: Material) -> float:
    """Fraction of yield strength left unused. Negative means the leg yields."""
    return (material.yield_strength - sigma_max) / material.yield_strength


def analyze(case: BeamLoadCase, material: Material) -> BeamResult:
    sigma = max_bending_stress(case)
    return BeamResult(
        sigma_max=sigma,
        delta_max=max_deflection(case, material),
        theta_max=max_slope(case, material),
        safety_margin=safety_margin(sigma, material),
    )
