"""
Quasi-static grasp feasibility.

The object is analysed in its horizontal cross-section: leg contacts produce
planar wrenches (fx, fy, torque) and force closure is decided on those. Lift is
a separate scalar check, friction on the engaged contacts against weight plus
vertical acceleration.

Gripper frame: origin on the gripper centerline, legs on the diagonals at
45, 135, 225 and 315 degrees, each closing radially toward the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .design import GripperConfig, OpeningFit, opening_check
from .envelope import ObliqueMode, max_grasp_force, oblique_contact_factor
from .errors import DomainError, OpeningError

GRAVITY = 9.81
DEFAULT_PAD_MU = 0.8  # assumed elastomer pad on packaging, not measured
HULL_TOL = 1e-9
MIN_GRASP_HEIGHT = 0.015

LEG_ANGLES = tuple(math.radians(45.0 + 90.0 * i) for i in range(4))

FOUR_POINT = "four-point"
TWO_POINT = "two-point"
CORNER_45 = "corner-45"


@dataclass(frozen=True)
class Cylinder:
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("cylinder radius must be > 0")


@dataclass(frozen=True)
class Box:
    """Rectangular cross-section. ``rotated_45`` places it between the legs at 45 degrees."""

    width: float
    depth: float
    rotated_45: bool = False

    def __post_init__(self):
        if not (self.width > 0 and self.depth > 0):
            raise DomainError("box sides must be > 0")

    @property
    def short_side(self) -> float:
        return min(self.width, self.depth)


@dataclass(frozen=True)
class Irregular:
    """Convex polygon cross-section, vertices in metres."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = np.asarray(self.vertices, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
            raise DomainError("polygon needs at least 3 (x, y) vertices")
        if not _is_convex(pts):
            raise DomainError("polygon must be convex")


Shape = Union[Cylinder, Box, Irregular]


@dataclass(frozen=True)
class ObjectModel:
    name: str
    shape: Shape
    height: float  # m
    mass: float  # kg
    friction_coeff: float | None = None  # None -> DEFAULT_PAD_MU, flagged as assumed

    def __post_init__(self):
        if self.height < MIN_GRASP_HEIGHT - 1e-12:
            raise DomainError(f"object height must be >= {MIN_GRASP_HEIGHT} m")
        if self.mass < 0:
            raise DomainError("mass must be >= 0")
        if self.friction_coeff is not None and not self.friction_coeff > 0:
            raise DomainError("friction coefficient must be > 0")

    @property
    def mu(self) -> float:
        return DEFAULT_PAD_MU if self.friction_coeff is None else self.friction_coeff

    @property
    def grasp_width(self) -> float:
        """Extent the opening has to clear before closing."""
        s = self.shape
        if isinstance(s, Cylinder):
            return 2.0 * s.radius
        if isinstance(s, Box):
            return s.short_side
        reach = [_ray_hit(_centered(s), ang)[0] for ang in LEG_ANGLES]
        return max(reach[0] + reach[2], reach[1] + reach[3])


@dataclass(frozen=True)
class Contact:
    point: tuple[float, float]
    normal: tuple[float, float]  # inward unit normal
    engaged: bool = True
    normal_force: float = 0.0  # N, squeezing component


@dataclass(frozen=True)
class ContactSet:
    contacts: tuple[Contact, ...]
    applied_force_per_leg: float
    mode: str

    @property
    def engaged(self) -> list[Contact]:
        return [c for c in self.contacts if c.engaged]

    @property
    def normal_force_total(self) -> float:
        return sum(c.normal_force for c in self.engaged)

    def scaled(self, k: float) -> "ContactSet":
        """Same geometry with every force multiplied by ``k``."""
        return ContactSet(
            tuple(
                Contact(c.point, c.normal, c.engaged, c.normal_force * k) for c in self.contacts
            ),
            self.applied_force_per_leg * k,
            self.mode,
        )


@dataclass(frozen=True)
class CapacityReport:
    name: str
    mode: str
    engaged_legs: int
    normal_force_total: float
    lift_capacity: float  # kg
    force_closure: bool
    manipulation_ok: bool
    overload: bool
    f_max: float
    mu: float
    mu_assumed: bool


def _is_convex(pts: np.ndarray) -> bool:
    d1 = np.roll(pts, -1, axis=0) - pts
    d2 = np.roll(d1, -1, axis=0)
    cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    return bool(np.all(cross > 1e-15) or np.all(cross < -1e-15))


def polygon_centroid(vertices) -> np.ndarray:
    p = np.asarray(vertices, dtype=float)
    q = np.roll(p, -1, axis=0)
    cross = p[:, 0] * q[:, 1] - q[:, 0] * p[:, 1]
    area = cross.sum() / 2.0
    cx = ((p[:, 0] + q[:, 0]) * cross).sum() / (6.0 * area)
    cy = ((p[:, 1] + q[:, 1]) * cross).sum() / (6.0 * area)
    return np.array([cx, cy])


def _centered(shape: Irregular) -> np.ndarray:
    pts = np.asarray(shape.vertices, dtype=float)
    pts = pts - polygon_centroid(pts)
    # force counter-clockwise order
    q = np.roll(pts, -1, axis=0)
    if (pts[:, 0] * q[:, 1] - q[:, 0] * pts[:, 1]).sum() < 0:
        pts = pts[::-1]
    return pts


def _ray_hit(pts: np.ndarray, angle: float) -> tuple[float, np.ndarray]:
    """Distance along the leg line from the origin to the boundary, and the inward edge normal there."""
    u = np.array([math.cos(angle), math.sin(angle)])
    best = None
    for p, q in zip(pts, np.roll(pts, -1, axis=0)):
        e = q - p
        det = u[0] * -e[1] - u[1] * -e[0]
        if abs(det) < 1e-15:
            continue
        # origin + t*u = p + s*e
        t = (p[0] * -e[1] - p[1] * -e[0]) / det
        s = (u[0] * p[1] - u[1] * p[0]) / det
        if t > 0 and -1e-12 <= s <= 1 + 1e-12 and (best is None or t < best[0]):
            inward = np.array([-e[1], e[0]]) / np.hypot(*e)
            best = (t, inward)
    if best is None:
        raise DomainError("leg line does not meet the polygon boundary")
    return best


def _leg_dir(angle: float) -> tuple[float, float]:
    return (math.cos(angle), math.sin(angle))


def contact_set_for(
    obj: ObjectModel,
    config: GripperConfig,
    force_command: float,
    oblique_mode: ObliqueMode | str = ObliqueMode.HALVED,
) -> ContactSet:
    if force_command < 0:
        raise DomainError("force_command must be >= 0")
    fit = opening_check(obj.grasp_width, config)
    if fit is not OpeningFit.FITS:
        raise OpeningError(
            f"{obj.name!r}: width {obj.grasp_width * 1e3:.1f} mm is {fit.value} "
            f"for opening [{config.opening_min * 1e3:g}, {config.opening_max * 1e3:g}] mm",
            fit.value,
        )
    s = obj.shape
    contacts: list[Contact] = []

    if isinstance(s, Cylinder):
        per_leg = force_command / 4
        for ang in LEG_ANGLES:
            ux, uy = _leg_dir(ang)
            contacts.append(Contact((s.radius * ux, s.radius * uy), (-ux, -uy), True, per_leg))
        return ContactSet(tuple(contacts), per_leg, FOUR_POINT)

    if isinstance(s, Box) and not s.rotated_45:
        # squeeze across the short side; the other pair of legs stays clear
        half = s.short_side / 2.0
        per_leg = force_command / 2
        contacts = [
            Contact((half, 0.0), (-1.0, 0.0), True, per_leg),
            Contact((-half, 0.0), (1.0, 0.0), True, per_leg),
        ]
        r = half * math.sqrt(2.0)
        for ang in LEG_ANGLES[1::2]:
            ux, uy = _leg_dir(ang)
            contacts.append(Contact((r * ux, r * uy), (-ux, -uy), False, 0.0))
        return ContactSet(tuple(contacts), per_leg, TWO_POINT)

    if isinstance(s, Box):
        # each leg meets a long face with its closing direction at 45 degrees
        half = s.short_side / 2.0
        per_leg = force_command / 4
        f_n = per_leg * oblique_contact_factor(oblique_mode, math.pi / 4)
        for ang in LEG_ANGLES:
            ux, uy = _leg_dir(ang)
            sy = math.copysign(1.0, uy)
            contacts.append(Contact((math.copysign(half, ux), sy * half), (0.0, -sy), True, f_n))
        return ContactSet(tuple(contacts), per_leg, CORNER_45)

    pts = _centered(s)
    per_leg = force_command / 4
    for ang in LEG_ANGLES:
        t, n = _ray_hit(pts, ang)
        ux, uy = _leg_dir(ang)
        cos_a = min(1.0, max(0.0, -(n[0] * ux + n[1] * uy)))
        f_n = per_leg * oblique_contact_factor(oblique_mode, math.acos(cos_a))
        contacts.append(Contact((t * ux, t * uy), (float(n[0]), float(n[1])), True, f_n))
    return ContactSet(tuple(contacts), per_leg, CORNER_45)


def contact_wrenches(cs: ContactSet, mu: float, edges: int = 2) -> np.ndarray:
    """Planar wrenches of the discretised friction cones, one row per edge force.

    Torque is divided by the largest contact radius so all three components
    share a scale; this is an invertible linear map and leaves hull
    containment unchanged. Contacts carrying no normal force contribute nothing.
    """
    active = [c for c in cs.engaged if c.normal_force > 0]
    if not active:
        return np.zeros((0, 3))
    rho = max(math.hypot(*c.point) for c in active) or 1.0
    ts = np.linspace(-mu, mu, edges) if edges > 1 else np.zeros(1)
    rows = []
    for c in active:
        n = np.asarray(c.normal, dtype=float)
        tang = np.array([-n[1], n[0]])
        for t in ts:
            f = c.normal_force * (n + t * tang)
            torque = c.point[0] * f[1] - c.point[1] * f[0]
            rows.append((f[0], f[1], torque / rho))
    return np.array(rows)


def force_closure(cs: ContactSet, mu: float) -> bool:
    """True when the cone-edge wrenches contain the origin strictly inside their hull."""
    if mu < 0:
        raise DomainError("mu must be >= 0")
    w = contact_wrenches(cs, mu, edges=2)
    if len(w) < 4:
        return False
    try:
        hull = ConvexHull(w)
    except QhullError:
        return False
    # facet planes are n.x + offset <= 0 inside, with unit n
    return bool(np.all(hull.equations[:, -1] < -HULL_TOL))


def lift_capacity(cs: ContactSet, mu: float, accel: float, g: float = GRAVITY) -> float:
    """Mass (kg) the contacts can hold by friction while accelerating upward at ``accel``."""
    if accel < 0:
        raise DomainError("accel must be >= 0")
    return mu * cs.normal_force_total / (g + accel)


def assess_grasp(
    obj: ObjectModel,
    config: GripperConfig,
    force_command: float = 15.0,
    accel: float = 0.7,
    oblique_mode: ObliqueMode | str = ObliqueMode.HALVED,
    mu: float | None = None,
) -> CapacityReport:
    mu_assumed = mu is None and obj.friction_coeff is None
    mu = obj.mu if mu is None else mu
    cs = contact_set_for(obj, config, force_command, oblique_mode)
    closure = force_closure(cs, mu)
    capacity = lift_capacity(cs, mu, accel)
    n_engaged = len(cs.engaged)
    f_max = max_grasp_force(
        obj.height, n_engaged, config.leg.diameter, config.material, config.leg.arm_geometry
    )
    return CapacityReport(
        name=obj.name,
        mode=cs.mode,
        engaged_legs=n_engaged,
        normal_force_total=cs.normal_force_total,
        lift_capacity=capacity,
        force_closure=closure,
        manipulation_ok=closure and capacity >= obj.mass,
        overload=force_command > f_max,
        f_max=f_max,
        mu=mu,
        mu_assumed=mu_assumed,
    )


def assess_catalog(
    objects: Sequence[ObjectModel], config: GripperConfig, **kwargs
) -> list[CapacityReport]:
    return [assess_grasp(o, config, **kwargs) for o in objects]
