"""
Grasp trial plans, motion timing and clutter-gap feasibility.

A plan is data only: nine steps, seven arm moves and two gripper actions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

from .design import GripperConfig, OpeningFit, footprint, opening_check, required_opening
from .errors import DomainError, OpeningError
from .grasp import ObjectModel

DEFAULT_FORCE_COMMAND = 15.0  # N
GRASP_Z_MIN = 0.27
GRASP_Z_MAX = 0.35
PLAN_HEIGHT_MIN = 0.015
PLAN_HEIGHT_MAX = 0.120
AREA_TOL = 1e-9
WIDTH_TOL = 1e-9
ANGLE_SNAP = 1e-9  # rad; covers 9-decimal rounding of pi in plan documents


def normalize_angle(a: float) -> float:
    """Wrap to (-pi, pi]. Angles within ANGLE_SNAP of the cut map to +pi."""
    if -math.pi + ANGLE_SNAP < a <= math.pi:
        return a  # already in range; keep the exact value
    w = math.fmod(a + math.pi, 2.0 * math.pi)
    if w < 0:
        w += 2.0 * math.pi
    w -= math.pi
    if w <= -math.pi + ANGLE_SNAP:
        w = math.pi
    return w


@dataclass(frozen=True)
class Pose6D:
    x: float
    y: float
    z: float
    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0

    def __post_init__(self):
        for name in ("roll", "pitch", "yaw"):
            object.__setattr__(self, name, normalize_angle(getattr(self, name)))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.x, self.y, self.z, self.roll, self.pitch, self.yaw)

    def with_z(self, z: float) -> "Pose6D":
        return Pose6D(self.x, self.y, z, self.roll, self.pitch, self.yaw)


_deg = math.radians
P_HOME = Pose6D(0.37, 0.0, 0.5, _deg(180.0), 0.0, 0.0)
P_ROT1 = Pose6D(0.37, 0.0, 0.5, _deg(180.0), _deg(70.0), _deg(90.0))
P_ROT2 = Pose6D(0.37, 0.0, 0.5, _deg(180.0), _deg(-70.0), _deg(90.0))


@dataclass(frozen=True)
class MoveTo:
    pose: Pose6D
    kind = "move_to"


@dataclass(frozen=True)
class CloseToForce:
    force: float  # N
    kind = "close_to_force"


@dataclass(frozen=True)
class OpenToGap:
    gap: float  # m
    kind = "open_to_gap"


Action = Union[MoveTo, CloseToForce, OpenToGap]


@dataclass(frozen=True)
class TrialStep:
    index: int  # 1-based
    action: Action

    @property
    def kind(self) -> str:
        return self.action.kind


@dataclass(frozen=True)
class MotionLimits:
    v_max: float = 0.4  # m/s
    a_max: float = 0.7  # m/s^2
    # rotational limits are not published for the arm; configurable defaults
    w_max: float = math.pi / 2  # rad/s
    alpha_max: float = math.pi  # rad/s^2

    def __post_init__(self):
        for name in ("v_max", "a_max", "w_max", "alpha_max"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0")


@dataclass(frozen=True)
class Gap:
    width: float  # m
    depth: float  # m

    def __post_init__(self):
        if self.width < 0 or self.depth < 0:
            raise DomainError("gap dimensions must be >= 0")

    @property
    def area(self) -> float:
        return self.width * self.depth


@dataclass(frozen=True)
class ClutterScene:
    gaps: tuple[Gap, ...]
    entry_margin: float = 0.002  # m, tarsus tip squeeze allowance


@dataclass
class ClutterReport:
    feasible: bool
    assignments: list[tuple[int, int]] = field(default_factory=list)  # (leg, gap index)
    total_gap_area: float = 0.0
    required_area: float = 0.0
    min_gap_width: float = 0.0
    binding: list[str] = field(default_factory=list)


def grasp_pose_z(object_height: float) -> float:
    if not PLAN_HEIGHT_MIN - 1e-12 <= object_height <= PLAN_HEIGHT_MAX + 1e-12:
        raise DomainError(
            f"object height {object_height} m outside [{PLAN_HEIGHT_MIN}, {PLAN_HEIGHT_MAX}]"
        )
    z = GRASP_Z_MIN + (object_height - PLAN_HEIGHT_MIN)
    return min(GRASP_Z_MAX, max(GRASP_Z_MIN, z))


def build_trial_plan(
    obj: ObjectModel, config: GripperConfig, force_command: float = DEFAULT_FORCE_COMMAND
) -> list[TrialStep]:
    fit = opening_check(obj.grasp_width, config)
    if fit is not OpeningFit.FITS:
        raise OpeningError(f"{obj.name!r} is {fit.value} for the gripper opening", fit.value)
    # legs only reach the lower part of tall objects
    z = grasp_pose_z(min(obj.height, PLAN_HEIGHT_MAX))
    grasp = P_HOME.with_z(z)
    gap = required_opening(obj.grasp_width, config)
    actions: list[Action] = [
        MoveTo(grasp),
        CloseToForce(force_command),
        MoveTo(P_HOME),
        MoveTo(P_ROT1),
        MoveTo(P_ROT2),
        MoveTo(P_HOME),
        MoveTo(grasp),  # release pose equals grasp pose
        OpenToGap(gap),
        MoveTo(P_HOME),
    ]
    return [TrialStep(i, a) for i, a in enumerate(actions, start=1)]


def profile_time(distance: float, v_max: float, a_max: float) -> float:
    """Duration of a rest-to-rest trapezoidal (or triangular) profile."""
    d = abs(distance)
    if d == 0.0:
        return 0.0
    if d >= v_max**2 / a_max:
        return d / v_max + v_max / a_max
    return 2.0 * math.sqrt(d / a_max)


def segment_duration(start: Pose6D, end: Pose6D, limits: MotionLimits = MotionLimits()) -> float:
    """Translation and rotation are timed separately; the slower one sets the duration."""
    d = math.dist(start.as_tuple()[:3], end.as_tuple()[:3])
    ang = max(
        abs(normalize_angle(b - a)) for a, b in zip(start.as_tuple()[3:], end.as_tuple()[3:])
    )
    return max(
        profile_time(d, limits.v_max, limits.a_max),
        profile_time(ang, limits.w_max, limits.alpha_max),
    )


def plan_duration(
    steps: list[TrialStep], limits: MotionLimits = MotionLimits(), start: Pose6D = P_HOME
) -> float:
    """Total arm motion time; gripper actions are not timed."""
    total, here = 0.0, start
    for step in steps:
        if isinstance(step.action, MoveTo):
            total += segment_duration(here, step.action.pose, limits)
            here = step.action.pose
    return total


def clutter_feasibility(scene: ClutterScene, config: GripperConfig) -> ClutterReport:
    """Assign every leg to a gap it can enter and compare the gap area used with the footprint.

    A gap hosts as many legs side by side as its width allows. Among the
    admissible assignments the one using the largest gap area is reported.
    """
    d = config.leg.diameter
    min_width = d - scene.entry_margin
    _, required = footprint(config)
    report = ClutterReport(False, required_area=required, min_gap_width=min_width)

    usable = []
    for i, g in enumerate(scene.gaps):
        if g.width > 0 and g.width >= min_width - WIDTH_TOL:
            slots = max(1, int((g.width + scene.entry_margin) / d + 1e-9))
            usable.append((g.area, i, slots))
    if len(usable) < len(scene.gaps):
        report.binding.append(
            f"{len(scene.gaps) - len(usable)} gap(s) narrower than {min_width * 1e3:.3g} mm"
        )
    usable.sort(key=lambda u: (-u[0], u[1]))

    # each used gap hosts at least one leg, so at most `legs` gaps are used
    chosen = usable[: config.legs]
    if sum(s for _, _, s in chosen) < config.legs:
        report.binding.append(
            f"only {sum(s for _, _, s in chosen)} leg slot(s) for {config.legs} legs"
        )
        return report

    leg = 0
    remaining = config.legs - len(chosen)
    for _, i, slots in chosen:
        extra = min(slots - 1, remaining)
        remaining -= extra
        for _ in range(1 + extra):
            report.assignments.append((leg, i))
            leg += 1
    report.total_gap_area = sum(a for a, _, _ in chosen)
    if report.total_gap_area >= required - AREA_TOL:
        report.feasible = True
    else:
        report.binding.append(
            f"gap area {report.total_gap_area * 1e6:.4g} mm^2 < footprint {required * 1e6:.4g} mm^2"
        )
    return report


# -- plan document ---------------------------------------------------------


def _num(v: float) -> str:
    s = f"{v:.9f}"
    return "0.000000000" if s == "-0.000000000" else s


def plan_to_json(steps: list[TrialStep]) -> str:
    """Serialise a plan with fixed 9-decimal numbers so output is byte-stable."""
    lines = ["["]
    for n, step in enumerate(steps):
        a = step.action
        if isinstance(a, MoveTo):
            payload = '"pose_m_rad": [' + ", ".join(_num(v) for v in a.pose.as_tuple()) + "]"
        elif isinstance(a, CloseToForce):
            payload = f'"force_N": {_num(a.force)}'
        else:
            payload = f'"gap_m": {_num(a.gap)}'
        sep = "," if n < len(steps) - 1 else ""
        lines.append(f'  {{"index": {step.index}, "kind": "{a.kind}", {payload}}}{sep}')
    lines.append("]")
    return "\n".join(lines) + "\n"


def plan_from_json(text: str) -> list[TrialStep]:
    steps = []
    for rec in json.loads(text):
        kind = rec["kind"]
        if kind == MoveTo.kind:
            action: Action = MoveTo(Pose6D(*rec["pose_m_rad"]))
        elif kind == CloseToForce.kind:
            action = CloseToForce(rec["force_N"])
        elif kind == OpenToGap.kind:
            action = OpenToGap(rec["gap_m"])
        else:
            raise DomainError(f"unknown step kind {kind!r}")
        steps.append(TrialStep(rec["index"], action))
    return steps
