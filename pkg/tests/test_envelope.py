import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gripperforge.envelope import (
    ArmGeometry,
    ObliqueMode,
    default_heights,
    effective_arm_length,
    envelope_curve,
    max_grasp_force,
    oblique_contact_factor,
)
from gripperforge.errors import DomainError
from gripperforge.mechanics import STAINLESS_STEEL, BeamLoadCase, Material, max_bending_stress

from oracles import bisect

D = 0.005


def test_effective_arm_length():
    assert effective_arm_length(0.015) == pytest.approx(0.145, abs=1e-15)
    assert effective_arm_length(0.110) == pytest.approx(0.05, abs=1e-15)
    assert effective_arm_length(0.040) == pytest.approx(0.120, abs=1e-15)
    assert effective_arm_length(0.200) == 0.05


@pytest.mark.parametrize("h", [0.0, -0.01])
def test_effective_arm_length_rejects_nonpositive(h):
    with pytest.raises(DomainError):
        effective_arm_length(h)


def test_max_grasp_force_two_legs_short_object():
    assert max_grasp_force(0.015, 2, D, STAINLESS_STEEL) == pytest.approx(34.0, abs=1.0)


def test_max_grasp_force_linear_in_legs():
    two = max_grasp_force(0.015, 2, D, STAINLESS_STEEL)
    assert max_grasp_force(0.015, 4, D, STAINLESS_STEEL) == pytest.approx(2 * two, rel=1e-15)


def test_max_grasp_force_plateau_against_bisection():
    # per-leg force that just reaches yield on a 50 mm arm, found by bisection
    per_leg = bisect(
        lambda f: max_bending_stress(BeamLoadCase(f, 0.05, D)) - 200e6, 0.0, 1e4, tol=1e-14
    )
    assert 4 * per_leg == pytest.approx(196.3495, rel=1e-6)
    assert max_grasp_force(0.120, 4, D, STAINLESS_STEEL) == pytest.approx(4 * per_leg, rel=1e-6)


def test_max_grasp_force_rejects_zero_legs():
    with pytest.raises(DomainError):
        max_grasp_force(0.05, 0, D, STAINLESS_STEEL)


def test_default_heights():
    hs = default_heights()
    assert len(hs) == 106
    assert hs[0] == 0.015 and hs[-1] == 0.120


def test_envelope_curve_first_point_and_ratio():
    hs = default_heights()
    two = envelope_curve(hs, 2, D, STAINLESS_STEEL)
    assert two.points[0].f_max == pytest.approx(34.0, abs=1.0)
    one = envelope_curve(hs, 1, D, STAINLESS_STEEL)
    four = envelope_curve(hs, 4, D, STAINLESS_STEEL)
    for a, b in zip(one.forces, four.forces):
        assert b / a == pytest.approx(4.0, rel=1e-12)
    assert two.engaged_legs == 2 and two.diameter == D


def test_envelope_curve_monotone_and_plateau():
    for n in (1, 2, 3, 4):
        c = envelope_curve(default_heights(), n, D, STAINLESS_STEEL)
        f = c.forces
        assert all(b >= a for a, b in zip(f, f[1:]))
        plateau = [p.f_max for p in c.points if p.object_height >= 0.110 - 1e-12]
        assert max(plateau) == min(plateau)
        rising = [p.f_max for p in c.points if p.object_height < 0.110 - 1e-12]
        assert all(b > a for a, b in zip(rising, rising[1:]))


def test_envelope_curve_errors():
    with pytest.raises(DomainError):
        envelope_curve([], 2, D, STAINLESS_STEEL)
    with pytest.raises(DomainError):
        envelope_curve([0.010, 0.02], 2, D, STAINLESS_STEEL)
    with pytest.raises(DomainError):
        envelope_curve([0.03, 0.02], 2, D, STAINLESS_STEEL)


def test_envelope_curve_warns_above_charted_range():
    with pytest.warns(UserWarning, match="plateau"):
        envelope_curve([0.100, 0.130], 2, D, STAINLESS_STEEL)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        envelope_curve(default_heights(), 2, D, STAINLESS_STEEL)


def test_geometry_is_configurable():
    g = ArmGeometry(min_arm=0.08, reach=0.20)
    assert effective_arm_length(0.015, g) == pytest.approx(0.185)
    assert effective_arm_length(0.150, g) == 0.08


def test_oblique_factor():
    assert oblique_contact_factor("halved", math.radians(45)) == 0.5
    assert oblique_contact_factor(ObliqueMode.HALVED, math.radians(10)) == 0.5
    assert oblique_contact_factor("normal-decomposition", 0.0) == 1.0
    assert oblique_contact_factor("normal-decomposition", math.radians(45)) == pytest.approx(0.7071, abs=1e-4)
    assert oblique_contact_factor() == 0.5


@pytest.mark.parametrize("angle", [-0.1, math.pi / 2, 2.0])
def test_oblique_factor_range(angle):
    with pytest.raises(DomainError):
        oblique_contact_factor("normal-decomposition", angle)


def test_oblique_factor_unknown_mode():
    with pytest.raises(ValueError):
        oblique_contact_factor("sideways", 0.3)


@settings(max_examples=80, deadline=None)
@given(
    n=st.integers(1, 4),
    d=st.floats(0.002, 0.012),
    sy=st.floats(50e6, 1000e6),
    hs=st.lists(st.floats(0.015, 0.3), min_size=1, max_size=20),
)
def test_force_times_arm_is_constant(n, d, sy, hs):
    mat = Material("m", 200e9, sy)
    const = math.pi * n * d**3 * sy / 32
    for h in hs:
        assert max_grasp_force(h, n, d, mat) * effective_arm_length(h) == pytest.approx(const, rel=1e-12)


@settings(max_examples=80, deadline=None)
@given(
    n=st.integers(1, 4),
    d=st.floats(0.002, 0.012),
    sy=st.floats(50e6, 1000e6),
    h=st.floats(0.015, 0.3),
    k=st.floats(0.5, 3.0),
)
def test_scaling_and_consistency_with_beam(n, d, sy, h, k):
    mat = Material("m", 200e9, sy)
    f = max_grasp_force(h, n, d, mat)
    assert max_grasp_force(h, n, d * k, mat) == pytest.approx(f * k**3, rel=1e-12)
    assert max_grasp_force(h, n, d, Material("m", 200e9, sy * k)) == pytest.approx(f * k, rel=1e-12)
    if n < 4:
        assert max_grasp_force(h, n + 1, d, mat) == pytest.approx(f * (n + 1) / n, rel=1e-12)
    sigma = max_bending_stress(BeamLoadCase(f / n, effective_arm_length(h), d))
    assert sigma == pytest.approx(sy, rel=1e-9)
