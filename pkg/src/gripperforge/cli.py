"""
Command-line interface.

Exit codes: 0 ok, 1 analysis negative (overstressed, infeasible, overload),
2 usage error, 3 I/O error. Every option can also be set through an
environment variable ``GRIPPERFORGE_<COMMAND>_<OPTION>``; the global ones are
``GRIPPERFORGE_CONFIG``, ``GRIPPERFORGE_OUT`` and ``GRIPPERFORGE_FORMAT``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import __version__
from .config import MM, load_catalog, load_config, load_scene
from .design import GripperConfig, DesignRequest, min_leg_diameter
from .envelope import ObliqueMode, default_heights, envelope_curve
from .errors import DomainError, InfeasibleDesignError
from .grasp import Cylinder, ObjectModel, assess_catalog
from .mechanics import BeamLoadCase, analyze, max_bending_stress, safety_margin
from .trial import (
    DEFAULT_FORCE_COMMAND,
    build_trial_plan,
    clutter_feasibility,
    plan_duration,
    plan_to_json,
)

EXIT_NEGATIVE = 1
EXIT_IO = 3
EXTENSIONS = {"text": "txt", "json": "json", "csv": "csv"}


@dataclass
class RunConfig:
    gripper: GripperConfig
    out: Path | None
    fmt: str

    @property
    def material(self):
        return self.gripper.material


def _g(v: float) -> str:
    return f"{v:.6g}"


def _render(rows: list[dict], fmt: str, title: str | None = None) -> str:
    """Render a list of flat records; all formatting is locale independent."""
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n"
    fields = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([_g(v) if isinstance(v, float) else v for v in r.values()])
        return buf.getvalue()
    lines = [title] if title else []
    for r in rows:
        lines.extend(f"{k}: {_g(v) if isinstance(v, float) else v}" for k, v in r.items())
        if len(rows) > 1:
            lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"


def _emit(run: RunConfig, name: str, text: str, ext: str | None = None) -> None:
    if run.out is None:
        click.echo(text, nl=False)
        return
    path = run.out / f"{name}.{ext or EXTENSIONS[run.fmt]}"
    try:
        run.out.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        click.echo(f"error: cannot write {path}: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(str(path))


def _usage(exc: Exception) -> click.UsageError:
    return click.UsageError(str(exc))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              envvar="GRIPPERFORGE_CONFIG", help="Gripper config (YAML/JSON, mm/g/deg keys).")
@click.option("--out", "out_dir", type=click.Path(file_okay=False),
              envvar="GRIPPERFORGE_OUT", help="Write results into this directory instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "text"]), default="text",
              envvar="GRIPPERFORGE_FORMAT", show_default=True)
@click.version_option(__version__)
@click.pass_context
def cli(ctx, config_path, out_dir, fmt):
    """Design and analysis tools for a four-legged tarsus-style gripper."""
    try:
        gripper = load_config(config_path)
    except DomainError as exc:
        raise _usage(exc)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    ctx.obj = RunConfig(gripper, Path(out_dir) if out_dir else None, fmt)


@cli.command("analyze-beam")
@click.option("--force-n", type=float, default=50.0 / 3.0, show_default=True,
              help="Point load on one leg.")
@click.option("--length-mm", type=float, default=120.0, show_default=True, help="Moment arm.")
@click.option("--diameter-mm", type=float, default=None, help="Leg diameter [config].")
@click.pass_obj
def analyze_beam(run: RunConfig, force_n, length_mm, diameter_mm):
    """Stress, deflection and tip slope of one leg."""
    d = run.gripper.leg.diameter if diameter_mm is None else diameter_mm * MM
    try:
        case = BeamLoadCase(force_n, length_mm * MM, d)
    except DomainError as exc:
        raise _usage(exc)
    res = analyze(case, run.material)
    row = {
        "force_N": force_n,
        "length_mm": length_mm,
        "diameter_mm": d / MM,
        "sigma_max_MPa": res.sigma_max / 1e6,
        "delta_max_mm": res.delta_max / MM,
        "theta_max_deg": math.degrees(res.theta_max),
        "safety_margin_pct": res.safety_margin * 100.0,
        "yield_strength_MPa": run.material.yield_strength / 1e6,
    }
    _emit(run, "analyze-beam", _render([row], run.fmt))
    if res.safety_margin < 0:
        click.echo("leg yields: stress exceeds yield strength", err=True)
        sys.exit(EXIT_NEGATIVE)


@cli.command("design-leg")
@click.option("--total-force-n", type=float, default=50.0, show_default=True)
@click.option("--legs", "engaged", type=int, default=3, show_default=True, help="Engaged legs.")
@click.option("--height-mm", type=float, default=40.0, show_default=True, help="Design object height.")
@click.option("--stock-mm", default="3,4,5,6,8,10,12", show_default=True,
              help="Comma-separated stock diameters.")
@click.option("--min-margin", type=float, default=0.0, show_default=True)
@click.pass_obj
def design_leg(run: RunConfig, total_force_n, engaged, height_mm, stock_mm, min_margin):
    """Smallest stock leg diameter that stays below yield with the given margin."""
    try:
        stock = tuple(float(s) * MM for s in stock_mm.split(",") if s.strip())
        req = DesignRequest(total_force_n, engaged, height_mm * MM, stock, min_margin)
    except (ValueError, DomainError) as exc:
        raise _usage(exc)
    geometry = run.gripper.leg.arm_geometry
    try:
        d = min_leg_diameter(req, run.material, geometry)
    except InfeasibleDesignError as exc:
        row = {"feasible": False, "diameter_mm": exc.best_diameter / MM,
               "safety_margin": exc.best_margin}
        _emit(run, "design-leg", _render([row], run.fmt))
        click.echo(f"infeasible: {exc}", err=True)
        sys.exit(EXIT_NEGATIVE)
    arm = max(geometry.min_arm, geometry.reach - req.design_height)
    sigma = max_bending_stress(BeamLoadCase(total_force_n / engaged, arm, d))
    row = {
        "feasible": True,
        "diameter_mm": d / MM,
        "arm_length_mm": arm / MM,
        "force_per_leg_N": total_force_n / engaged,
        "sigma_max_MPa": sigma / 1e6,
        "safety_margin": safety_margin(sigma, run.material),
    }
    _emit(run, "design-leg", _render([row], run.fmt))


@cli.command("envelope")
@click.option("--legs", "leg_counts", type=click.IntRange(1, 4), multiple=True,
              help="Engaged-leg counts (repeatable) [1 2 3 4].")
@click.option("--start-mm", type=int, default=15, show_default=True)
@click.option("--stop-mm", type=int, default=120, show_default=True)
@click.option("--step-mm", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
def envelope(run: RunConfig, leg_counts, start_mm, stop_mm, step_mm):
    """Maximum grasp force versus object height."""
    counts = sorted(set(leg_counts)) or [1, 2, 3, 4]
    heights = default_heights(start_mm, stop_mm, step_mm)
    rows = []
    try:
        for n in counts:
            curve = envelope_curve(heights, n, run.gripper.leg.diameter, run.material,
                                   run.gripper.leg.arm_geometry)
            rows.extend(
                {"height_mm": p.object_height / MM, "legs": n, "f_max_N": p.f_max}
                for p in curve.points
            )
    except DomainError as exc:
        raise _usage(exc)
    fmt = "json" if run.fmt == "json" else "csv"
    text = json.dumps(rows, indent=2) + "\n" if fmt == "json" else _render(rows, "csv")
    _emit(run, "envelope", text, EXTENSIONS[fmt])


@cli.command("assess")
@click.option("--catalog", type=click.Path(exists=True, dir_okay=False),
              help="Object catalog JSON [bundled 18-object set].")
@click.option("--force-n", type=float, default=DEFAULT_FORCE_COMMAND, show_default=True)
@click.option("--accel", type=float, default=0.7, show_default=True, help="Lift acceleration, m/s^2.")
@click.option("--mu", type=float, default=None, help="Override pad friction for every object.")
@click.option("--oblique-mode", type=click.Choice([m.value for m in ObliqueMode]),
              default=ObliqueMode.HALVED.value, show_default=True)
@click.pass_obj
def assess(run: RunConfig, catalog, force_n, accel, mu, oblique_mode):
    """Grasp feasibility for every object in a catalog."""
    try:
        objects = load_catalog(catalog)
        reports = assess_catalog(objects, run.gripper, force_command=force_n, accel=accel,
                                 oblique_mode=oblique_mode, mu=mu)
    except DomainError as exc:
        raise _usage(exc)
    rows = [
        {
            "name": r.name,
            "mode": r.mode,
            "engaged_legs": r.engaged_legs,
            "mass_kg": o.mass,
            "lift_capacity_kg": r.lift_capacity,
            "force_closure": r.force_closure,
            "manipulation_ok": r.manipulation_ok,
            "overload": r.overload,
            "f_max_N": r.f_max,
            "mu": r.mu,
            "mu_source": "assumed" if r.mu_assumed else "given",
        }
        for o, r in zip(objects, reports)
    ]
    ok = sum(r.manipulation_ok and not r.overload for r in reports)
    title = f"{ok}/{len(reports)} objects manipulation_ok (oblique mode {oblique_mode})"
    _emit(run, "assess", _render(rows, run.fmt, title))
    if ok < len(reports):
        sys.exit(EXIT_NEGATIVE)


@cli.command("plan-trial")
@click.option("--object", "object_name", default=None, help="Catalog object name.")
@click.option("--catalog", type=click.Path(exists=True, dir_okay=False))
@click.option("--height-mm", type=float, default=None, help="Ad-hoc cylindrical object height.")
@click.option("--width-mm", type=float, default=60.0, show_default=True,
              help="Ad-hoc cylindrical object diameter.")
@click.option("--force-n", type=float, default=DEFAULT_FORCE_COMMAND, show_default=True)
@click.pass_obj
def plan_trial(run: RunConfig, object_name, catalog, height_mm, width_mm, force_n):
    """Nine-step grasp, manipulate and release plan."""
    try:
        if object_name is not None:
            matches = [o for o in load_catalog(catalog) if o.name == object_name]
            if not matches:
                raise DomainError(f"no object named {object_name!r} in catalog")
            obj = matches[0]
        elif height_mm is not None:
            obj = ObjectModel("ad-hoc", Cylinder(width_mm * MM / 2), height_mm * MM, 0.0)
        else:
            raise DomainError("give --object or --height-mm")
        steps = build_trial_plan(obj, run.gripper, force_n)
    except DomainError as exc:
        raise _usage(exc)
    if run.fmt == "json":
        _emit(run, "plan-trial", plan_to_json(steps))
        return
    rows = []
    for s in steps:
        a = s.action
        value = (" ".join(_g(v) for v in a.pose.as_tuple()) if s.kind == "move_to"
                 else _g(a.force) if s.kind == "close_to_force" else _g(a.gap))
        rows.append({"index": s.index, "kind": s.kind, "value": value})
    if run.fmt == "csv":
        _emit(run, "plan-trial", _render(rows, "csv"))
    else:
        lines = [f"{r['index']}. {r['kind']} {r['value']}" for r in rows]
        lines.append(f"arm motion time: {_g(plan_duration(steps))} s")
        _emit(run, "plan-trial", "\n".join(lines) + "\n")


@cli.command("clutter-check")
@click.option("--scene", type=click.Path(exists=True, dir_okay=False), required=True,
              help="JSON array of gaps with width_mm and depth_mm.")
@click.option("--entry-margin-mm", type=float, default=2.0, show_default=True)
@click.pass_obj
def clutter_check(run: RunConfig, scene, entry_margin_mm):
    """Can every leg enter a clutter gap with enough total area."""
    try:
        report = clutter_feasibility(load_scene(scene, entry_margin_mm), run.gripper)
    except DomainError as exc:
        raise _usage(exc)
    row = {
        "feasible": report.feasible,
        "assignments": " ".join(f"{leg}:{gap}" for leg, gap in report.assignments),
        "total_gap_area_mm2": report.total_gap_area / 1e-6,
        "required_area_mm2": report.required_area / 1e-6,
        "min_gap_width_mm": report.min_gap_width / MM,
        "binding": "; ".join(report.binding),
    }
    _emit(run, "clutter-check", _render([row], run.fmt))
    if not report.feasible:
        sys.exit(EXIT_NEGATIVE)


def main():
    cli(auto_envvar_prefix="GRIPPERFORGE")


if __name__ == "__main__":
    main()
