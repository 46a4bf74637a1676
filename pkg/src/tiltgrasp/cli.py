"""Command-line front end.

    tiltgrasp --scene scenes/reference.json classify --theta-deg 0 --delta 0.08
    tiltgrasp --scene scenes/reference.json --out out map --format both
    tiltgrasp --scene scenes/reference.json --out out plan
    tiltgrasp --scene scenes/reference.json render --theta-deg 20 --delta 0.05 --output out/scene.svg

Exit codes: 0 success, 1 valid input but no feasible plan, 2 invalid input or I/O failure.
Diagnostics go to stderr; the run report (JSON) goes to stdout.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import jsonschema

from .errors import NoFeasiblePath, TiltGraspError
from .mobility import classify
from .planner import (
    GridSpec,
    closure_map,
    palm_trajectory,
    plan_straight_path,
)
from .scene import (
    Configuration,
    PalmModel,
    SupportPair,
    TrapezoidObject,
    contacts_from_config,
    gravity_wrench,
    object_pose_from_theta,
    trapezoid_vertices,
)
from .svg import closure_map_svg, fmt, scene_svg

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID = 0, 1, 2


def _obj(props: dict, required=None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


_num = {"type": "number"}
_int = {"type": "integer"}

SCENE_SCHEMA = _obj({
    "object": _obj({"w_b": _num, "w_t": _num, "h": _num, "mass": _num}),
    "supports": _obj({"psi_deg": _num, "mu_a": _num, "mu_b": _num}),
    "palm": _obj({"mu_c": _num, "sticky": {"type": "boolean"}, "radius": _num, "tip_arc_length": _num}),
    "grid": _obj({"theta_max_deg": _num, "n_theta": _int, "n_delta": _int}),
})


@dataclass
class SceneFile:
    object: dict
    supports: dict
    palm: dict
    grid: dict

    @classmethod
    def from_dict(cls, data: dict) -> SceneFile:
        jsonschema.validate(data, SCENE_SCHEMA)
        scene = cls(**{k: dict(data[k]) for k in ("object", "supports", "palm", "grid")})
        scene.build()  # re-validate model invariants
        return scene

    @classmethod
    def load(cls, path: str | Path) -> SceneFile:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def build(self) -> tuple[TrapezoidObject, SupportPair, PalmModel, GridSpec]:
        o, s, p, g = self.object, self.supports, self.palm, self.grid
        obj = TrapezoidObject(o["w_b"], o["w_t"], o["h"], o["mass"])
        sup = SupportPair(math.radians(s["psi_deg"]), s["mu_a"], s["mu_b"])
        palm = PalmModel(p["mu_c"], p["sticky"], p["radius"], p["tip_arc_length"])
        spec = GridSpec(math.radians(g["theta_max_deg"]), g["n_theta"], g["n_delta"])
        return obj, sup, palm, spec


@dataclass
class RunReport:
    command: str
    parameters: dict
    verdicts: dict = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    wall_ms: float = 0.0

    def dumps(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 100x100, got {text!r}")


def apply_overrides(scene: SceneFile, args) -> tuple[SceneFile, dict]:
    d = scene.to_dict()
    echo = {}
    if getattr(args, "mu_c", None) is not None:
        d["palm"]["mu_c"] = args.mu_c
        echo["mu_c"] = args.mu_c
    if getattr(args, "psi_deg", None) is not None:
        d["supports"]["psi_deg"] = args.psi_deg
        echo["psi_deg"] = args.psi_deg
    if getattr(args, "grid", None) is not None:
        d["grid"]["n_theta"], d["grid"]["n_delta"] = args.grid
        echo["grid"] = f"{args.grid[0]}x{args.grid[1]}"
    return SceneFile.from_dict(d), echo


def _cfg(theta_deg: float, delta: float) -> Configuration:
    return Configuration(math.radians(theta_deg), delta)


def _r6(x: float) -> float:
    v = round(float(x), 6)
    return 0.0 if v == 0 else v


def cmd_classify(scene: SceneFile, theta_deg: float, delta: float) -> tuple[int, RunReport]:
    obj, sup, palm, _ = scene.build()
    cfg = _cfg(theta_deg, delta)
    cs = contacts_from_config(obj, sup, palm, cfg)
    pose = object_pose_from_theta(obj, sup, cfg.theta)
    rep = classify(cs, gravity_wrench(obj, pose))
    s1, s2 = rep.images.edge_params
    verdicts = {
        "mode": rep.mode.value,
        "ordering": rep.ordering.value,
        "b1_param": None if s1 is None else _r6(s1),
        "b2_param": None if s2 is None else _r6(s2),
        "c_param": _r6(rep.c_param),
        "boundary_adjacent": rep.boundary_adjacent,
        "wedge": rep.wedge,
        "slide_balance": rep.slide_balance,
        "sticky_balance": rep.sticky_balance,
    }
    return EXIT_OK, RunReport("classify", {"theta_deg": theta_deg, "delta_m": delta}, verdicts)


def closure_csv(cmap) -> str:
    lines = ["theta_deg,delta_m,closure"]
    for i, th in enumerate(cmap.thetas()):
        for j, d in enumerate(cmap.deltas()):
            lines.append(f"{fmt(math.degrees(th))},{fmt(d)},{int(cmap.cells[i, j])}")
    return "\n".join(lines) + "\n"


def cmd_map(scene: SceneFile, out_dir: Path, fmt_: str = "csv", workers: int = 1) -> tuple[int, RunReport]:
    obj, sup, palm, spec = scene.build()
    cmap = closure_map(obj, sup, palm, spec, workers=workers)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    if fmt_ in ("csv", "both"):
        p = out_dir / "closure_map.csv"
        p.write_text(closure_csv(cmap))
        outputs.append(str(p))
    if fmt_ in ("svg", "both"):
        p = out_dir / "closure_map.svg"
        p.write_text(closure_map_svg(cmap))
        outputs.append(str(p))
    verdicts = {"closed_cells": int(cmap.cells.sum()), "total_cells": int(cmap.cells.size)}
    return EXIT_OK, RunReport("map", {"format": fmt_}, verdicts, outputs)


def _cfg_json(c: Configuration) -> dict:
    return {"theta_deg": _r6(math.degrees(c.theta)), "delta_m": _r6(c.delta)}


def cmd_plan(scene: SceneFile, out_dir: Path, workers: int = 1) -> tuple[int, RunReport]:
    obj, sup, palm, spec = scene.build()
    cmap = closure_map(obj, sup, palm, spec, workers=workers)
    try:
        plan = plan_straight_path(obj, sup, palm, spec, cmap=cmap)
    except NoFeasiblePath as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE, RunReport("plan", {}, {"feasible": False})
    traj = palm_trajectory(plan, obj, sup, palm)
    out_dir.mkdir(parents=True, exist_ok=True)
    plan_doc = {
        "start": _cfg_json(plan.start),
        "target": _cfg_json(plan.target),
        "clearance": _r6(plan.clearance),
        "waypoints": [_cfg_json(c) for c in plan.waypoints],
    }
    traj_doc = {
        "poses": [
            {"angle_deg": _r6(math.degrees(p.angle)), "x": _r6(p.translation.x), "z": _r6(p.translation.z)}
            for p in traj.poses
        ],
        "contact_params": [_r6(v) for v in traj.contact_params],
        "critical_angle_deg": _r6(math.degrees(traj.critical_angle)),
        "final_palm_angle_deg": _r6(math.degrees(traj.final_palm_angle)),
        "restrained_at_target": traj.restrained_at_target,
    }
    p1, p2 = out_dir / "plan.json", out_dir / "trajectory.json"
    p1.write_text(json.dumps(plan_doc, indent=2, sort_keys=True) + "\n")
    p2.write_text(json.dumps(traj_doc, indent=2, sort_keys=True) + "\n")
    verdicts = {
        "feasible": True,
        "clearance": plan_doc["clearance"],
        "restrained_at_target": traj.restrained_at_target,
    }
    return EXIT_OK, RunReport("plan", {}, verdicts, [str(p1), str(p2)])


def cmd_render(scene: SceneFile, theta_deg: float, delta: float, out_svg: Path) -> tuple[int, RunReport]:
    obj, sup, palm, _ = scene.build()
    cfg = _cfg(theta_deg, delta)
    cs = contacts_from_config(obj, sup, palm, cfg)
    pose = object_pose_from_theta(obj, sup, cfg.theta)
    verts = [pose.apply(v) for v in trapezoid_vertices(obj)]
    title = f"theta={fmt(theta_deg)} deg, delta={fmt(delta)} m"
    out_svg.parent.mkdir(parents=True, exist_ok=True)
    out_svg.write_text(scene_svg(verts, cs, sup, title))
    return EXIT_OK, RunReport("render", {"theta_deg": theta_deg, "delta_m": delta}, {}, [str(out_svg)])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    ap = argparse.ArgumentParser(prog="tiltgrasp", description="Tilt-to-pick grasp analysis and planning.")

    def add_globals(p, default):
        p.add_argument("--scene", default=default, help="scene JSON file")
        p.add_argument("--out", default=default, help="output directory")
        p.add_argument("--seed", type=int, default=default, help="seed echoed for oracle runs")
        p.add_argument("--mu-c", type=float, default=default)
        p.add_argument("--psi-deg", type=float, default=default)
        p.add_argument("--grid", type=_parse_grid, default=default, metavar="NxM")
        p.add_argument("--workers", type=int, default=default, help="processes for map sweeps")

    add_globals(ap, None)
    # SUPPRESS keeps subcommand copies from clobbering flags given before the subcommand
    add_globals(common, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="tilt mode at one configuration")
    p.add_argument("--theta-deg", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)

    p = sub.add_parser("map", parents=[common], help="force-closure map over (theta, delta)")
    p.add_argument("--format", choices=("csv", "svg", "both"), default="csv")

    sub.add_parser("plan", parents=[common], help="straight-line tilt plan and palm trajectory")

    p = sub.add_parser("render", parents=[common], help="SVG diagram of one configuration")
    p.add_argument("--theta-deg", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--output", help="SVG path (default OUT/render.svg)")
    return ap


def run(argv: list[str] | None = None) -> tuple[int, RunReport | None]:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.scene is None:
            raise ValueError("--scene is required")
        scene, echo = apply_overrides(SceneFile.load(args.scene), args)
        out = Path(args.out or ".")
        workers = args.workers or 1
        if args.command == "classify":
            code, report = cmd_classify(scene, args.theta_deg, args.delta)
        elif args.command == "map":
            code, report = cmd_map(scene, out, args.format, workers)
        elif args.command == "plan":
            code, report = cmd_plan(scene, out, workers)
        else:
            target = Path(args.output) if args.output else out / "render.svg"
            code, report = cmd_render(scene, args.theta_deg, args.delta, target)
    except (TiltGraspError, ValueError, OSError, jsonschema.ValidationError, KeyError) as e:
        msg = e.message if isinstance(e, jsonschema.ValidationError) else str(e)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID, None
    report.parameters.update(echo)
    report.parameters["scene"] = scene.to_dict()
    if args.seed is not None:
        report.parameters["seed"] = args.seed
    report.wall_ms = round((time.perf_counter() - t0) * 1000.0, 3)
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    if report is not None:
        print(report.dumps())
    return code


if __name__ == "__main__":
    sys.exit(main())
