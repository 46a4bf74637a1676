"""Force-closure sweeps over (theta, delta) and straight-line tilt planning.

The palm's curved end is a circular arc of radius R. In the palm frame the tip
point Y is the origin, the arc runs along +x and bends toward -z:

    P(l) = (R sin(l/R), -R (1 - cos(l/R)))

so the palm body lies on the -z side and its outward normal at ``l`` is
``(sin(l/R), cos(l/R))``. Pure rolling identifies arc parameter with delta.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .closure import force_closure
from .errors import ArcBudgetExceeded, NoFeasiblePath, NoValidPlacement, SpecMismatch
from .geom2d import Pose2, Vec2
from .mobility import (
    critical_palm_angle,
    ungrasp_cw_feasible,
    with_palm_angle,
)
from .scene import (
    THETA_CAP,
    Configuration,
    ContactSet,
    PalmModel,
    SupportPair,
    TrapezoidObject,
    contacts_from_config,
    object_pose_from_theta,
    right_edge_line,
)


@dataclass(frozen=True)
class GridSpec:
    theta_max: float = math.radians(60.0)
    n_theta: int = 100
    n_delta: int = 100

    def __post_init__(self):
        if self.n_theta < 2 or self.n_delta < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        if not 0.0 < self.theta_max <= THETA_CAP + 1e-12:
            raise ValueError("theta_max must lie in (0, 80] degrees")

    def thetas(self) -> np.ndarray:
        return np.arange(self.n_theta) * self.theta_max / (self.n_theta - 1)


@dataclass
class ClosureMap:
    spec: GridSpec
    L_side: float
    cells: np.ndarray  # bool, shape (n_theta, n_delta)
    mu_C: float

    def __post_init__(self):
        if self.cells.shape != (self.spec.n_theta, self.spec.n_delta):
            raise ValueError("cell matrix does not match the grid spec")

    def thetas(self) -> np.ndarray:
        return self.spec.thetas()

    def deltas(self) -> np.ndarray:
        return np.arange(self.spec.n_delta) * self.L_side / (self.spec.n_delta - 1)


@dataclass(frozen=True)
class TiltPlan:
    start: Configuration
    target: Configuration
    clearance: float
    waypoints: list[Configuration] = field(default_factory=list)


@dataclass(frozen=True)
class PalmTrajectory:
    poses: list[Pose2]
    contact_params: list[float]
    restrained_at_target: bool
    critical_angle: float
    final_palm_angle: float


def closure_at(obj, supports, palm, config: Configuration) -> bool:
    try:
        cs = contacts_from_config(obj, supports, palm, config)
    except NoValidPlacement:
        return False
    return force_closure(cs, sticky_c=palm.sticky)


def _closure_row(args) -> list[bool]:
    obj, supports, palm, theta, deltas = args
    return [closure_at(obj, supports, palm, Configuration(theta, float(d))) for d in deltas]


def closure_map(
    obj: TrapezoidObject,
    supports: SupportPair,
    palm: PalmModel,
    spec: GridSpec,
    workers: int = 1,
) -> ClosureMap:
    """Force-closure verdict at every grid cell; invalid placements count as False.

    Rows are independent, so ``workers > 1`` fans them out to processes; the
    result does not depend on the worker count.
    """
    L = obj.side_length
    deltas = np.arange(spec.n_delta) * L / (spec.n_delta - 1)
    jobs = [(obj, supports, palm, float(t), deltas) for t in spec.thetas()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_closure_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_closure_row(j) for j in jobs]
    return ClosureMap(spec, L, np.array(rows, dtype=bool), palm.mu_C)


def map_containment(a: ClosureMap, b: ClosureMap) -> bool:
    """True iff every closed cell of ``a`` is closed in ``b``."""
    if a.spec != b.spec or not math.isclose(a.L_side, b.L_side, rel_tol=0, abs_tol=1e-12):
        raise SpecMismatch("maps were computed on different grids")
    return bool(np.all(b.cells[a.cells]))


def _false_cell_tree(cmap: ClosureMap) -> cKDTree | None:
    ii, jj = np.nonzero(~cmap.cells)
    if ii.size == 0:
        return None
    pts = np.column_stack([ii / (cmap.spec.n_theta - 1), jj / (cmap.spec.n_delta - 1)])
    return cKDTree(pts)


def segment_samples(delta0: float, theta_t: float, n: int) -> list[Configuration]:
    s = np.linspace(0.0, 1.0, n)
    return [Configuration(float(theta_t * u), float(delta0 * (1.0 - u))) for u in s]


def plan_straight_path(
    obj: TrapezoidObject,
    supports: SupportPair,
    palm: PalmModel,
    spec: GridSpec,
    n_validate: int = 50,
    cmap: ClosureMap | None = None,
) -> TiltPlan:
    """Best straight segment from the delta-axis to the theta-axis inside the closure region.

    Candidates are ranked by clearance from the map (normalized distance to the
    nearest open cell), then larger theta_T, then larger delta0; the first one
    whose ``n_validate`` samples all pass an exact closure test wins.
    """
    if n_validate < 50:
        raise ValueError("n_validate must be at least 50")
    if cmap is None:
        cmap = closure_map(obj, supports, palm, spec)
    cells = cmap.cells
    thetas, deltas = cmap.thetas(), cmap.deltas()
    # endpoints are grid points, so the map value is the exact verdict there
    j_ok = [j for j in range(1, spec.n_delta) if cells[0, j]]
    i_ok = [i for i in range(1, spec.n_theta) if cells[i, 0]]
    if not j_ok or not i_ok:
        raise NoFeasiblePath("no closed configuration on one of the axes")

    u = np.linspace(0.0, 1.0, n_validate)
    tree = _false_cell_tree(cmap)
    cands = []
    for i in i_ok:
        for j in j_ok:
            pts = np.column_stack([u * (i / (spec.n_theta - 1)), (1.0 - u) * (j / (spec.n_delta - 1))])
            if tree is None:
                clear = 1.0
                dist = np.full(n_validate, np.inf)
            else:
                dist, _ = tree.query(pts)
                clear = float(min(1.0, dist.min()))
            cands.append((-clear, -i, -j, dist))
    cands.sort(key=lambda c: c[:3])

    cache: dict[tuple[float, float], bool] = {}

    def ok(cfg: Configuration) -> bool:
        key = (cfg.theta, cfg.delta)
        if key not in cache:
            cache[key] = closure_at(obj, supports, palm, cfg)
        return cache[key]

    for neg_clear, neg_i, neg_j, dist in cands:
        theta_t, delta0 = float(thetas[-neg_i]), float(deltas[-neg_j])
        samples = segment_samples(delta0, theta_t, n_validate)
        order = np.argsort(dist, kind="stable")
        if all(ok(samples[k]) for k in order):
            return TiltPlan(samples[0], samples[-1], -neg_clear, samples)
    raise NoFeasiblePath("no straight-line candidate stays in force closure")


def palm_arc_point(palm: PalmModel, lam: float) -> tuple[Vec2, Vec2]:
    """Point and unit tangent of the palm arc at parameter ``lam`` (palm frame)."""
    u = lam / palm.R
    p = Vec2(palm.R * math.sin(u), -palm.R * (1.0 - math.cos(u)))
    t = Vec2(math.cos(u), -math.sin(u))
    return p, t


def palm_pose_for_config(
    obj: TrapezoidObject, supports: SupportPair, palm: PalmModel, config: Configuration
) -> tuple[Pose2, float]:
    if config.delta > palm.tip_arc_length + 1e-12:
        raise ArcBudgetExceeded(
            f"delta {config.delta:.6g} exceeds palm arc budget {palm.tip_arc_length:.6g}"
        )
    lam = config.delta
    pose_obj = object_pose_from_theta(obj, supports, config.theta)
    edge = right_edge_line(obj, pose_obj)
    c_world = edge.at(config.delta)
    p, _ = palm_arc_point(palm, lam)
    alpha = edge.direction.angle() + lam / palm.R
    t = c_world - p.rotated(alpha)
    return Pose2(alpha, t), lam


def palm_chord_angle(pose: Pose2, palm: PalmModel, delta0: float) -> float:
    """World angle in [0, pi) of the straight chord from tip Y to point X."""
    x, _ = palm_arc_point(palm, delta0)
    if x.norm() == 0.0:
        _, t = palm_arc_point(palm, 0.0)
        d = pose.rotate(t)
    else:
        d = pose.rotate(x)
    return math.atan2(d.z, d.x) % math.pi


def restrained_with_palm_angle(contacts: ContactSet, phi: float) -> bool:
    """Does a straight palm at angle ``phi`` rule out clockwise ungrasping?"""
    return not ungrasp_cw_feasible(with_palm_angle(contacts, phi))


def palm_trajectory(
    plan: TiltPlan, obj: TrapezoidObject, supports: SupportPair, palm: PalmModel
) -> PalmTrajectory:
    poses, params = [], []
    for cfg in plan.waypoints:
        pose, lam = palm_pose_for_config(obj, supports, palm, cfg)
        poses.append(pose)
        params.append(lam)
    target = contacts_from_config(obj, supports, palm, plan.target)
    phi_crit = critical_palm_angle(target.A, target.B, target.C.position)
    phi_final = palm_chord_angle(poses[-1], palm, plan.start.delta)
    return PalmTrajectory(
        poses=poses,
        contact_params=params,
        restrained_at_target=restrained_with_palm_angle(target, phi_final),
        critical_angle=phi_crit,
        final_palm_angle=phi_final,
    )
