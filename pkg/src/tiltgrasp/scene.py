"""World model: trapezoid object wedged in a two-support corner, palm on its right edge.

Support #1 is the floor ``z = 0``. Support #2 is the line through the corner
(origin) with direction ``(cos psi, sin psi)``; the object sits to its right.
Contact A is the bottom-left vertex on the floor, B the top-left vertex on the
wall, C a point on the right edge at distance ``delta`` above the bottom-right
vertex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .closure import Wrench
from .errors import DeltaOutOfRange, NoValidPlacement
from .geom2d import EPS_GEOM, Line2, Pose2, Vec2

G = 9.81
THETA_CAP = math.radians(80.0)


@dataclass(frozen=True)
class TrapezoidObject:
    w_b: float
    w_t: float
    h: float
    mass: float = 1.0

    def __post_init__(self):
        if not self.w_b > 0:
            raise ValueError("bottom width must be positive")
        if self.w_t < self.w_b:
            raise ValueError("top edge may not be shorter than the bottom edge")
        if not self.h > 0:
            raise ValueError("height must be positive")
        if not self.mass > 0:
            raise ValueError("mass must be positive")

    @property
    def side_length(self) -> float:
        return math.hypot((self.w_t - self.w_b) / 2.0, self.h)


@dataclass(frozen=True)
class SupportPair:
    psi: float
    mu_A: float = 0.1
    mu_B: float = 0.1

    def __post_init__(self):
        if not math.pi / 6 < self.psi <= math.pi / 2 + 1e-12:
            raise ValueError("support angle must lie in (30, 90] degrees")
        if self.mu_A < 0 or self.mu_B < 0:
            raise ValueError("friction coefficients must be non-negative")

    @property
    def wall_direction(self) -> Vec2:
        return Vec2(math.cos(self.psi), math.sin(self.psi))

    @property
    def wall_line(self) -> Line2:
        return Line2(Vec2(0.0, 0.0), self.wall_direction)

    @property
    def wall_normal(self) -> Vec2:
        # points from the wall into the object region
        return Vec2(math.sin(self.psi), -math.cos(self.psi))


@dataclass(frozen=True)
class PalmModel:
    mu_C: float = 0.2
    sticky: bool = False
    R: float = 0.08
    tip_arc_length: float = 0.1

    def __post_init__(self):
        if self.mu_C < 0:
            raise ValueError("palm friction must be non-negative")
        if not self.R > 0:
            raise ValueError("palm radius must be positive")
        if self.tip_arc_length < 0:
            raise ValueError("arc budget must be non-negative")


@dataclass(frozen=True)
class Configuration:
    theta: float
    delta: float


@dataclass(frozen=True)
class ContactPoint:
    position: Vec2
    normal: Vec2
    mu: float
    tangent_slip: Vec2 | None = None

    def __post_init__(self):
        if abs(self.normal.norm() - 1.0) > 1e-9:
            raise ValueError("contact normal must be unit length")
        if self.mu < 0:
            raise ValueError("friction coefficient must be non-negative")


@dataclass(frozen=True)
class ContactSet:
    A: ContactPoint
    B: ContactPoint
    C: ContactPoint
    # infinite line of the right edge, origin at the bottom-right vertex
    edge_line: Line2 | None = field(default=None, compare=False)

    def __iter__(self):
        return iter((self.A, self.B, self.C))

    def with_C_normal(self, normal: Vec2) -> ContactSet:
        c = ContactPoint(self.C.position, normal, self.C.mu, self.C.tangent_slip)
        return ContactSet(self.A, self.B, c, self.edge_line)


def trapezoid_vertices(obj: TrapezoidObject) -> tuple[Vec2, Vec2, Vec2, Vec2]:
    """Body-frame vertices (BL, BR, TR, TL)."""
    off = (obj.w_b - obj.w_t) / 2.0
    return (
        Vec2(0.0, 0.0),
        Vec2(obj.w_b, 0.0),
        Vec2(obj.w_b - off, obj.h),
        Vec2(off, obj.h),
    )


def com_of_trapezoid(obj: TrapezoidObject) -> Vec2:
    zbar = obj.h / 3.0 * (2.0 * obj.w_t + obj.w_b) / (obj.w_t + obj.w_b)
    return Vec2(obj.w_b / 2.0, zbar)


def object_pose_from_theta(obj: TrapezoidObject, supports: SupportPair, theta: float) -> Pose2:
    """Place the object tilted by ``theta`` with BL on the floor and TL on the wall."""
    if theta < -1e-12 or theta > THETA_CAP + 1e-12:
        raise NoValidPlacement(f"theta {math.degrees(theta):.3f} deg outside [0, 80]")
    tl = trapezoid_vertices(obj)[3].rotated(theta)
    psi = supports.psi
    a_x = tl.z * math.cos(psi) / math.sin(psi) - tl.x
    pose = Pose2(theta, Vec2(a_x, 0.0))
    wall = supports.wall_line
    for v in trapezoid_vertices(obj):
        w = pose.apply(v)
        if w.z < -EPS_GEOM:
            raise NoValidPlacement(f"vertex {w} penetrates support #1")
        # object region is on the right of the upward wall direction
        if wall.direction.cross(w) > EPS_GEOM:
            raise NoValidPlacement(f"vertex {w} penetrates support #2")
    return pose


def right_edge_line(obj: TrapezoidObject, pose: Pose2) -> Line2:
    _, br, tr, _ = trapezoid_vertices(obj)
    return Line2(pose.apply(br), pose.rotate(tr - br))


def contacts_from_config(
    obj: TrapezoidObject, supports: SupportPair, palm: PalmModel, config: Configuration
) -> ContactSet:
    L = obj.side_length
    if not -1e-12 <= config.delta <= L + 1e-12:
        raise DeltaOutOfRange(f"delta out of range: {config.delta} not in [0, {L:.6g}]")
    pose = object_pose_from_theta(obj, supports, config.theta)
    bl, _, _, tl = trapezoid_vertices(obj)
    edge = right_edge_line(obj, pose)
    wall_dir = supports.wall_direction
    a = ContactPoint(pose.apply(bl), Vec2(0.0, 1.0), supports.mu_A, Vec2(1.0, 0.0))
    b = ContactPoint(pose.apply(tl), supports.wall_normal, supports.mu_B, -wall_dir)
    c = ContactPoint(edge.at(config.delta), edge.direction.perp(), palm.mu_C)
    return ContactSet(a, b, c, edge)


def world_com(obj: TrapezoidObject, pose: Pose2) -> Vec2:
    return pose.apply(com_of_trapezoid(obj))


def gravity_wrench(obj: TrapezoidObject, pose: Pose2) -> Wrench:
    return Wrench.point_force(world_com(obj, pose), Vec2(0.0, -obj.mass * G))


# Reference scenario used by tests, scripts and the bundled scene file.
REFERENCE_OBJECT = TrapezoidObject(0.3, 0.3, 0.1, 1.0)
REFERENCE_SUPPORTS = SupportPair(math.radians(90.0), 0.1, 0.1)
REFERENCE_PALM = PalmModel(mu_C=0.2, sticky=False, R=0.08, tip_arc_length=0.1)
