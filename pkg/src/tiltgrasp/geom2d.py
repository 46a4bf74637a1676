"""Planar geometry in the x-z plane.

Angles are radians, counter-clockwise positive. ``cross(a, b)`` is the
scalar ``a.x * b.z - a.z * b.x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPS_GEOM = 1e-9
EPS_UNIT = 1e-12


@dataclass(frozen=True, slots=True)
class Vec2:
    x: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.z)):
            raise ValueError(f"non-finite vector ({self.x}, {self.z})")

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.z + other.z)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.z - other.z)

    def __mul__(self, s: float) -> Vec2:
        return Vec2(self.x * s, self.z * s)

    __rmul__ = __mul__

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.z)

    def dot(self, other: Vec2) -> float:
        return self.x * other.x + self.z * other.z

    def cross(self, other: Vec2) -> float:
        return self.x * other.z - self.z * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.z)

    def normalized(self) -> Vec2:
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return Vec2(self.x / n, self.z / n)

    def perp(self) -> Vec2:
        """Counter-clockwise quarter turn."""
        return Vec2(-self.z, self.x)

    def rotated(self, angle: float) -> Vec2:
        c, s = math.cos(angle), math.sin(angle)
        return Vec2(c * self.x - s * self.z, s * self.x + c * self.z)

    def angle(self) -> float:
        return math.atan2(self.z, self.x)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.z])

    @classmethod
    def polar(cls, angle: float, r: float = 1.0) -> Vec2:
        return cls(r * math.cos(angle), r * math.sin(angle))


def wrap_angle(a: float) -> float:
    """Map an angle into (-pi, pi]."""
    a = math.remainder(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    return a


def angle_between(a: Vec2, b: Vec2) -> float:
    """Unsigned angle in [0, pi] between two nonzero vectors."""
    return math.atan2(abs(a.cross(b)), a.dot(b))


@dataclass(frozen=True, slots=True)
class Pose2:
    """Rigid transform: rotate by ``angle`` then translate."""

    angle: float
    translation: Vec2

    def __post_init__(self):
        object.__setattr__(self, "angle", wrap_angle(self.angle))

    def apply(self, p: Vec2) -> Vec2:
        return p.rotated(self.angle) + self.translation

    def rotate(self, v: Vec2) -> Vec2:
        return v.rotated(self.angle)

    def inverse(self) -> Pose2:
        t = (-self.translation).rotated(-self.angle)
        return Pose2(-self.angle, t)


def _unit(d: Vec2) -> Vec2:
    n = d.norm()
    if abs(n - 1.0) <= EPS_UNIT:
        return d
    return d.normalized()


@dataclass(frozen=True, slots=True)
class Ray2:
    origin: Vec2
    direction: Vec2

    def __post_init__(self):
        object.__setattr__(self, "direction", _unit(self.direction))

    def at(self, t: float) -> Vec2:
        return self.origin + self.direction * t


@dataclass(frozen=True, slots=True)
class Line2:
    point: Vec2
    direction: Vec2

    def __post_init__(self):
        object.__setattr__(self, "direction", _unit(self.direction))

    def at(self, t: float) -> Vec2:
        return self.point + self.direction * t

    def param(self, p: Vec2) -> float:
        """Signed arc-length coordinate of the projection of ``p``."""
        return (p - self.point).dot(self.direction)

    def distance(self, p: Vec2) -> float:
        return abs(self.direction.cross(p - self.point))

    def reversed(self) -> Line2:
        return Line2(self.point, -self.direction)


@dataclass(frozen=True, slots=True)
class DirCone:
    axis: Vec2
    half_angle: float

    def __post_init__(self):
        object.__setattr__(self, "axis", _unit(self.axis))
        if not 0.0 <= self.half_angle <= math.pi / 2:
            raise ValueError(f"half_angle {self.half_angle} outside [0, pi/2]")

    @classmethod
    def friction(cls, normal: Vec2, mu: float) -> DirCone:
        if mu < 0:
            raise ValueError("friction coefficient must be non-negative")
        return cls(normal, math.atan(mu))

    def edges(self) -> tuple[Vec2, Vec2]:
        """Boundary directions, counter-clockwise edge first."""
        return self.axis.rotated(self.half_angle), self.axis.rotated(-self.half_angle)


def ray_line_intersect(ray: Ray2, line: Line2) -> Vec2 | None:
    denom = ray.direction.cross(line.direction)
    if abs(denom) < EPS_UNIT:
        return None
    t = (line.point - ray.origin).cross(line.direction) / denom
    if t < 0.0:
        return None
    return ray.at(t)


def line_line_intersect(a: Line2, b: Line2) -> Vec2 | None:
    denom = a.direction.cross(b.direction)
    if abs(denom) < EPS_UNIT:
        return None
    t = (b.point - a.point).cross(b.direction) / denom
    return a.at(t)


def cone_contains(cone: DirCone, d: Vec2) -> bool:
    return angle_between(cone.axis, d) <= cone.half_angle + EPS_UNIT


def side_of_line(p: Vec2, line: Line2) -> float:
    """Positive left of the directed line, negative right."""
    return line.direction.cross(p - line.point)


def polygon_centroid(pts: list[Vec2]) -> Vec2:
    """Area centroid of a simple polygon (shoelace)."""
    a = cx = cz = 0.0
    n = len(pts)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        w = p.cross(q)
        a += w
        cx += (p.x + q.x) * w
        cz += (p.z + q.z) * w
    a *= 0.5
    return Vec2(cx / (6.0 * a), cz / (6.0 * a))
