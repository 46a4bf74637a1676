"""Wrench-space machinery: friction-cone generators, force closure, gravity balance.

Wrenches are ordered ``(fx, fz, tau)`` with moments about the world origin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import MissingSlipDirection
from .geom2d import DirCone, Vec2, cone_contains
from .lp import feasible_nonneg

if TYPE_CHECKING:
    from .scene import ContactPoint, ContactSet

RANK_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Wrench:
    fx: float
    fz: float
    tau: float

    @classmethod
    def point_force(cls, p: Vec2, f: Vec2) -> Wrench:
        return cls(f.x, f.z, p.cross(f))

    @property
    def force(self) -> Vec2:
        return Vec2(self.fx, self.fz)

    def __neg__(self) -> Wrench:
        return Wrench(-self.fx, -self.fz, -self.tau)

    def __add__(self, other: Wrench) -> Wrench:
        return Wrench(self.fx + other.fx, self.fz + other.fz, self.tau + other.tau)

    def __mul__(self, s: float) -> Wrench:
        return Wrench(self.fx * s, self.fz * s, self.tau * s)

    __rmul__ = __mul__

    def moment_about(self, p: Vec2) -> float:
        """Moment of this wrench about point ``p``."""
        return self.tau - p.cross(self.force)

    def as_array(self) -> np.ndarray:
        return np.array([self.fx, self.fz, self.tau])


@dataclass(frozen=True)
class WrenchCone:
    generators: tuple[Wrench, ...]
    # (contact name, edge side) per generator
    tags: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        if not 1 <= len(self.generators) <= 8:
            raise ValueError(f"cone needs 1..8 generators, got {len(self.generators)}")
        for g in self.generators:
            if g.fx == 0 and g.fz == 0 and g.tau == 0:
                raise ValueError("zero generator")
        if not self.tags:
            object.__setattr__(self, "tags", tuple(("?", "?") for _ in self.generators))

    def matrix(self) -> np.ndarray:
        return np.array([g.as_array() for g in self.generators]).T

    def __add__(self, other: WrenchCone) -> WrenchCone:
        return WrenchCone(self.generators + other.generators, self.tags + other.tags)


def friction_cone(c: ContactPoint) -> DirCone:
    return DirCone.friction(c.normal, c.mu)


def cone_edge_wrenches(c: ContactPoint) -> tuple[Wrench, Wrench]:
    """Wrenches of the two friction-cone edge forces, ``n + mu t`` first."""
    n = c.normal
    t = n.perp()
    f_plus = (n + t * c.mu).normalized()
    f_minus = (n - t * c.mu).normalized()
    return Wrench.point_force(c.position, f_plus), Wrench.point_force(c.position, f_minus)


def sliding_edge_wrench(c: ContactPoint) -> Wrench:
    """Single friction-cone edge opposing the contact's slip."""
    if c.tangent_slip is None:
        raise MissingSlipDirection("contact has no slip direction")
    f = (c.normal - c.tangent_slip * c.mu).normalized()
    return Wrench.point_force(c.position, f)


def sticky_wrenches(c: ContactPoint) -> tuple[Wrench, Wrench, Wrench]:
    """Unbounded-friction limit: normal push plus both tangential directions."""
    n = c.normal
    t = n.perp()
    return tuple(Wrench.point_force(c.position, f) for f in (n, t, -t))


def contact_cone(c: ContactPoint, name: str, sticky: bool = False) -> WrenchCone:
    if sticky:
        return WrenchCone(sticky_wrenches(c), ((name, "n"), (name, "+t"), (name, "-t")))
    return WrenchCone(cone_edge_wrenches(c), ((name, "+"), (name, "-")))


def sliding_cone(c: ContactPoint, name: str) -> WrenchCone:
    return WrenchCone((sliding_edge_wrench(c),), ((name, "slide"),))


def _as_matrix(generators: Iterable[Wrench]) -> np.ndarray:
    return np.array([g.as_array() for g in generators], dtype=float).T


def positive_span_feasible(generators: Sequence[Wrench], target: Wrench) -> bool:
    """Is ``target`` a non-negative combination of ``generators``?"""
    G = _as_matrix(generators)
    b = target.as_array()
    scale = np.abs(b).max()
    if scale == 0.0:
        return True
    # feasibility is invariant under positive rescaling of the target
    return feasible_nonneg(G, b / scale) is not None


def full_rank(generators: Sequence[Wrench]) -> bool:
    s = np.linalg.svd(_as_matrix(generators), compute_uv=False)
    return s.size == 3 and s[-1] > RANK_TOL * s[0]


def closure_of_generators(generators: Sequence[Wrench]) -> bool:
    """Positive span equals R^3: full rank and a null combination with all weights >= 1."""
    if not full_rank(generators):
        return False
    F = _as_matrix(generators)
    # F k = 0 with k = 1 + s, s >= 0  <=>  F s = -F 1
    rhs = -F.sum(axis=1)
    return positive_span_feasible(generators, Wrench(*rhs))


def force_closure(contacts: ContactSet | Iterable[ContactPoint], sticky_c: bool = False) -> bool:
    """Force closure of the full friction cones at every contact.

    With ``sticky_c`` the contact named C uses the unbounded-friction generator set.
    """
    gens: list[Wrench] = []
    cs = list(contacts)
    for i, c in enumerate(cs):
        if sticky_c and i == 2:
            gens.extend(sticky_wrenches(c))
        else:
            gens.extend(cone_edge_wrenches(c))
    return closure_of_generators(gens)


def two_contact_wedge(B: ContactPoint, C: ContactPoint) -> bool:
    """Planar two-contact force closure: each cone sees the other along BC."""
    bc = C.position - B.position
    if bc.norm() == 0.0:
        raise ValueError("contacts coincide")
    d = bc.normalized()
    return cone_contains(friction_cone(B), d) and cone_contains(friction_cone(C), -d)


def line_of_sight_margin(B: ContactPoint, C: ContactPoint) -> float:
    """Smallest distance (rad) of either line-of-sight angle from its cone boundary."""
    from .geom2d import angle_between

    d = (C.position - B.position).normalized()
    mb = abs(angle_between(B.normal, d) - math.atan(B.mu))
    mc = abs(angle_between(C.normal, -d) - math.atan(C.mu))
    return min(mb, mc)
