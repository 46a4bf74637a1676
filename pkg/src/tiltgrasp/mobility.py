"""Qualitative tilt mechanics and first-order mobility of the wedged object.

Covers the edge images of B's friction cone on the palm-side edge line, the
three-way tilt-mode classification built on them, moment labels of wrench
cones, rotation-center labels, ungrasp feasibility and the critical palm angle.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .closure import (
    Wrench,
    WrenchCone,
    contact_cone,
    positive_span_feasible,
    sliding_cone,
    two_contact_wedge,
)
from .errors import DegenerateEdgeImages, ParallelNormals
from .geom2d import EPS_GEOM, Line2, Ray2, Vec2, line_line_intersect, ray_line_intersect
from .lp import solve_lp
from .scene import ContactPoint, ContactSet

INTERIOR_TOL = 1e-9


class TiltMode(enum.Enum):
    TwoContactWedge = "TwoContactWedge"
    ThreeContactSlide = "ThreeContactSlide"
    StickyRequired = "StickyRequired"
    Infeasible = "Infeasible"


class EdgeOrdering(enum.Enum):
    """Top-to-bottom order of B'1, B'2 and C along the edge line."""

    B1_C_B2 = "{B'1 C B'2}"
    C_B1_B2 = "{C B'1 B'2}"
    B1_B2_C = "{B'1 B'2 C}"


class MomentLabel(enum.Enum):
    Plus = "+"
    Minus = "-"
    PlusMinus = "+-"
    None_ = "none"


@dataclass(frozen=True)
class EdgeImagePair:
    b1: Vec2 | None
    b2: Vec2 | None
    edge_params: tuple[float | None, float | None]


@dataclass(frozen=True)
class RotationLabel:
    ccw_allowed: bool
    cw_allowed: bool


@dataclass(frozen=True)
class ModeReport:
    mode: TiltMode
    ordering: EdgeOrdering
    images: EdgeImagePair
    c_param: float
    boundary_adjacent: bool
    wedge: bool | None = None
    slide_balance: bool | None = None
    sticky_balance: bool | None = None


def b_prime_points(B: ContactPoint, edge_line: Line2) -> EdgeImagePair:
    """Images of B on the edge line under both friction-cone edges, higher first."""
    t = B.normal.perp()
    hits = []
    for sign in (1.0, -1.0):
        d = B.normal + t * (sign * B.mu)
        p = ray_line_intersect(Ray2(B.position, d), edge_line)
        hits.append((p, None if p is None else edge_line.param(p)))
    present = sorted((h for h in hits if h[0] is not None), key=lambda h: -h[1])
    if len(present) == 2:
        (b1, s1), (b2, s2) = present
        return EdgeImagePair(b1, b2, (s1, s2))
    if len(present) == 1:
        return EdgeImagePair(present[0][0], None, (present[0][1], None))
    return EdgeImagePair(None, None, (None, None))


def edge_ordering(images: EdgeImagePair, c_param: float) -> tuple[EdgeOrdering, bool]:
    """Ordering of C relative to the images, and whether C sits on a boundary.

    Ties within EPS_GEOM resolve toward the wedge ordering.
    """
    s1, s2 = images.edge_params
    if s1 is None or s2 is None:
        raise DegenerateEdgeImages("a friction-cone edge ray misses the edge line")
    near = abs(c_param - s1) <= EPS_GEOM or abs(c_param - s2) <= EPS_GEOM
    if s2 - EPS_GEOM <= c_param <= s1 + EPS_GEOM and s1 - s2 > 2 * EPS_GEOM:
        return EdgeOrdering.B1_C_B2, near
    if c_param > s1:
        return EdgeOrdering.C_B1_B2, near
    if c_param < s2:
        return EdgeOrdering.B1_B2_C, near
    # degenerate cone (b1 == b2) and C on it
    return EdgeOrdering.C_B1_B2, near


def sliding_generators(contacts: ContactSet, sticky_c: bool = False) -> WrenchCone:
    """A and B restricted to the friction edge opposing slip, plus C's cone."""
    return (
        sliding_cone(contacts.A, "A")
        + sliding_cone(contacts.B, "B")
        + contact_cone(contacts.C, "C", sticky=sticky_c)
    )


def classify(contacts: ContactSet, gravity: Wrench) -> ModeReport:
    edge = contacts.edge_line
    if edge is None:
        raise ValueError("contact set carries no edge line")
    images = b_prime_points(contacts.B, edge)
    c_param = edge.param(contacts.C.position)
    ordering, near = edge_ordering(images, c_param)
    need = -gravity

    if ordering is EdgeOrdering.B1_C_B2:
        wedge = two_contact_wedge(contacts.B, contacts.C)
        if wedge:
            return ModeReport(TiltMode.TwoContactWedge, ordering, images, c_param, near, wedge=True)
        slide = positive_span_feasible(sliding_generators(contacts).generators, need)
        mode = TiltMode.ThreeContactSlide if slide else TiltMode.Infeasible
        return ModeReport(mode, ordering, images, c_param, near, wedge=False, slide_balance=slide)

    if ordering is EdgeOrdering.C_B1_B2:
        slide = positive_span_feasible(sliding_generators(contacts).generators, need)
        mode = TiltMode.ThreeContactSlide if slide else TiltMode.Infeasible
        return ModeReport(mode, ordering, images, c_param, near, slide_balance=slide)

    slide = positive_span_feasible(sliding_generators(contacts).generators, need)
    sticky = positive_span_feasible(sliding_generators(contacts, sticky_c=True).generators, need)
    if slide:
        # C's ordinary cone already balances gravity; sticking is not needed
        mode = TiltMode.ThreeContactSlide
    elif sticky:
        mode = TiltMode.StickyRequired
    else:
        mode = TiltMode.Infeasible
    return ModeReport(mode, ordering, images, c_param, near, slide_balance=slide, sticky_balance=sticky)


def tilt_mode(contacts: ContactSet, gravity: Wrench) -> TiltMode:
    return classify(contacts, gravity).mode


def moment_label(point: Vec2, cone: WrenchCone) -> MomentLabel:
    ms = [g.moment_about(point) for g in cone.generators]
    scale = max(1.0, max(abs(g.tau) for g in cone.generators), point.norm())
    eps = 1e-9 * scale
    if all(abs(m) <= eps for m in ms):
        return MomentLabel.PlusMinus
    if all(m >= -eps for m in ms):
        return MomentLabel.Plus
    if all(m <= eps for m in ms):
        return MomentLabel.Minus
    return MomentLabel.None_


def label_contradicts(label: MomentLabel, moment: float, eps: float = 1e-7) -> bool:
    """Does a wrench with ``moment`` about a point conflict with that point's label?"""
    if label is MomentLabel.Plus:
        return moment < -eps
    if label is MomentLabel.Minus:
        return moment > eps
    if label is MomentLabel.PlusMinus:
        return abs(moment) > eps
    return False


def gravity_balance_consistent(
    cone: WrenchCone, gravity: Wrench, verify_labels: bool = False, rng=None
) -> bool:
    """Can the cone supply the wrench opposing gravity?

    With ``verify_labels`` the LP verdict is cross-checked against moment labels
    at 200 sampled points near the generators; a feasible verdict whose
    opposing-gravity moment contradicts a label raises AssertionError.
    """
    need = -gravity
    ok = positive_span_feasible(cone.generators, need)
    if verify_labels and ok:
        rng = np.random.default_rng(0) if rng is None else rng
        pts = _sample_points_near(cone, rng, 200)
        for p in pts:
            lab = moment_label(p, cone)
            m = need.moment_about(p) / max(1.0, abs(need.fx) + abs(need.fz))
            if label_contradicts(lab, m):
                raise AssertionError(f"label {lab} at {p} contradicts balance")
    return ok


def _sample_points_near(cone: WrenchCone, rng, n: int) -> list[Vec2]:
    # anchor points on each generator's line of action, then scatter around them
    anchors = []
    for g in cone.generators:
        f = g.force
        ff = f.dot(f)
        if ff > 0:
            # foot of the perpendicular from the origin to the line of action
            anchors.append(Vec2(g.tau * f.z / ff, -g.tau * f.x / ff))
    if not anchors:
        anchors = [Vec2(0.0, 0.0)]
    lo = np.min([[a.x, a.z] for a in anchors], axis=0) - 0.5
    hi = np.max([[a.x, a.z] for a in anchors], axis=0) + 0.5
    xy = rng.uniform(lo, hi, size=(n, 2))
    return [Vec2(float(x), float(z)) for x, z in xy]


def rotation_margins(point: Vec2, contacts) -> list[float]:
    """sigma_i: normal velocity at contact i per unit CCW rotation about ``point``."""
    return [(c.position - point).perp().dot(c.normal) for c in contacts]


def reuleaux_label(point: Vec2, contacts, eps: float = 1e-12) -> RotationLabel:
    s = rotation_margins(point, contacts)
    return RotationLabel(all(v >= -eps for v in s), all(v <= eps for v in s))


def cw_center_margin(contacts) -> float:
    """Largest r such that a disc of radius r (capped at 1) fits in {sigma_i <= 0}.

    sigma_i(q) = cross(p_i, n_i) - cross(q, n_i) is affine in q with unit gradient,
    so the LP value is a true Euclidean inset distance.
    """
    cs = list(contacts)
    m = len(cs)
    # variables: qx+, qx-, qz+, qz-, s, slack_1..m, slack_s
    n_var = 5 + m + 1
    A = np.zeros((m + 1, n_var))
    b = np.zeros(m + 1)
    for i, c in enumerate(cs):
        nx, nz = c.normal.x, c.normal.z
        # -cross(q, n) = -(qx nz - qz nx)
        A[i, 0], A[i, 1] = -nz, nz
        A[i, 2], A[i, 3] = nx, -nx
        A[i, 4] = 1.0
        A[i, 5 + i] = 1.0
        b[i] = -c.position.cross(c.normal)
    A[m, 4] = 1.0
    A[m, -1] = 1.0
    b[m] = 1.0
    cost = np.zeros(n_var)
    cost[4] = -1.0
    res = solve_lp(cost, A, b)
    if res.status != "optimal":
        return -math.inf
    return float(res.x[4])


def ungrasp_cw_feasible(contacts) -> bool:
    """Can the object start rotating clockwise about some center without penetration?"""
    return cw_center_margin(contacts) > INTERIOR_TOL


def palm_normal_from_angle(phi: float, reference: Vec2) -> Vec2:
    """Unit normal of a straight palm at angle ``phi``, oriented like ``reference``."""
    n = Vec2(-math.sin(phi), math.cos(phi))
    return n if n.dot(reference) >= 0 else -n


def with_palm_angle(contacts: ContactSet, phi: float) -> ContactSet:
    return contacts.with_C_normal(palm_normal_from_angle(phi, contacts.C.normal))


def critical_point(A: ContactPoint, B: ContactPoint) -> Vec2:
    q = line_line_intersect(Line2(A.position, A.normal), Line2(B.position, B.normal))
    if q is None:
        raise ParallelNormals("normal lines at A and B are parallel")
    return q


def critical_palm_angle(A: ContactPoint, B: ContactPoint, c_pos: Vec2) -> float:
    """Palm angle in [0, pi) making the three contact normals concurrent."""
    q = critical_point(A, B)
    n = q - c_pos
    if n.norm() < EPS_GEOM:
        raise ParallelNormals("C coincides with the A/B normal intersection")
    d = n.normalized().perp()
    phi = math.atan2(d.z, d.x) % math.pi
    return 0.0 if math.isclose(phi, math.pi) else phi


def concurrency_residual(contacts, point: Vec2) -> float:
    return max(Line2(c.position, c.normal).distance(point) for c in contacts)
