import math

import numpy as np
import pytest

from oracles import halfplane_interior_enum, random_scene
from tiltgrasp.closure import (
    Wrench,
    WrenchCone,
    positive_span_feasible,
)
from tiltgrasp.errors import DegenerateEdgeImages, ParallelNormals
from tiltgrasp.geom2d import Line2, Vec2
from tiltgrasp.mobility import (
    EdgeOrdering,
    MomentLabel,
    TiltMode,
    b_prime_points,
    classify,
    concurrency_residual,
    critical_palm_angle,
    critical_point,
    cw_center_margin,
    gravity_balance_consistent,
    label_contradicts,
    moment_label,
    reuleaux_label,
    sliding_generators,
    tilt_mode,
    ungrasp_cw_feasible,
    with_palm_angle,
)
from tiltgrasp.scene import (
    REFERENCE_OBJECT,
    Configuration,
    ContactPoint,
    PalmModel,
    SupportPair,
    TrapezoidObject,
    contacts_from_config,
    gravity_wrench,
    object_pose_from_theta,
)

RECT = REFERENCE_OBJECT


def scene(psi_deg=90.0, mu_b=0.1, mu_c=0.2, theta_deg=0.0, delta=0.05, obj=RECT):
    sup = SupportPair(math.radians(psi_deg), 0.1, mu_b)
    palm = PalmModel(mu_C=mu_c)
    cfg = Configuration(math.radians(theta_deg), delta)
    cs = contacts_from_config(obj, sup, palm, cfg)
    g = gravity_wrench(obj, object_pose_from_theta(obj, sup, cfg.theta))
    return cs, g


def xz(v):
    return (v.x, v.z)


# --- edge images -----------------------------------------------------------

def test_images_wall90():
    cs, _ = scene()
    imgs = b_prime_points(cs.B, cs.edge_line)
    # rays (1, +-0.1) from (0, 0.1) reach x = 0.3 at z = 0.1 +- 0.03
    assert xz(imgs.b1) == pytest.approx((0.3, 0.13))
    assert xz(imgs.b2) == pytest.approx((0.3, 0.07))
    assert imgs.edge_params == pytest.approx((0.13, 0.07))


def test_images_frictionless_coincide():
    cs, _ = scene(mu_b=0.0)
    imgs = b_prime_points(cs.B, cs.edge_line)
    assert xz(imgs.b1) == pytest.approx((0.3, 0.1)) and xz(imgs.b2) == pytest.approx((0.3, 0.1))


def test_images_wall61():
    cs, _ = scene(psi_deg=61)
    imgs = b_prime_points(cs.B, cs.edge_line)
    psi = math.radians(61)
    n = np.array([math.sin(psi), -math.cos(psi)])
    t = np.array([-n[1], n[0]])
    bx, bz = 0.1 / math.tan(psi), 0.1
    ex = bx + 0.3
    expect = sorted(
        (bz + (n + s * 0.1 * t)[1] * (0.3 / (n + s * 0.1 * t)[0]) for s in (1, -1)), reverse=True
    )
    assert imgs.b1.x == pytest.approx(ex) and imgs.b2.x == pytest.approx(ex)
    assert (imgs.b1.z, imgs.b2.z) == pytest.approx(tuple(expect), abs=1e-12)
    assert (imgs.b1.z, imgs.b2.z) == pytest.approx((-0.029, -0.108), abs=5e-4)


def test_images_order_random():
    rng = np.random.default_rng(4)
    for _ in range(300):
        r = random_scene(rng)
        if r is None:
            continue
        cs = r[-1]
        imgs = b_prime_points(cs.B, cs.edge_line)
        s1, s2 = imgs.edge_params
        if s1 is not None and s2 is not None:
            assert s1 >= s2


def test_images_absent_when_rays_miss():
    B = ContactPoint(Vec2(0, 0), Vec2(-1, 0), 0.1)
    imgs = b_prime_points(B, Line2(Vec2(1, 0), Vec2(0, 1)))
    assert imgs.b1 is None and imgs.b2 is None


# --- tilt modes ------------------------------------------------------------

def test_mode_wedge():
    cs, g = scene(delta=0.08)
    rep = classify(cs, g)
    assert rep.ordering is EdgeOrdering.B1_C_B2
    assert rep.mode is TiltMode.TwoContactWedge


def test_mode_below_images():
    cs, g = scene(delta=0.05)
    rep = classify(cs, g)
    assert rep.ordering is EdgeOrdering.B1_B2_C
    expected = positive_span_feasible(sliding_generators(cs, sticky_c=True).generators, -g)
    assert expected is True
    assert rep.mode is TiltMode.StickyRequired


def test_mode_three_contact_wall61():
    cs, g = scene(psi_deg=61, delta=0.05)
    rep = classify(cs, g)
    assert rep.ordering is EdgeOrdering.C_B1_B2
    assert rep.mode is TiltMode.ThreeContactSlide


def test_mode_degenerate_images():
    cs, g = scene()
    B = ContactPoint(cs.B.position, Vec2(-1, 0), 0.1, cs.B.tangent_slip)
    from tiltgrasp.scene import ContactSet

    with pytest.raises(DegenerateEdgeImages):
        tilt_mode(ContactSet(cs.A, B, cs.C, cs.edge_line), g)


def test_mode_boundary_flagged():
    cs, g = scene(delta=0.07)
    rep = classify(cs, g)
    assert rep.boundary_adjacent
    assert rep.ordering is EdgeOrdering.B1_C_B2


def test_mode_consistency_random():
    rng = np.random.default_rng(31)
    n = 0
    while n < 300:
        r = random_scene(rng)
        if r is None:
            continue
        obj, sup, palm, cfg, cs = r
        g = gravity_wrench(obj, object_pose_from_theta(obj, sup, cfg.theta))
        try:
            mode = tilt_mode(cs, g)
        except DegenerateEdgeImages:
            continue
        n += 1
        slide = positive_span_feasible(sliding_generators(cs).generators, -g)
        sticky = positive_span_feasible(sliding_generators(cs, sticky_c=True).generators, -g)
        if mode is TiltMode.ThreeContactSlide:
            assert slide
        if mode is TiltMode.StickyRequired:
            assert not slide and sticky


def ordering_measure(width, h=0.1, n=400):
    """Edge-length share of C positions ordered {B'1 C B'2} or {C B'1 B'2} at theta = 0."""
    obj = TrapezoidObject(width, width, h)
    sup = SupportPair(math.radians(90), 0.1, 0.1)
    palm = PalmModel(mu_C=0.2)
    L = obj.side_length
    count = 0
    for d in np.linspace(0, L, n):
        cs = contacts_from_config(obj, sup, palm, Configuration(0.0, float(d)))
        rep = classify(cs, gravity_wrench(obj, object_pose_from_theta(obj, sup, 0.0)))
        count += rep.ordering in (EdgeOrdering.B1_C_B2, EdgeOrdering.C_B1_B2)
    return count / n * L


def test_slenderness_monotone():
    widths = [0.1, 0.2, 0.3, 0.45, 0.6]
    m = [ordering_measure(w) for w in widths]
    # at theta = 0: measure = min(h, mu_B * w), i.e. 0.1 w here
    assert m == pytest.approx([0.1 * w for w in widths], abs=0.1 / 399 + 1e-12)
    assert all(b >= a for a, b in zip(m, m[1:]))


# --- moment labels ---------------------------------------------------------

def test_moment_label_examples():
    cone = WrenchCone((Wrench.point_force(Vec2(0, 0), Vec2(0, 1)),))
    assert moment_label(Vec2(1, 0), cone) is MomentLabel.Minus
    assert moment_label(Vec2(-1, 0), cone) is MomentLabel.Plus
    assert moment_label(Vec2(0, 5), cone) is MomentLabel.PlusMinus


def test_gravity_balance_examples():
    cs, g = scene(psi_deg=61, delta=0.05)
    assert gravity_balance_consistent(sliding_generators(cs), g, verify_labels=True)
    cs, g = scene(delta=0.02)
    assert not gravity_balance_consistent(sliding_generators(cs), g, verify_labels=True)
    full = WrenchCone(tuple(Wrench(*(s * e)) for e in np.eye(3) for s in (1, -1)))
    assert gravity_balance_consistent(full, Wrench(0, -9.81, -1.4715), verify_labels=True)


def test_moment_labels_never_contradict_lp():
    rng = np.random.default_rng(17)
    trials = 0
    while trials < 1000:
        k = int(rng.integers(1, 5))
        gens = []
        for _ in range(k):
            p = Vec2(*rng.uniform(-1, 1, 2))
            gens.append(Wrench.point_force(p, Vec2.polar(rng.uniform(-math.pi, math.pi))))
        cone = WrenchCone(tuple(gens))
        w = sum((g * rng.uniform(0, 2) for g in gens), Wrench(0, 0, 0))
        if rng.random() < 0.5:
            w = Wrench(*rng.normal(size=3))
        trials += 1
        if not positive_span_feasible(cone.generators, w):
            continue
        for p in rng.uniform(-2, 2, size=(20, 2)):
            q = Vec2(*p)
            assert not label_contradicts(moment_label(q, cone), w.moment_about(q))


# --- Reuleaux --------------------------------------------------------------

def test_reuleaux_examples():
    c = [ContactPoint(Vec2(1, 0), Vec2(0, 1), 0.0)]
    lab = reuleaux_label(Vec2(0, 0), c)
    assert lab.ccw_allowed and not lab.cw_allowed
    lab = reuleaux_label(Vec2(2, 0), c)
    assert lab.cw_allowed and not lab.ccw_allowed
    lab = reuleaux_label(Vec2(1, 7), c)
    assert lab.cw_allowed and lab.ccw_allowed


def test_ungrasp_three_contacts():
    cs = [
        ContactPoint(Vec2(0, 0), Vec2(0, 1), 0.0),
        ContactPoint(Vec2(-1, 1), Vec2(1, 0), 0.0),
        ContactPoint(Vec2(1, 1), Vec2(-1, 0), 0.0),
    ]
    # q_x >= 0, q_z <= 1 and q_z >= 1: a ray, no interior
    assert halfplane_interior_enum(cs) is False
    assert ungrasp_cw_feasible(cs) is False


def test_ungrasp_matches_halfplane_oracle():
    rng = np.random.default_rng(2)
    agree = 0
    for _ in range(200):
        cs = [ContactPoint(Vec2(*rng.uniform(-1, 1, 2)), Vec2.polar(rng.uniform(-math.pi, math.pi)), 0.0)
              for _ in range(3)]
        margin = cw_center_margin(cs)
        if 0 < margin < 1e-4:
            continue
        assert ungrasp_cw_feasible(cs) == halfplane_interior_enum(cs)
        agree += 1
    assert agree > 150


# --- critical palm angle ---------------------------------------------------

def test_critical_angle_example():
    A = ContactPoint(Vec2(0.05, 0), Vec2(0, 1), 0.1)
    B = ContactPoint(Vec2(0, 0.1), Vec2(1, 0), 0.1)
    c = Vec2(0.3, 0.08)
    phi = critical_palm_angle(A, B, c)
    assert math.degrees(phi) == pytest.approx(math.degrees(math.atan2(-0.25, -0.02) % math.pi), abs=1e-9)
    assert math.degrees(phi) == pytest.approx(85.4, abs=0.05)
    n = Vec2(-math.sin(phi), math.cos(phi))
    assert Line2(c, n).distance(critical_point(A, B)) < 1e-12


def test_critical_angle_axis_aligned():
    A = ContactPoint(Vec2(0, -1), Vec2(0, 1), 0.1)
    B = ContactPoint(Vec2(-1, 0), Vec2(1, 0), 0.1)
    assert math.degrees(critical_palm_angle(A, B, Vec2(2, 0))) == pytest.approx(90.0)


def test_critical_angle_parallel():
    A = ContactPoint(Vec2(0, 0), Vec2(0, 1), 0.1)
    B = ContactPoint(Vec2(1, 0), Vec2(0, 1), 0.1)
    with pytest.raises(ParallelNormals):
        critical_palm_angle(A, B, Vec2(2, 1))


def reference_target():
    cs, _ = scene(theta_deg=60.0, delta=0.0)
    return cs


def test_concurrent_normals_no_ungrasp():
    cs = reference_target()
    phi = critical_palm_angle(cs.A, cs.B, cs.C.position)
    at = with_palm_angle(cs, phi)
    assert concurrency_residual(at, critical_point(cs.A, cs.B)) < 1e-9
    assert not ungrasp_cw_feasible(at)


def test_ungrasp_flips_once():
    cs = reference_target()
    phi = critical_palm_angle(cs.A, cs.B, cs.C.position)
    verdicts = [ungrasp_cw_feasible(with_palm_angle(cs, phi + math.radians(k / 10))) for k in range(-50, 51)]
    flips = [k for k in range(1, len(verdicts)) if verdicts[k] != verdicts[k - 1]]
    assert len(flips) == 1
    assert abs(flips[0] - 50) <= 1
    # independent check on both sides
    for k in (-20, 20):
        c = with_palm_angle(cs, phi + math.radians(k / 10))
        assert halfplane_interior_enum(list(c)) == verdicts[50 + k]
