"""Independent checks used by the test-suite; none of these call the LP code."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from tiltgrasp.errors import NoValidPlacement
from tiltgrasp.scene import (
    Configuration,
    ContactPoint,
    PalmModel,
    SupportPair,
    TrapezoidObject,
    contacts_from_config,
)


def edge_generators(contacts) -> np.ndarray:
    """Rows (fx, fz, tau) of both friction-cone edges at each contact, built from scratch."""
    rows = []
    for c in contacts:
        n = np.array([c.normal.x, c.normal.z])
        t = np.array([-n[1], n[0]])
        for s in (1.0, -1.0):
            f = n + s * c.mu * t
            f = f / np.linalg.norm(f)
            p = (c.position.x, c.position.z)
            rows.append([f[0], f[1], p[0] * f[1] - p[1] * f[0]])
    return np.array(rows)


def sampled_directions(seed: int, n: int = 10_000) -> np.ndarray:
    d = np.random.default_rng(seed).normal(size=(n, 3))
    return d / np.linalg.norm(d, axis=1, keepdims=True)


def closure_by_sampling(gens: np.ndarray, dirs: np.ndarray) -> bool:
    """Closure implies every direction sees some generator with positive projection."""
    return bool(np.all((dirs @ gens.T).max(axis=1) > 0.0))


def pair_normal_directions(gens: np.ndarray) -> np.ndarray:
    """+-(g_i x g_j): the only candidates for extreme rays of the polar cone."""
    out = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        c = np.cross(gens[i], gens[j])
        nrm = np.linalg.norm(c)
        if nrm > 1e-12:
            out.extend([c / nrm, -c / nrm])
    return np.array(out).reshape(-1, 3)


def closure_by_directions(gens: np.ndarray, dirs: np.ndarray, tol: float = 1e-12) -> bool:
    """Seeded random directions plus the pairwise polar-cone candidates."""
    if not closure_by_sampling(gens, dirs):
        return False
    extra = pair_normal_directions(gens)
    if extra.size == 0:
        return False
    return bool(np.all((extra @ gens.T).max(axis=1) > tol))


def _solve3(M, b):
    # Cramer's rule in exact rationals
    M = [[Fraction(float(v)) for v in row] for row in M]
    b = [Fraction(float(v)) for v in b]

    def det(A):
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))

    D = det(M)
    if D == 0:
        return None
    out = []
    for k in range(3):
        Mk = [row[:] for row in M]
        for i in range(3):
            Mk[i][k] = b[i]
        out.append(det(Mk) / D)
    return out


def cone_membership_enum(gens: np.ndarray, target) -> bool:
    """Caratheodory enumeration: target in the cone iff some 3-subset (or smaller) holds it."""
    target = np.asarray(target, dtype=float)
    if not np.any(target):
        return True
    for idx in itertools.combinations(range(len(gens)), 3):
        sol = _solve3(gens[list(idx)].T, target)
        if sol is not None and all(v >= 0 for v in sol):
            return True
    # lower-dimensional cases: 1- and 2-subsets by least squares
    for r in (1, 2):
        for idx in itertools.combinations(range(len(gens)), r):
            A = gens[list(idx)].T
            k, *_ = np.linalg.lstsq(A, target, rcond=None)
            if np.all(k >= -1e-12) and np.linalg.norm(A @ k - target) < 1e-9 * max(1, np.linalg.norm(target)):
                return True
    return False


def random_scene(rng):
    """A random valid trapezoid scene and configuration, or None."""
    w_b = rng.uniform(0.1, 0.6)
    obj = TrapezoidObject(w_b, w_b + rng.uniform(0.0, 0.3), rng.uniform(0.05, 0.3), rng.uniform(0.2, 3.0))
    sup = SupportPair(math.radians(rng.uniform(45.0, 90.0)), rng.uniform(0, 0.5), rng.uniform(0, 0.5))
    palm = PalmModel(mu_C=rng.uniform(0, 0.5))
    cfg = Configuration(math.radians(rng.uniform(0, 60)), rng.uniform(0, obj.side_length))
    try:
        cs = contacts_from_config(obj, sup, palm, cfg)
    except NoValidPlacement:
        return None
    return obj, sup, palm, cfg, cs


def random_contact(rng, mu_max=0.5) -> ContactPoint:
    from tiltgrasp.geom2d import Vec2

    a = rng.uniform(-math.pi, math.pi)
    return ContactPoint(Vec2(*rng.uniform(-1, 1, 2)), Vec2(math.cos(a), math.sin(a)), rng.uniform(0, mu_max))


def halfplane_interior_enum(contacts, box: float = 50.0, n: int = 400) -> bool:
    """Grid search for a point strictly inside every {sigma_i <= 0} half-plane."""
    pts = []
    for c in contacts:
        pts.append((c.position.x, c.position.z, c.normal.x, c.normal.z))
    P = np.array(pts)
    # candidate points: pairwise line intersections nudged, plus a coarse grid
    cands = [np.array([x, z]) for x in np.linspace(-box, box, n) for z in np.linspace(-box, box, 3)]
    vertices = []
    for i, j in itertools.combinations(range(len(P)), 2):
        A = np.array([[P[i, 3], -P[i, 2]], [P[j, 3], -P[j, 2]]])
        b = np.array([P[i, 0] * P[i, 3] - P[i, 1] * P[i, 2], P[j, 0] * P[j, 3] - P[j, 1] * P[j, 2]])
        if abs(np.linalg.det(A)) > 1e-12:
            q = np.linalg.solve(A, b)
            vertices.append(q)
            for ang in np.linspace(0, 2 * math.pi, 72, endpoint=False):
                for r in (1e-6, 1e-4, 1e-2, 1.0):
                    cands.append(q + r * np.array([math.cos(ang), math.sin(ang)]))
    if len(vertices) >= 3:
        cands.append(np.mean(vertices, axis=0))
    for q in cands:
        # sigma_i(q) = cross(p_i - q, n_i)
        s = (P[:, 0] - q[0]) * P[:, 3] - (P[:, 1] - q[1]) * P[:, 2]
        if np.all(s < -1e-10):
            return True
    return False


def random_facing_pair(rng, mu_max=0.5):
    """Two contacts whose normals each point toward the other contact (a pinch, not an expansion)."""
    while True:
        B, C = random_contact(rng, mu_max), random_contact(rng, mu_max)
        bc = C.position - B.position
        if bc.norm() < 1e-3:
            continue
        if B.normal.dot(bc) >= 0 and C.normal.dot(-bc) >= 0:
            return B, C
