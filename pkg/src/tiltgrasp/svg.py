"""Minimal deterministic SVG writers for closure maps and scene diagrams."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .closure import friction_cone
from .errors import ParallelNormals
from .geom2d import Vec2
from .mobility import b_prime_points, critical_point
from .planner import ClosureMap
from .scene import ContactSet, SupportPair

PX_PER_M = 500.0


def fmt(x: float) -> str:
    s = f"{round(x, 6):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def closure_map_svg(cmap: ClosureMap, cell_px: float = 4.0) -> str:
    """True cells as filled squares; theta grows right, delta grows up."""
    nt, nd = cmap.cells.shape
    w, h = nt * cell_px, nd * cell_px
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(w)}" height="{fmt(h)}" '
        f'viewBox="0 0 {fmt(w)} {fmt(h)}">',
        f'<rect x="0" y="0" width="{fmt(w)}" height="{fmt(h)}" fill="white" stroke="black"/>',
        f'<g id="closure" fill="#4a7ebb" data-mu-c="{fmt(cmap.mu_C)}">',
    ]
    for i in range(nt):
        for j in range(nd):
            if cmap.cells[i, j]:
                x = i * cell_px
                y = h - (j + 1) * cell_px
                out.append(f'<rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(cell_px)}" height="{fmt(cell_px)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


class _Canvas:
    def __init__(self, xmin: float, xmax: float, zmin: float, zmax: float):
        self.xmin, self.zmax = xmin, zmax
        self.width = (xmax - xmin) * PX_PER_M
        self.height = (zmax - zmin) * PX_PER_M

    def pt(self, p: Vec2) -> tuple[str, str]:
        return fmt((p.x - self.xmin) * PX_PER_M), fmt((self.zmax - p.z) * PX_PER_M)

    def line(self, a: Vec2, b: Vec2, **attrs) -> str:
        (x1, y1), (x2, y2) = self.pt(a), self.pt(b)
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{_attrs(attrs)}/>'

    def circle(self, c: Vec2, r_px: float, **attrs) -> str:
        x, y = self.pt(c)
        return f'<circle cx="{x}" cy="{y}" r="{fmt(r_px)}"{_attrs(attrs)}/>'

    def polygon(self, pts: list[Vec2], **attrs) -> str:
        coords = " ".join(",".join(self.pt(p)) for p in pts)
        return f'<polygon points="{coords}"{_attrs(attrs)}/>'

    def text(self, p: Vec2, s: str, **attrs) -> str:
        x, y = self.pt(p)
        return f'<text x="{x}" y="{y}"{_attrs(attrs)}>{escape(s)}</text>'


def _attrs(attrs: dict) -> str:
    return "".join(f' {k.rstrip("_").replace("_", "-")}="{v}"' for k, v in attrs.items())


def scene_svg(vertices: list[Vec2], contacts: ContactSet, supports: SupportPair, title: str = "") -> str:
    """Supports, object polygon, friction cones, B' images and contact normals."""
    xs = [v.x for v in vertices] + [0.0]
    zs = [v.z for v in vertices] + [0.0]
    span = max(max(xs) - min(xs), max(zs) - min(zs), 0.1)
    pad = 0.25 * span
    cv = _Canvas(min(xs) - pad, max(xs) + pad, min(zs) - pad, max(zs) + pad)
    origin = Vec2(0.0, 0.0)
    wall_len = (max(zs) + pad) / max(math.sin(supports.psi), 1e-6)
    cone_len = 0.3 * span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(cv.width)}" height="{fmt(cv.height)}" '
        f'viewBox="0 0 {fmt(cv.width)} {fmt(cv.height)}">',
        '<g id="supports" stroke="black" stroke-width="2">',
        cv.line(origin, Vec2(max(xs) + pad, 0.0), class_="support1"),
        cv.line(origin, supports.wall_direction * wall_len, class_="support2"),
        "</g>",
        '<g id="object" fill="#dddddd" stroke="black">',
        cv.polygon(list(vertices)),
        "</g>",
        '<g id="cones" stroke="#cc3333" fill="none">',
    ]
    for name, c in zip("ABC", contacts):
        for e in friction_cone(c).edges():
            out.append(cv.line(c.position, c.position + e * cone_len, class_=f"cone-{name}"))
    out.append("</g>")
    out.append('<g id="annotations" font-size="12">')
    for name, c in zip("ABC", contacts):
        out.append(cv.circle(c.position, 3, class_="contact", fill="black"))
        out.append(cv.text(c.position + Vec2(0.005, 0.005), name))
    if contacts.edge_line is not None:
        imgs = b_prime_points(contacts.B, contacts.edge_line)
        for label, p in (("B'1", imgs.b1), ("B'2", imgs.b2)):
            if p is not None:
                out.append(cv.circle(p, 2, class_="image", fill="#3333cc"))
                out.append(cv.text(p + Vec2(0.005, 0.0), label))
    try:
        q = critical_point(contacts.A, contacts.B)
    except ParallelNormals:
        q = None
    for c in contacts:
        far = c.position + c.normal * (2 * span)
        out.append(cv.line(c.position - c.normal * (2 * span), far, class_="normal",
                           stroke="#33aa33", stroke_dasharray="4,3"))
    if q is not None:
        out.append(cv.circle(q, 2, class_="critical-point", fill="#33aa33"))
    if title:
        out.append(cv.text(Vec2(cv.xmin + 0.01, cv.zmax - 0.02), title))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

