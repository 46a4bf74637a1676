"""Closure maps of the reference scene for two palm friction coefficients.

Writes one CSV per mu_C plus an overlay SVG, and prints cell counts,
containment and wall time.

    python3 scripts/friction_maps.py --out out/maps --grid 100
"""
import argparse
import math
import time
from pathlib import Path

from tiltgrasp.cli import closure_csv
from tiltgrasp.planner import GridSpec, closure_map, map_containment
from tiltgrasp.scene import REFERENCE_OBJECT, REFERENCE_SUPPORTS, PalmModel
from tiltgrasp.svg import fmt


def overlay_svg(lo, hi, cell_px=4.0):
    """Cells closed only at the higher friction in light blue, closed at both in dark blue."""
    nt, nd = hi.cells.shape
    w, h = nt * cell_px, nd * cell_px
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(w)}" height="{fmt(h)}">',
           f'<rect width="{fmt(w)}" height="{fmt(h)}" fill="white" stroke="black"/>']
    for i in range(nt):
        for j in range(nd):
            colour = "#1f4e8c" if lo.cells[i, j] else "#9ec5ee" if hi.cells[i, j] else None
            if colour:
                out.append(f'<rect x="{fmt(i * cell_px)}" y="{fmt(h - (j + 1) * cell_px)}" '
                           f'width="{fmt(cell_px)}" height="{fmt(cell_px)}" fill="{colour}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out/maps")
    ap.add_argument("--grid", type=int, default=100)
    ap.add_argument("--theta-max-deg", type=float, default=60.0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    spec = GridSpec(math.radians(args.theta_max_deg), args.grid, args.grid)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    maps = {}
    t0 = time.perf_counter()
    for mu in (0.1, 0.2):
        maps[mu] = closure_map(REFERENCE_OBJECT, REFERENCE_SUPPORTS, PalmModel(mu_C=mu), spec, args.workers)
        (out / f"closure_map_mu{mu}.csv").write_text(closure_csv(maps[mu]))
    elapsed = time.perf_counter() - t0
    (out / "overlay.svg").write_text(overlay_svg(maps[0.1], maps[0.2]))
    for mu, m in maps.items():
        print(f"mu_C={mu}: {int(m.cells.sum())}/{m.cells.size} closed cells")
    print(f"mu_C=0.1 region inside mu_C=0.2 region: {map_containment(maps[0.1], maps[0.2])}")
    print(f"map time {elapsed:.2f} s, outputs in {out}")


if __name__ == "__main__":
    main()
