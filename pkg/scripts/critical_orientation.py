"""Ungrasp feasibility as the palm angle sweeps through the critical orientation.

    python3 scripts/critical_orientation.py --theta-deg 60 --delta 0 --span 5 --step 0.1
"""
import argparse
import math

from tiltgrasp.mobility import (
    concurrency_residual,
    critical_palm_angle,
    critical_point,
    cw_center_margin,
    with_palm_angle,
)
from tiltgrasp.scene import REFERENCE_OBJECT, REFERENCE_PALM, REFERENCE_SUPPORTS, Configuration, contacts_from_config


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta-deg", type=float, default=60.0)
    ap.add_argument("--delta", type=float, default=0.0)
    ap.add_argument("--span", type=float, default=5.0, help="half-width of the sweep in degrees")
    ap.add_argument("--step", type=float, default=0.1)
    args = ap.parse_args()

    cfg = Configuration(math.radians(args.theta_deg), args.delta)
    cs = contacts_from_config(REFERENCE_OBJECT, REFERENCE_SUPPORTS, REFERENCE_PALM, cfg)
    phi = critical_palm_angle(cs.A, cs.B, cs.C.position)
    q = critical_point(cs.A, cs.B)
    print(f"critical palm angle {math.degrees(phi):.4f} deg, normals meet at ({q.x:.4f}, {q.z:.4f})")
    print(f"concurrency residual {concurrency_residual(with_palm_angle(cs, phi), q):.3e} m")
    k_max = round(args.span / args.step)
    prev = None
    for k in range(-k_max, k_max + 1):
        off = k * args.step
        margin = cw_center_margin(with_palm_angle(cs, phi + math.radians(off)))
        free = margin > 1e-9
        if free != prev:
            print(f"  offset {off:+6.2f} deg: clockwise ungrasp {'possible' if free else 'blocked'} "
                  f"(centre margin {margin:.3e})")
            prev = free


if __name__ == "__main__":
    main()
