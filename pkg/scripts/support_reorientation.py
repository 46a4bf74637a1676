"""Tilt mode along the palm-side edge at theta = 0 for a vertical and a tilted wall.

    python3 scripts/support_reorientation.py --psi 90 61 --mu-c 0.2
"""
import argparse
import math
from collections import Counter

import numpy as np

from tiltgrasp.mobility import TiltMode, classify
from tiltgrasp.scene import (
    REFERENCE_OBJECT,
    Configuration,
    PalmModel,
    SupportPair,
    contacts_from_config,
    gravity_wrench,
    object_pose_from_theta,
)


def sweep(psi_deg, mu_c, n):
    obj = REFERENCE_OBJECT
    sup = SupportPair(math.radians(psi_deg), 0.1, 0.1)
    palm = PalmModel(mu_C=mu_c)
    g = gravity_wrench(obj, object_pose_from_theta(obj, sup, 0.0))
    deltas = np.linspace(0.0, obj.side_length, n)
    reports = [classify(contacts_from_config(obj, sup, palm, Configuration(0.0, float(d))), g) for d in deltas]
    return deltas, reports


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--psi", type=float, nargs="+", default=[90.0, 61.0])
    ap.add_argument("--mu-c", type=float, default=0.2)
    ap.add_argument("--n", type=int, default=200)
    args = ap.parse_args()
    for psi in args.psi:
        deltas, reports = sweep(psi, args.mu_c, args.n)
        s1, s2 = reports[0].images.edge_params
        print(f"psi={psi:g} deg  B' images at edge params {s1:.4f}, {s2:.4f}")
        for mode, k in sorted(Counter(r.mode.value for r in reports).items()):
            print(f"  {mode:18s} {k}")
        slide = [d for d, r in zip(deltas, reports) if r.mode is TiltMode.ThreeContactSlide]
        if slide:
            print(f"  ThreeContactSlide for delta in [{min(slide):.4f}, {max(slide):.4f}]")


if __name__ == "__main__":
    main()
