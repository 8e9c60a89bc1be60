#!/usr/bin/env python3
"""Grid evidence for h <= g <= f when p is not of the form 1/q.

The exact certificates cover p = 1/q only; this sweep reports (does not
assert) the worst normalized violations for general p in (0, 1).
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from vsmooth.empirical import ORDER_RTOL, ordering_on_grid


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-min", type=float, default=0.01)
    ap.add_argument("--p-max", type=float, default=0.99)
    ap.add_argument("--p-count", type=int, default=99)
    ap.add_argument("--deltas", type=float, nargs="+", default=[0.1, 1.0, 10.0])
    ap.add_argument("--points", type=int, default=10001)
    args = ap.parse_args(argv)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["p", "delta", "worst_g_over_f", "worst_h_over_g", "slope_mismatch", "holds"])
    failures = 0
    for p in np.linspace(args.p_min, args.p_max, args.p_count):
        for delta in args.deltas:
            r = ordering_on_grid(float(p), delta, args.points)
            failures += not r.holds()
            w.writerow([repr(r.p), repr(delta), repr(r.worst_g_over_f), repr(r.worst_h_over_g),
                        repr(r.slope_mismatch), r.holds()])
    print(f"{failures} grid cells exceed rtol {ORDER_RTOL}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
