#!/usr/bin/env python3
"""Write the CSV data behind the three standard figures.

fig_root_half.csv       f, g, h and linear extrapolation for sqrt(w), delta = 0.1
fig_counterexample.csv  the same for the counterexample (eps=0.1, phi=0.01), delta = 1.11
fig_performance.csv     average relative performance of g and h for p = 0.01..0.99
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from vsmooth.cli import main as cli


RUNS = {
    "fig_root_half.csv": ["compare", "--function", "root:1/2", "--delta", "0.1", "--samples", "400"],
    "fig_counterexample.csv": ["compare", "--function", "counterexample:0.1,0.01", "--delta", "1.11", "--samples", "400"],
    "fig_performance.csv": ["perf", "--p-grid", "0.01:0.99:0.01"],
}


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description="CSV data for the standard figures")
    ap.add_argument("--outdir", type=Path, default=Path("figures"))
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, argv_ in RUNS.items():
        code = cli(argv_ + ["--out", str(args.outdir / name)])
        if code:
            return code
        print(args.outdir / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
