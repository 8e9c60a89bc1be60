#!/usr/bin/env python3
"""Resumable verification campaign over a q range, appending JSON lines.

Re-running with the same --out skips every q already recorded, so the full
2..10000 Descartes tier can be interrupted and continued.

    python scripts/run_campaign.py better --q 2..10000 --out runs/better.jsonl
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from functools import partial
from pathlib import Path

from vsmooth.cli import _better_task, _double_root_task, _lower_task, parse_q_range, run_campaign
from vsmooth.exact.better import DEFAULT_MAX_BITS, DEFAULT_START_BITS, PrecisionConfig


def done_qs(path: Path) -> set[int]:
    if not path.exists():
        return set()
    seen = set()
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                seen.add(json.loads(line)["q"])
            except (json.JSONDecodeError, KeyError):
                break  # a torn final line from an interrupted run
    return seen


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("check", choices=["lower", "better", "double-root"])
    ap.add_argument("--q", required=True, help="A..B")
    ap.add_argument("--out", required=True, type=Path)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--start-bits", type=int, default=DEFAULT_START_BITS)
    ap.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS)
    args = ap.parse_args(argv)

    if args.check == "lower":
        task = _lower_task
    elif args.check == "better":
        task = partial(_better_task, precision=PrecisionConfig(args.start_bits, args.max_bits))
    else:
        task = partial(_double_root_task, bits=max(args.start_bits, 256))

    skip = done_qs(args.out)
    todo = [q for q in parse_q_range(args.q) if q not in skip]
    print(f"{len(skip)} q already recorded, {len(todo)} to go", file=sys.stderr)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    bad = 0
    with args.out.open("a") as fh:
        for r in run_campaign(task, todo, args.jobs):
            fh.write(json.dumps(r.to_json(timings=True)) + "\n")
            fh.flush()
            if not r.ok:
                bad += 1
                print(f"q={r.q} {r.check.value}: {r.status.value} {r.evidence}", file=sys.stderr)
    print(f"done; {bad} non-verified reports", file=sys.stderr)
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
