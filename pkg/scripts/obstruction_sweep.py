#!/usr/bin/env python3
"""Sweep condition (*) over circle and moment-curve samples.

Each verdict is finite-sample evidence: a holding row suggests the extension
degree is at least d + 1, it does not prove it.

    python3 scripts/obstruction_sweep.py --jobs 4
"""

import argparse
import time
from dataclasses import replace

from socrep.config import ObstructionConfig
from socrep.obstruct import condition_star, moment_curve_points, rational_circle_points, witness_ok


def samples(cfg: ObstructionConfig):
    for count in cfg.circle_counts:
        yield f"circle[{count}]", rational_circle_points(count)
    for count in cfg.moment_counts:
        yield f"moment{cfg.moment_degree}[{count}]", moment_curve_points(cfg.moment_degree, count)


def run(cfg: ObstructionConfig) -> list[dict]:
    rows = []
    for name, S in samples(cfg):
        for d in cfg.ds:
            if d >= len(S.points):
                continue
            t0 = time.perf_counter()
            r = condition_star(S, d, jobs=cfg.jobs)
            rows.append({
                "sample": name,
                "d": d,
                "holds": r.holds,
                "witnesses_checked": sum(witness_ok(S, w) for w in r.witnesses),
                "failing_subset": r.failing_subset,
                "seconds": time.perf_counter() - t0,
            })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--moment-degree", type=int, default=ObstructionConfig.moment_degree)
    args = ap.parse_args()
    cfg = replace(ObstructionConfig(), jobs=args.jobs, moment_degree=args.moment_degree)

    print(f"{'sample':<14} {'d':>2} {'holds':>6} {'checked':>7} {'failing':>12} {'sec':>6}")
    for r in run(cfg):
        failing = "-" if r["failing_subset"] is None else str(list(r["failing_subset"]))
        print(f"{r['sample']:<14} {r['d']:>2} {str(r['holds']):>6} {r['witnesses_checked']:>7} {failing:>12} "
              f"{r['seconds']:>6.2f}")


if __name__ == "__main__":
    main()
