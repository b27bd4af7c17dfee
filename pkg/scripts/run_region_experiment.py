#!/usr/bin/env python3
"""Monte-Carlo coverage experiment for the entanglement-invariant region.

For each requested qudit dimension this draws two ensembles of size n:

  schmidt  invariants of random Schmidt spectra (uniform on the simplex),
           the reference cloud filling the admissible region, and
  yb       invariants of states produced by the braiding gate acting on a
           random product state, the cloud the gate family can reach.

Both clouds go to CSV, the d = 3 boundary contours go to CSV, and the
fraction of occupied reference bins also hit by the gate ensemble goes to
coverage.json.  Exit status is nonzero when any dimension misses its
coverage threshold.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ybx import generation

DEFAULT_THRESHOLDS = {3: 0.995, 4: 0.99}
DEFAULT_GRIDS = {3: 200, 4: 50}


def run_dimension(d: int, n: int, seed: int, workers: int | None, grid: int,
                  threshold: float, outdir: str) -> dict:
    t0 = time.perf_counter()
    schmidt = generation.sample_region(d, n, seed, "schmidt", workers)
    yb = generation.sample_region(d, n, seed, "yb", workers)
    schmidt.to_csv(os.path.join(outdir, "schmidt.csv"))
    yb.to_csv(os.path.join(outdir, "yb.csv"))
    report = generation.coverage_report(schmidt, yb, grid)
    record = {
        "d": d,
        "n": n,
        "seed": seed,
        "grid_resolution": report.grid_resolution,
        "bins_target": report.bins_target,
        "bins_covered": report.bins_covered,
        "coverage": report.coverage,
        "sample_counts": list(report.sample_counts),
        "threshold": threshold,
        "passed": bool(report.coverage >= threshold),
        "seconds": round(time.perf_counter() - t0, 3),
    }
    with open(os.path.join(outdir, "coverage.json"), "w") as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")
    return record


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=None,
                    help="parallel workers (default: YBX_WORKERS or 1); results are worker-independent")
    ap.add_argument("--outdir", default="results/region")
    ap.add_argument("--contour-steps", type=int, default=256)
    args = ap.parse_args(argv)

    failed = False
    for d in args.dims:
        outdir = os.path.join(args.outdir, f"d{d}")
        os.makedirs(outdir, exist_ok=True)
        grid = DEFAULT_GRIDS.get(d, 50)
        threshold = DEFAULT_THRESHOLDS.get(d, 0.99)
        rec = run_dimension(d, args.samples, args.seed, args.workers, grid,
                            threshold, outdir)
        verdict = "pass" if rec["passed"] else "FAIL"
        print(f"d={d}: coverage {rec['coverage']:.5f} "
              f"({rec['bins_covered']}/{rec['bins_target']} bins at grid {grid}), "
              f"threshold {threshold} -> {verdict}  [{rec['seconds']}s]")
        failed = failed or not rec["passed"]
        if d == 3:
            cpath = os.path.join(outdir, "contours.csv")
            generation.contours_to_csv(cpath, steps=args.contour_steps)
            print(f"d=3: boundary contours -> {cpath}")

    print(f"outputs under {args.outdir}/")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
