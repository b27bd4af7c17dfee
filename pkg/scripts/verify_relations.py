#!/usr/bin/env python3
"""Verification battery for the braiding gate's defining relations.

Per dimension, over a seeded batch of random spectral angles, reports the
worst-case residuals of:

  ybe        the braid relation on three sites at independent angles,
  unitary    R(theta) R(theta)^dagger = I,
  weights    the weight-pair unitarity closure,
  feq        the multiplicative functional equation of the G weight,
  hecke      M^2 = (d-2) M + (d-1) I, exact in integer arithmetic,
  braid      the two-site braid consistency of M, also exact.

All of these should sit at numerical noise (1e-12 or below for the float
checks, exactly 0 for the integer ones).  Exit status 1 if any residual
exceeds its bound.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ybx import yang_baxter as yb

BOUNDS = {"ybe": 1e-10, "unitary": 1e-12, "weights": 1e-12, "feq": 1e-9}


def worst_residuals(d: int, trials: int, rng: np.random.Generator) -> dict[str, float]:
    hk = yb.HeckeConstants.for_dimension(d)
    worst = {"ybe": 0.0, "unitary": 0.0, "weights": 0.0, "feq": 0.0}
    thetas = rng.uniform(0.0, yb.TWO_PI, (trials, 2))
    for t1, t2 in thetas:
        worst["ybe"] = max(worst["ybe"], yb.ybe_residual(d, t1, t2))
        u1, u2 = yb.unitarity_residuals(d, t1)
        worst["unitary"] = max(worst["unitary"], u1, u2)

        wx = yb.weight_functions(d, t1)
        wy = yb.weight_functions(d, t2)
        wxy = yb.weight_functions(d, t1 + t2)
        wbar = yb.weight_functions(d, -t1)
        if not (wx.singular or wy.singular or wxy.singular or wbar.singular):
            feq = abs(wx.G + wy.G + hk.alpha * wx.G * wy.G
                      - (1.0 + hk.g * wx.G * wy.G) * wxy.G)
            closure = abs(wx.G + wbar.G + hk.alpha * wx.G * wbar.G)
            product = abs(wx.F * wbar.F * (1.0 + hk.beta * wx.G * wbar.G) - 1.0)
            worst["feq"] = max(worst["feq"], feq)
            worst["weights"] = max(worst["weights"], closure, product)
    return worst


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5, 6, 7, 8])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    header = f"{'d':>3} {'ybe':>10} {'unitary':>10} {'weights':>10} {'feq':>10} {'hecke':>6} {'braid':>6}"
    print(header)
    print("-" * len(header))
    ok = True
    for d in args.dims:
        w = worst_residuals(d, args.trials, rng)
        hecke = yb.hecke_quadratic_residual(d)
        braid = yb.braid_hecke_residual(d)
        row_ok = (hecke == 0 and braid == 0
                  and all(w[k] <= BOUNDS[k] for k in BOUNDS))
        ok = ok and row_ok
        mark = "" if row_ok else "   <-- OUT OF BOUND"
        print(f"{d:>3} {w['ybe']:>10.2e} {w['unitary']:>10.2e} "
              f"{w['weights']:>10.2e} {w['feq']:>10.2e} {hecke:>6d} {braid:>6d}{mark}")
    print("all residuals within bounds" if ok else "RESIDUAL OUT OF BOUND")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
