"""Time the compiled stepping kernel against the pure-Python fallback.

Both backends advance the same single-front field with the same bands;
the script reports wall time per backend, the speedup, and the max
disagreement (which must sit at rounding level, same check as the test
suite runs at 1e-12).

Usage: python3 scripts/benchmark_stepper.py [--m 2000] [--steps 2000]
"""

import argparse
import time

import numpy as np

from layerlab import pde, profile

try:
    from layerlab import _stepper
except ImportError:
    _stepper = None
from layerlab import _stepper_py

SCHEME_IDS = {"imex": 0, "cn": 1}


def problem(m, n_dim=2):
    grid = pde.RadialGrid(n_dim, 0.02 * m, m)
    lo, di, up, cv = pde.operator_bands(grid, far_field=1.0)
    u = profile.heteroclinic(grid.nodes - 0.5 * grid.r_max)
    return u, lo, di, up, cv


def run(impl, u, bands, dt, steps, scheme, repeats=3):
    best = np.inf
    out = None
    for _ in range(repeats):
        work = u.copy()
        started = time.perf_counter()
        impl.run_steps(work, *bands, dt, steps, 1.0, SCHEME_IDS[scheme])
        best = min(best, time.perf_counter() - started)
        out = work
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=2000, help="grid cells")
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--dt", type=float, default=1e-3)
    args = parser.parse_args()

    u, lo, di, up, cv = problem(args.m)
    bands = (lo, di, up, cv)
    cells = args.m * args.steps

    print(f"m={args.m} cells, {args.steps} steps, dt={args.dt}")
    for scheme in ("imex", "cn"):
        t_py, u_py = run(_stepper_py, u, bands, args.dt, args.steps, scheme)
        rate_py = cells / t_py / 1e6
        print(f"  {scheme:4s} python: {t_py:8.3f} s  ({rate_py:7.1f} Mcell-steps/s)")
        if _stepper is None:
            continue
        t_cy, u_cy = run(_stepper, u, bands, args.dt, args.steps, scheme)
        rate_cy = cells / t_cy / 1e6
        drift = float(np.max(np.abs(u_cy - u_py)))
        print(
            f"  {scheme:4s} cython: {t_cy:8.3f} s  ({rate_cy:7.1f} Mcell-steps/s)"
            f"  x{t_py / t_cy:.1f} speedup, max diff {drift:.2e}"
        )
        if drift > 1e-12:
            raise SystemExit(f"backends disagree: {drift:.3e}")
    if _stepper is None:
        print("  compiled extension not built; python numbers only")


if __name__ == "__main__":
    main()
