"""Timing of the AGP inner loop versus problem size.

A run is one subproblem on the standard scene, linearized at the chirp
reference with epsilon = 0.5. The loop runs a fixed number of iterations
(``zeta = 0``) so every size does the same amount of work per iteration.
The eigenvalue shift is computed once beforehand and is not timed.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from cmradar import _backend
from cmradar.projection import region_from_similarity
from cmradar.reference import chirp_reference
from cmradar.scene import Clutter, Scene, psi
from cmradar.solver import build_subproblem

__all__ = ["standard_scene", "time_agp", "scaling_slope", "main"]


def standard_scene(num_tx: int = 4, num_samples: int = 16) -> Scene:
    return Scene(
        num_tx=num_tx,
        num_rx=8,
        num_samples=num_samples,
        target_angle=math.radians(15.0),
        target_power_ratio=10.0,
        clutters=tuple(Clutter(math.radians(a), 1000.0) for a in (-50.0, -10.0, 40.0)),
    )


def time_agp(num_tx: int, num_samples: int = 16, iterations: int = 300, backend: str | None = None,
             repeats: int = 5) -> float:
    """Best-of-``repeats`` wall time in seconds of ``iterations`` AGP iterations."""
    kernels = _backend.get(backend) if backend else _backend
    scene = standard_scene(num_tx, num_samples)
    t0 = chirp_reference(num_tx, num_samples).vector
    sub = build_subproblem(psi(t0, scene))
    region = region_from_similarity(t0, 0.5)
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        kernels.agp_loop(sub.psi, sub.lam, sub.tau, region.omega, region.delta, t0, 0.0, iterations, True)
        best = min(best, time.perf_counter() - start)
    return best


def scaling_slope(sizes, seconds) -> float:
    """Least-squares slope of log(seconds) against log(size)."""
    return float(np.polyfit(np.log(sizes), np.log(seconds), 1)[0])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Benchmark the AGP kernels across problem sizes.")
    parser.add_argument("--num-tx", type=int, nargs="+", default=[2, 4, 8, 16])
    parser.add_argument("--num-samples", type=int, default=16)
    parser.add_argument("--iterations", type=int, default=300)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--backends", nargs="+", default=["cython", "python"], choices=["cython", "python"])
    args = parser.parse_args(argv)

    sizes = [n * args.num_samples for n in args.num_tx]
    results = {}
    for name in args.backends:
        try:
            _backend.get(name)
        except ImportError:
            print(f"{name}: not available")
            continue
        results[name] = [time_agp(n, args.num_samples, args.iterations, name, args.repeats) for n in args.num_tx]

    print(f"{'N_T*N':>8}" + "".join(f"{name + ' ms/iter':>20}" for name in results))
    for i, size in enumerate(sizes):
        print(f"{size:>8}" + "".join(f"{1e3 * r[i] / args.iterations:>20.4f}" for r in results.values()))
    for name, secs in results.items():
        print(f"{name}: log-log slope {scaling_slope(sizes, secs):.2f}")
    if len(results) == 2:
        ratio = np.array(results["python"]) / np.array(results["cython"])
        print("python/cython speedup: " + ", ".join(f"{r:.1f}x" for r in ratio))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
