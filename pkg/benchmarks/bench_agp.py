"""Compare the compiled and numpy AGP kernels across problem sizes.

    python3 benchmarks/bench_agp.py --iterations 300
"""

from cmradar.benchmark import main

if __name__ == "__main__":
    raise SystemExit(main())
