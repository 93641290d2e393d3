"""Benchmark the compiled kernels against the pure-Python fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N]

Times the three hot paths (day-long energy integration, oracle grid sweep,
scalar field evaluation) on both backends and prints the speedup. The two
backends are bit-identical by contract, so this is purely a speed story.
"""

import argparse
import statistics
import time

from sunwire import _ref

try:
    from sunwire import _core
except ImportError:
    _core = None

ENV = (0, 5.0, 21600.0, 64800.0, 0.07)
SHADOWS = (
    (4.0, 3.0, 1.0, 2e-4, 1.0),
    (11.0, 2.0, 0.8, 1.5e-4, 0.9),
)


def bench_integrate(mod):
    mod.integrate(ENV, SHADOWS, 8.0, 0.0, 0.0, 86400.0, 1.0, 0.25, 0.9,
                  8000.0, 16000.0)


def bench_sweep(mod):
    for hour in range(6, 18):
        mod.sweep_max(ENV, SHADOWS, 16.0, hour * 3600.0, 0.01)


def bench_power(mod):
    f = mod.available_power
    for i in range(20000):
        f(ENV, SHADOWS, (i % 160) * 0.1, 43200.0 + i)


CASES = [
    ("integrate 86400 steps", bench_integrate),
    ("sweep 12 x 1601 points", bench_sweep),
    ("power_at x 20000", bench_power),
]


def time_case(fn, mod, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(mod)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if _core is None:
        print("compiled kernel not built; only the pure-Python backend is available")

    header = f"{'case':<26} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, fn in CASES:
        t_ref = time_case(fn, _ref, args.repeat)
        if _core is not None:
            t_core = time_case(fn, _core, args.repeat)
            print(f"{name:<26} {t_ref * 1e3:>10.2f}ms {t_core * 1e3:>10.2f}ms "
                  f"{t_ref / t_core:>8.1f}x")
        else:
            print(f"{name:<26} {t_ref * 1e3:>10.2f}ms {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
