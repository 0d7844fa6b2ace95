"""Compare the jit kernels against the plain numpy reference.

Usage: python3 benchmarks/bench_kernels.py [--repeats 9] [--scale 1.0]

Times both implementations of every kernel on identically shaped inputs
and prints median wall time plus speedup.  The jit path is warmed up
first so compilation never lands in a measurement.
"""

import argparse
import statistics
import time

import numpy as np

from orbitloom import kernels


def timed(fn, args, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def build_cases(scale):
    rng = np.random.default_rng(2)

    n_eval = int(200_000 * scale)
    us = np.linspace(0.0, 6.283185307179586, n_eval)
    freqs = np.array([1.0, 6.0, -14.0, 3.5, 0.25, 9.0])
    amps = np.array([1.0, 1 / 3, 0.5, 0.2, 0.7, 0.05])
    phases = np.linspace(0.0, 3.0, 6)

    n_haus = int(2_000 * scale)
    cloud_a = rng.standard_normal((n_haus, 2))
    cloud_b = rng.standard_normal((n_haus, 2)) + 0.05

    n_rmf = int(50_000 * scale)
    t = np.linspace(0.0, 20.0, n_rmf)
    pts = np.stack([np.cos(t), np.sin(t), 0.1 * t], axis=1)
    tans = np.stack([-np.sin(t), np.cos(t), np.full_like(t, 0.1)], axis=1)
    tans /= np.linalg.norm(tans, axis=1)[:, None]
    r0 = np.array([0.0, 0.1, -1.0])
    r0 -= tans[0] * float(tans[0] @ r0)
    r0 /= np.linalg.norm(r0)

    n_close = int(6_000 * scale)
    spine = np.stack([np.cos(t), np.sin(t), 0.001 * t], axis=1)[:n_close]

    return [
        ("trig_eval", (us, freqs, amps, phases, 0.0, 0.0)),
        ("trig_velocity", (us, freqs, amps, phases)),
        ("directed_hausdorff", (cloud_a, cloud_b)),
        ("rmf_normals", (pts, tans, r0)),
        ("close_pair_count", (spine, 0.02, 8, False)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=9)
    parser.add_argument("--scale", type=float, default=1.0, help="input size factor")
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba is not importable; timing the numpy reference only")

    cases = build_cases(args.scale)

    # first call per jit kernel compiles; keep that out of the numbers
    for name, call_args in cases:
        if kernels.HAVE_NUMBA:
            kernels._JIT_IMPLS[name](*call_args)
        kernels._IMPLS[name](*call_args)

    header = f"{'kernel':<20} {'numpy':>12} {'numba':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call_args in cases:
        ref = timed(kernels._IMPLS[name], call_args, args.repeats)
        if kernels.HAVE_NUMBA:
            jit = timed(kernels._JIT_IMPLS[name], call_args, args.repeats)
            print(
                f"{name:<20} {ref * 1e3:>10.3f}ms {jit * 1e3:>10.3f}ms "
                f"{ref / jit:>8.1f}x"
            )
        else:
            print(f"{name:<20} {ref * 1e3:>10.3f}ms {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
