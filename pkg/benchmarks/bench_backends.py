"""Micro-benchmark: numba hot kernels vs the pure-numpy fallback.

Run: python benchmarks/bench_backends.py [--size 2000000] [--repeats 5]

The numbers to watch are the fused expansion evaluations, which the JIT
runs without building the (centers x radii) temporaries the numpy path
needs.
"""

import argparse
import time

import numpy as np

from radial_rkhs.backends import numpy_backend

try:
    from radial_rkhs.backends import numba_backend
except ImportError:
    numba_backend = None


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=2_000_000,
                        help="radii per expansion evaluation")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--pairwise", type=int, default=600,
                        help="centers per side of the pairwise table")
    args = parser.parse_args()

    rng = np.random.default_rng(7)
    omega = float(4.0 * np.pi)
    ts = np.sort(rng.uniform(0.02, 0.98, args.pairwise))
    rs_small = np.sort(rng.uniform(0.02, 1.0, 4 * args.pairwise))
    centers = np.sort(rng.uniform(0.05, 0.95, 5))
    coeffs = rng.uniform(-2.0, 2.0, 5)
    csum = np.cumsum(coeffs)
    rs_big = np.sort(rng.uniform(1e-3, 1.0, args.size))

    cases = [
        ("pairwise_log_min", "pairwise_log_min", (ts, rs_small)),
        ("pairwise_power_min", "pairwise_power_min", (3.0, omega, ts, rs_small)),
        ("expansion_values_log", "expansion_values_log", (centers, coeffs, rs_big)),
        ("expansion_values_power", "expansion_values_power",
         (3.0, omega, centers, coeffs, rs_big)),
        ("expansion_derivs_log", "expansion_derivs_log", (centers, csum, rs_big)),
        ("expansion_derivs_power", "expansion_derivs_power",
         (3.0, omega, centers, csum, rs_big)),
    ]

    if numba_backend is None:
        print("numba unavailable; timing the numpy path only")
    else:
        for _, attr, case_args in cases:  # compile outside the timers
            getattr(numba_backend, attr)(*case_args)

    print(f"{'kernel':<24} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for label, attr, case_args in cases:
        t_np = best_of(getattr(numpy_backend, attr), case_args, args.repeats)
        if numba_backend is None:
            print(f"{label:<24} {t_np * 1e3:>8.2f}ms {'-':>10} {'-':>9}")
            continue
        t_nb = best_of(getattr(numba_backend, attr), case_args, args.repeats)
        print(f"{label:<24} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
              f"{t_np / t_nb:>8.2f}x")

        got_np = getattr(numpy_backend, attr)(*case_args)
        got_nb = getattr(numba_backend, attr)(*case_args)
        np.testing.assert_allclose(got_nb, got_np, rtol=1e-12, atol=1e-15)


if __name__ == "__main__":
    main()
