#!/usr/bin/env python3
"""Time the numba and numpy kernel paths against each other.

Runs the Lorentzian-mixture PSD kernel and the telegraph accumulation
kernel over a range of problem sizes and prints a timing table plus the
speedup.  Also asserts that both backends produce bit-identical output.

Usage: python benchmarks/kernel_benchmark.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from patchnoise import kernels


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_lorentzian(repeats: int) -> None:
    print("\nlorentzian_mixture_psd (n fluctuators x 30 frequencies)")
    print(f"{'n':>10} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    rng = np.random.default_rng(0)
    omega = 2 * np.pi * np.geomspace(1e5, 1e7, 30)
    for n in (1_000, 10_000, 100_000, 1_000_000):
        tau = 10.0 ** rng.uniform(-9, 2, n)
        amp_sq = rng.uniform(0.5, 2.0, n)
        ref = kernels.lorentzian_mixture_psd_numpy(tau, amp_sq, omega)
        t_np = _time(lambda: kernels.lorentzian_mixture_psd_numpy(tau, amp_sq, omega),
                     repeats)
        if hasattr(kernels, "lorentzian_mixture_psd_numba"):
            kernels.lorentzian_mixture_psd_numba(tau, amp_sq, omega)  # warm
            t_nb = _time(lambda: kernels.lorentzian_mixture_psd_numba(tau, amp_sq, omega),
                         repeats)
            assert np.array_equal(ref, kernels.lorentzian_mixture_psd_numba(tau, amp_sq, omega)), \
                "backends disagree"
            print(f"{n:>10} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} {t_np / t_nb:>8.1f}x")
        else:
            print(f"{n:>10} {t_np * 1e3:>12.3f} {'-':>12} {'-':>9}")


def bench_telegraph(repeats: int) -> None:
    print("\ntelegraph_accumulate (grid samples, ~4000 flips)")
    print(f"{'samples':>10} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    rng = np.random.default_rng(1)
    for n in (10_000, 100_000, 1_000_000):
        grid = np.arange(n) / 5e4
        flips = np.sort(rng.uniform(0, grid[-1], 4000))

        def run(impl):
            out = np.zeros(n)
            impl(out, grid, flips, 1.37, -1.0)
            return out

        ref = run(kernels.telegraph_accumulate_numpy)
        t_np = _time(lambda: run(kernels.telegraph_accumulate_numpy), repeats)
        if hasattr(kernels, "telegraph_accumulate_numba"):
            run(kernels.telegraph_accumulate_numba)  # warm
            t_nb = _time(lambda: run(kernels.telegraph_accumulate_numba), repeats)
            assert np.array_equal(ref, run(kernels.telegraph_accumulate_numba)), \
                "backends disagree"
            print(f"{n:>10} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} {t_np / t_nb:>8.1f}x")
        else:
            print(f"{n:>10} {t_np * 1e3:>12.3f} {'-':>12} {'-':>9}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    print(f"active backend: {kernels.active_backend()}")
    bench_lorentzian(args.repeats)
    bench_telegraph(args.repeats)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
