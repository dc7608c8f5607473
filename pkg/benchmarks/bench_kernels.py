"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run as ``python benchmarks/bench_kernels.py``. The same comparisons can
be forced onto the numpy path everywhere by setting
``MTSINE_DISABLE_NUMBA=1`` before importing mtsine; this script instead
calls both implementations directly and reports the speedup.
"""

import time

import numpy as np

from mtsine import _kernels

N = 2048
M = 2 * (N + 1) * 2  # the default estimation grid for N samples
REPEAT = 20


def best_of(fn, *args, repeat=REPEAT):
    out = fn(*args)  # warm-up (JIT compile on the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(N)
    y = np.fft.fft(x, M) * np.exp(-2j * np.pi * np.arange(M) / M)
    step = M // (2 * (N + 1))

    weights = np.full(64, 1.0 / (64 * 2.0 * (N + 1)))
    k_profile = rng.integers(8, 256, size=M)
    values = rng.standard_normal(M)
    half_bins = rng.integers(16, 400, size=M)
    innovations = rng.standard_normal(200_000)
    coeffs = np.array([0.605673, -0.9604])

    cases = [
        ("combine_shifts (K=64)",
         (_kernels.combine_shifts, y, weights, step),
         (_kernels.combine_shifts_np, y, weights, step)),
        ("variable_k_combine (uniform)",
         (_kernels.variable_k_combine, y, k_profile, step, N + 1.0, False),
         (_kernels.variable_k_combine_np, y, k_profile.astype(np.int64), step,
          N + 1.0, False)),
        ("variable_k_combine (parabolic)",
         (_kernels.variable_k_combine, y, k_profile, step, N + 1.0, True),
         (_kernels.variable_k_combine_np, y, k_profile.astype(np.int64), step,
          N + 1.0, True)),
        ("smooth_variable (parabolic)",
         (_kernels.smooth_variable, values, half_bins, 1),
         (_kernels.smooth_variable_np, values, half_bins.astype(np.int64), 1)),
        ("ar_recurse (200k samples)",
         (_kernels.ar_recurse, innovations, coeffs),
         (_kernels.ar_recurse_np, innovations, coeffs)),
    ]

    print(f"numba enabled: {_kernels.NUMBA_ENABLED}   "
          f"(grid m={M}, n={N}, best of {REPEAT})")
    print(f"{'kernel':34s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s} {'agree':>10s}")
    for name, fast_call, np_call in cases:
        t_np, out_np = best_of(np_call[0], *np_call[1:])
        if _kernels.NUMBA_ENABLED:
            t_nb, out_nb = best_of(fast_call[0], *fast_call[1:])
            dev = float(np.max(np.abs(out_nb - out_np)))
            scale = float(np.max(np.abs(out_np))) or 1.0
            print(f"{name:34s} {t_np*1e3:9.2f}ms {t_nb*1e3:9.2f}ms "
                  f"{t_np/t_nb:7.1f}x {dev/scale:9.1e}")
        else:
            print(f"{name:34s} {t_np*1e3:9.2f}ms {'-':>10s} {'-':>8s} {'-':>10s}")


if __name__ == "__main__":
    main()
