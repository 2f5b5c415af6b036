"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run as ``python benchmarks/bench_kernels.py``.  The same comparison can
be forced package-wide by setting ``IWQM_NO_NUMBA=1``, which makes
``iwqm.kernels`` select the fallback path.
"""

import time

import numpy as np

from iwqm import kernels


def _time(fn, *args, repeat=5):
    fn(*args)  # warmup / JIT compile
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    try:
        from numba import njit

        compiled = {
            "rk4_trajectory": njit(cache=True)(kernels._rk4_trajectory_loop),
            "eval_poly": njit(cache=True)(kernels._eval_poly_loop),
            "grid_observables": njit(cache=True)(kernels._grid_observables_loop),
        }
    except ImportError:
        compiled = None
        print("numba not importable; only the numpy fallback is timed")

    fallback = {
        "rk4_trajectory": kernels._rk4_trajectory_loop,
        "eval_poly": kernels._eval_poly_numpy,
        "grid_observables": kernels._grid_observables_numpy,
    }

    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=13) + 1j * rng.normal(size=13)
    xs = np.linspace(-10.0, 10.0, 200_001)
    psi = rng.normal(size=1 << 16) + 1j * rng.normal(size=1 << 16)
    grid = np.linspace(-40.0, 40.0, 1 << 16)
    dx = grid[1] - grid[0]
    workloads = {
        "rk4_trajectory": (1.0, 1.0, 1e-5, 200_000),
        "eval_poly": (coeffs, xs),
        "grid_observables": (psi, grid, dx),
    }

    print(f"package-selected path: {'numba' if kernels.NUMBA_ENABLED else 'numpy fallback'}")
    header = f"{'kernel':<18} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, args in workloads.items():
        numpy_ms = _time(fallback[name], *args) * 1e3
        if compiled is not None:
            numba_ms = _time(compiled[name], *args) * 1e3
            print(f"{name:<18} {numpy_ms:>12.3f} {numba_ms:>12.3f} {numpy_ms / numba_ms:>8.1f}x")
        else:
            print(f"{name:<18} {numpy_ms:>12.3f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
