"""Benchmark the compiled kernel backend against the numpy fallback.

Times the three hot loops (forward pair sums, Clenshaw evaluation, Clenshaw
weighted reduction) on matched inputs and prints one table row per case.

Run:  python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from sphquad._recur import zonal_recur_coeffs

try:
    from sphquad import _kernels as cy
except ImportError:
    cy = None
from sphquad import _kernels_py as py


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if cy is None:
        print("compiled extension not built; only the numpy fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'case':<34}{'numpy':>10}{'cython':>10}{'speedup':>9}")
    for d in (2, 3):
        for n, L in ((1_000, 200), (10_000, 500), (100_000, 1000)):
            t = rng.uniform(-1.0, 1.0, n)
            wt = rng.uniform(0.5, 1.5, n)
            c = 1.0 / (1.0 + np.arange(L + 1.0)) ** 2
            a, b = zonal_recur_coeffs(d, L)
            for name, args, pyfn, cyfn in (
                ("pair_series_sums", (t, wt, a, b, L),
                 py.pair_series_sums, cy and cy.pair_series_sums),
                ("clenshaw_vals", (t, c, a, b),
                 py.clenshaw_vals, cy and cy.clenshaw_vals),
                ("clenshaw_weighted_sum", (t, wt, c, a, b),
                 py.clenshaw_weighted_sum, cy and cy.clenshaw_weighted_sum),
            ):
                tp = _time(pyfn, *args)
                label = f"{name} d={d} n={n} L={L}"
                if cyfn is None:
                    print(f"{label:<34}{tp * 1e3:9.2f}ms{'-':>10}{'-':>9}")
                    continue
                tc = _time(cyfn, *args)
                assert np.allclose(pyfn(*args), cyfn(*args), rtol=1e-12)
                print(f"{label:<34}{tp * 1e3:9.2f}ms{tc * 1e3:8.2f}ms"
                      f"{tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
