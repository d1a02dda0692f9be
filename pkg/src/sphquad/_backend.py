"""Backend selection: compiled extension if built, numpy fallback otherwise.

Set SPHQUAD_FORCE_PY=1 to force the pure-Python path (used by the benchmark
and the backend-agreement test).
"""

import os

import numpy as np

from ._recur import zonal_recur_coeffs, zonal_deriv_factors

if os.environ.get("SPHQUAD_FORCE_PY"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"


def backend_name() -> str:
    return BACKEND


def _flat(x):
    return np.ascontiguousarray(np.asarray(x, dtype=float).ravel())


def pair_series_sums(t, wt, d: int, L: int) -> np.ndarray:
    """s_l = sum_k wt_k P_l^{(d)}(t_k), l = 0..L (forward recurrence)."""
    a, b = zonal_recur_coeffs(d, L)
    return np.asarray(_impl.pair_series_sums(_flat(t), _flat(wt), a, b, L))


def zonal_series(t, coeffs, d: int):
    """sum_l coeffs_l P_l^{(d)}(t) elementwise, by Clenshaw recurrence."""
    t = np.asarray(t, dtype=float)
    c = _flat(coeffs)
    a, b = zonal_recur_coeffs(d, len(c) - 1)
    vals = np.asarray(_impl.clenshaw_vals(_flat(t), c, a, b))
    return vals.reshape(t.shape) if t.shape else float(vals[0])


def zonal_weighted_sum(t, wt, coeffs, d: int) -> float:
    """sum_k wt_k sum_l coeffs_l P_l^{(d)}(t_k) (Clenshaw per element)."""
    c = _flat(coeffs)
    a, b = zonal_recur_coeffs(d, len(c) - 1)
    return float(_impl.clenshaw_weighted_sum(_flat(t), _flat(wt), c, a, b))


def zonal_deriv_series(t, coeffs, d: int):
    """Derivative d/dt of sum_l coeffs_l P_l^{(d)}(t) elementwise.

    Uses P_l^{(d)}'(t) = (l(l+d-1)/d) P_{l-1}^{(d+2)}(t), so the derivative
    series is a zonal series in dimension d+2 with shifted coefficients.
    """
    c = _flat(coeffs)
    g = zonal_deriv_factors(d, len(c) - 1)
    if len(c) < 2:
        t = np.asarray(t, dtype=float)
        return np.zeros(t.shape) if t.shape else 0.0
    return zonal_series(t, c[1:] * g[1:], d + 2)
