"""Pure-numpy implementations of the hot pairwise-sum kernels.

Same contracts as the compiled extension in ``_kernels.pyx``; selected at
import time by ``_backend`` when the extension is unavailable.
"""

import numpy as np


def pair_series_sums(t, wt, a, b, L):
    """Per-degree weighted sums s_l = sum_k wt_k R_l(t_k) for l = 0..L.

    Forward recurrence on the flattened array of inner products ``t``.
    """
    t = np.ascontiguousarray(t, dtype=float)
    wt = np.ascontiguousarray(wt, dtype=float)
    out = np.empty(L + 1)
    p_prev = np.ones_like(t)
    out[0] = wt.sum()
    if L == 0:
        return out
    p_cur = t.copy()
    out[1] = wt @ p_cur
    for ell in range(2, L + 1):
        p_prev, p_cur = p_cur, a[ell] * t * p_cur + b[ell] * p_prev
        out[ell] = wt @ p_cur
    return out


def clenshaw_vals(t, c, a, b):
    """Series values sum_l c_l R_l(t_k), backward (Clenshaw) recurrence."""
    t = np.ascontiguousarray(t, dtype=float)
    L = len(c) - 1
    u_next = np.zeros_like(t)
    u_cur = np.zeros_like(t)
    for ell in range(L, 0, -1):
        u_next, u_cur = u_cur, c[ell] + a[ell + 1] * t * u_cur + b[ell + 2] * u_next
    return c[0] + b[2] * u_next + t * u_cur


def clenshaw_weighted_sum(t, wt, c, a, b):
    """Scalar sum_k wt_k * (sum_l c_l R_l(t_k)) via Clenshaw per element."""
    return float(np.ascontiguousarray(wt, dtype=float) @ clenshaw_vals(t, c, a, b))
