"""Three-term recurrence coefficients for normalised zonal polynomials.

The degree-l zonal polynomial on S^d (normalised to 1 at t=1) satisfies

    R_l(t) = a_l * t * R_{l-1}(t) + b_l * R_{l-2}(t),   R_0 = 1, R_1 = t,

with a_l = (2l+d-3)/(l+d-2) and b_l = -(l-1)/(l+d-2).  For d=2 this is the
classical Legendre recurrence.
"""

import numpy as np


def zonal_recur_coeffs(d: int, L: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient arrays a, b of length L+3 (index l used directly; a[0], a[1] unused)."""
    ell = np.arange(L + 3, dtype=float)
    denom = ell + d - 2
    denom[0] = 1.0  # unused slots, avoid 0/0
    a = (2.0 * ell + d - 3.0) / denom
    b = -(ell - 1.0) / denom
    return a, b


def zonal_deriv_factors(d: int, L: int) -> np.ndarray:
    """Factors g_l with R_l'(t) = g_l * R^{(d+2)}_{l-1}(t); g_l = l(l+d-1)/d."""
    ell = np.arange(L + 1, dtype=float)
    return ell * (ell + d - 1.0) / d
