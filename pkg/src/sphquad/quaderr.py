"""Worst-case integration error: two independent computation paths, design
validation, certified per-degree lower bounds, and the Laplace-domain oracle.

For a rule with nodes x_i and weights w_i the squared worst-case error is the
Gram sum  sum_{i,j} w_i w_j Ktilde(<x_i, x_j>)  with the constant-free kernel.
The pairwise path evaluates the truncated kernel per pair (Clenshaw); the
moments path reorganises the same sum per degree and serves as its oracle.
"""

from dataclasses import dataclass
from math import lgamma, exp, log, sqrt

import numpy as np
from scipy.special import gammainc, gammaincc

from . import _backend
from .kernels import CoeffTable, SpaceSpec, build_coeffs, weights_arr
from .pointset import PointSet
from .specfun import dim_harmonics_arr, eigenvalue

__all__ = [
    "WceReport",
    "DesignReport",
    "Certificate",
    "gram_moment",
    "gram_moments_arr",
    "wce",
    "wce_moments",
    "validate_design",
    "lower_certificate",
    "wce_heat_oracle",
]


@dataclass(frozen=True)
class WceReport:
    space: SpaceSpec
    value: float
    value_sq: float
    L: int
    tail_bound_sq: float
    path: str  # pairwise-kernel | per-degree-moments | heat-oracle


@dataclass(frozen=True)
class DesignReport:
    t: int
    residuals: np.ndarray  # m_l for l = 1..t
    max_residual: float
    is_design: bool


@dataclass(frozen=True)
class Certificate:
    ell_star: int
    bound_sq: float


def _pair_sums(X: PointSet, L: int) -> np.ndarray:
    """s_l = sum_{i,j} w_i w_j P_l^{(d)}(<x_i,x_j>) for l = 0..L."""
    g = X.inner_matrix()
    wts = np.outer(X.weights, X.weights)
    return _backend.pair_series_sums(g, wts, X.d, L)


def gram_moments_arr(X: PointSet, L: int) -> np.ndarray:
    """m_l = Z(d,l) * s_l for l = 0..L."""
    return dim_harmonics_arr(X.d, L) * _pair_sums(X, L)


def gram_moment(X: PointSet, ell: int) -> float:
    return float(gram_moments_arr(X, ell)[ell])


def _tail_factor(X: PointSet) -> float:
    return float(np.abs(X.weights).sum() ** 2)


def _table(X: PointSet, space: SpaceSpec, L: int, tab: CoeffTable | None) -> CoeffTable:
    if tab is not None:
        if tab.space != space or tab.L != L or tab.include_constant:
            raise ValueError("supplied table does not match the requested space/L")
        return tab
    return build_coeffs(space, L, include_constant=False)


def wce(X: PointSet, space: SpaceSpec, L: int, tab: CoeffTable | None = None) -> WceReport:
    """Pairwise-kernel path: Clenshaw-evaluated truncated kernel per pair."""
    tab = _table(X, space, L, tab)
    g = X.inner_matrix()
    wts = np.outer(X.weights, X.weights)
    value_sq = _backend.zonal_weighted_sum(g, wts, tab.c, X.d)
    tail = _tail_factor(X) * tab.tail_at_one
    return WceReport(
        space=space,
        value=sqrt(max(value_sq, 0.0)),
        value_sq=value_sq,
        L=L,
        tail_bound_sq=tail,
        path="pairwise-kernel",
    )


def wce_moments(X: PointSet, space: SpaceSpec, L: int, tab: CoeffTable | None = None,
                moments: np.ndarray | None = None) -> WceReport:
    """Per-degree path: value_sq = sum_{l=1}^L m_l / w_l.

    Precomputed ``moments`` (from gram_moments_arr) may be reused across
    spaces; they depend only on the point set.
    """
    tab = _table(X, space, L, tab)
    if moments is None:
        moments = gram_moments_arr(X, L)
    w = weights_arr(space, L)
    value_sq = float(np.sum(moments[1 : L + 1] / w[1 : L + 1]))
    tail = _tail_factor(X) * tab.tail_at_one
    return WceReport(
        space=space,
        value=sqrt(max(value_sq, 0.0)),
        value_sq=value_sq,
        L=L,
        tail_bound_sq=tail,
        path="per-degree-moments",
    )


def validate_design(X: PointSet, t: int, tol: float | None = None) -> DesignReport:
    """Check the degree-wise moments m_l, l = 1..t, of an exact design."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if tol is None:
        tol = 1e-10 * X.n
    m = gram_moments_arr(X, t)[1:]
    mx = float(np.abs(m).max())
    return DesignReport(t=t, residuals=m, max_residual=mx, is_design=mx <= tol)


def lower_certificate(X: PointSet, space: SpaceSpec, L: int,
                      moments: np.ndarray | None = None) -> Certificate:
    """Largest single degree-wise term m_l / w_l; a rigorous lower bound on
    the squared worst-case error for positive-weight rules (every term of the
    degree-wise expansion is then nonnegative)."""
    if np.any(X.weights < 0):
        raise ValueError("certificate requires positive weights")
    if moments is None:
        moments = gram_moments_arr(X, L)
    terms = np.maximum(moments[1 : L + 1], 0.0) / weights_arr(space, L)[1 : L + 1]
    ell_star = int(np.argmax(terms)) + 1
    return Certificate(ell_star=ell_star, bound_sq=float(terms[ell_star - 1]))


def wce_heat_oracle(X: PointSet, space: SpaceSpec, L_heat: int = 4000,
                    rel_target: float = 1e-8) -> WceReport:
    """Sobolev worst-case error via the Laplace-domain heat representation.

    Builds h(t) = sum_{l=1}^{L_heat} exp(-lambda_l t) m_l and integrates
    (1/Gamma(s)) int_0^inf exp(-t) t^{s-1} h(t) dt by composite Gauss-Legendre
    panels on a geometric t-grid.  The truncated-domain remainders are bounded
    with incomplete-gamma tails and pushed below rel_target; panel counts are
    doubled until the value settles to 1e-9 relative.
    """
    if space.kind != "sobolev":
        raise ValueError("heat oracle is defined for Sobolev spaces only")
    s, d = space.s, space.d
    m = gram_moments_arr(X, L_heat)
    lam = np.array([eigenvalue(d, l) for l in range(L_heat + 1)], dtype=float)
    m1, lam1 = m[1:], lam[1:]
    m_abs = np.abs(m1)  # |h(t)| <= sum |m_l| e^{-lam t}, valid for signed weights

    # crude scale for relative targets
    scale = float(np.sum(m_abs / (1.0 + lam1) ** s))
    if scale <= 0:
        scale = 1e-300

    # lower cut: int_0^{t_min} e^-t t^{s-1} h dt <= sum_l m_l lam^-s g(s, lam t_min)
    t_min = 1e-4
    gs = exp(lgamma(s))
    for _ in range(80):
        rem_low = gs * float(np.sum(m_abs * lam1 ** (-s) * gammainc(s, lam1 * t_min)))
        if rem_low <= rel_target * scale:
            break
        t_min /= 4.0
    else:
        raise RuntimeError("lower-domain remainder target unreachable")

    # upper cut: h decreasing => remainder <= h(t_max) Gamma(s) Q(s, t_max)
    t_max = 40.0
    for _ in range(40):
        h_tmax = float(m_abs @ np.exp(-lam1 * t_max))
        if h_tmax * gs * gammaincc(s, t_max) <= rel_target * scale:
            break
        t_max *= 1.5
    else:
        raise RuntimeError("upper-domain remainder target unreachable")

    gl_x, gl_w = np.polynomial.legendre.leggauss(16)

    def integrate(n_panels: int) -> float:
        edges = np.geomspace(t_min, t_max, n_panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        tt = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
        ww = (half[:, None] * gl_w[None, :]).ravel()
        h = np.exp(-np.outer(tt, lam1)) @ m1
        f = np.exp(-tt) * tt ** (s - 1.0) * h
        return float(ww @ f) / gs

    n_panels = 64
    val = integrate(n_panels)
    for _ in range(8):
        n_panels *= 2
        new = integrate(n_panels)
        if abs(new - val) <= 1e-9 * (1.0 + abs(new)):
            val = new
            break
        val = new
    else:
        raise RuntimeError("Laplace-domain quadrature did not settle")

    tail = _tail_factor(X) * build_coeffs(space, max(L_heat, 3)).tail_at_one
    return WceReport(
        space=space,
        value=sqrt(max(val, 0.0)),
        value_sq=val,
        L=L_heat,
        tail_bound_sq=tail,
        path="heat-oracle",
    )
