"""Certified lower-bound witnesses from smooth annular bump functions.

A witness is a smooth nonnegative function vanishing at every node of the
rule: a sum of scaled bumps supported on annuli around cap-packing centers
whose caps contain no node.  Its normalised integral, integral / norm, is a
rigorous lower bound on the worst-case error.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, cos, pi, sin, sqrt

import numpy as np

from . import _backend
from .kernels import SpaceSpec, weight, weights_arr
from .pointset import Packing, PointSet, greedy_packing
from .specfun import angular_weight_const, dim_harmonics_arr, legendre_d_table

__all__ = [
    "FoolingWitness",
    "bump",
    "bump_scaled",
    "funk_hecke_coeffs",
    "build_witness",
]


@dataclass(frozen=True)
class FoolingWitness:
    packing: Packing  # the node-free centers actually used
    beta: float
    coeffs: np.ndarray  # Funk-Hecke coefficients of the scaled bump
    integral: float
    norm: float  # upper bound on the space norm of the witness function
    witness: float  # integral / norm
    valid: bool


def bump(u):
    """The standard smooth bump exp(1 - 1/(1-u^2)) on (-1,1), 0 outside."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out if out.ndim else float(out)


def _support(beta: float) -> tuple[float, float]:
    return cos(beta), cos(beta / 2.0)


def bump_scaled(beta: float, t):
    """Bump rescaled so its support in t is exactly [cos beta, cos(beta/2)]."""
    if not 0.0 < beta <= pi / 2.0:
        raise ValueError("beta must lie in (0, pi/2]")
    lo, hi = _support(beta)
    mid = 0.5 * (lo + hi)
    halfw = sin(3.0 * beta / 4.0) * sin(beta / 4.0)  # = (hi - lo)/2
    return bump((np.asarray(t, dtype=float) - mid) / halfw)


@lru_cache(maxsize=32)
def funk_hecke_coeffs(beta: float, d: int, L: int, quad_n: int = 0) -> np.ndarray:
    """Legendre coefficients a_l of the scaled bump, l = 0..L, so that
    bump_scaled(beta, <x,y>) = sum_l a_l Z(d,l) P_l^{(d)}(<x,y>).

    a_l carries the weight (1-t^2)^{d/2-1} and the surface-measure constant.
    Gauss-Legendre on the support interval, with node-count doubling until
    every coefficient is stable.  Deterministic in its arguments, hence
    memoized; callers must not mutate the returned array.
    """
    lo, hi = _support(beta)
    if quad_n <= 0:
        # enough nodes to resolve the oscillations of P_L on the support
        quad_n = max(96, int(ceil(L * beta / 3.0)))
    cd = angular_weight_const(d)

    def compute(n):
        x, w = np.polynomial.legendre.leggauss(n)
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        w = 0.5 * (hi - lo) * w
        f = bump_scaled(beta, t) * (1.0 - t * t) ** (d / 2.0 - 1.0) * w
        return cd * (legendre_d_table(d, L, t) @ f)

    coefs = compute(quad_n)
    for _ in range(6):
        refined = compute(2 * quad_n)
        err = np.abs(refined - coefs)
        if np.all(err <= 1e-10 * np.maximum(np.abs(refined), np.abs(coefs[0]))):
            refined.setflags(write=False)
            return refined
        quad_n *= 2
        coefs = refined
    raise RuntimeError("bump coefficient quadrature did not resolve")


@lru_cache(maxsize=64)
def laplacian_l2_bound(beta: float, d: int, k: int) -> float:
    """Upper bound on sum_l lambda_l^{2k} a_l^2 Z(d,l) for the scaled bump.

    Integrating a_l = c_d int phi P_l (1-t^2)^{d/2-1} dt by parts k times
    against the Sturm-Liouville form of P_l^{(d)} gives
        lambda_l^k a_l(phi) = a_l(T^k phi),  T f = -(1-t^2) f'' + d t f',
    and by Parseval the left-hand sum equals c_d ||T^k phi||^2 in the
    weighted L^2 norm on [-1, 1].  T^k phi is computed exactly: derivatives
    of the bump stay in the family P(u) (1-u^2)^{-m} exp(1 - 1/(1-u^2))
    with P polynomial.
    """
    from numpy.polynomial import polynomial as P

    lo, hi = _support(beta)
    mid, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
    one_minus_u2 = np.array([1.0, 0.0, -1.0])

    def deriv(num, m):
        # d/du [num(u) (1-u^2)^{-m} b(u)] in the same family, m -> m+2
        p = P.polymul(P.polyadd(P.polymul(P.polyder(num), one_minus_u2),
                                P.polymul(np.array([0.0, 2.0 * m]), num)),
                      one_minus_u2)
        return P.polysub(p, P.polymul(np.array([0.0, 2.0]), num)), m + 2

    t_poly = np.array([mid, h])
    one_minus_t2 = P.polysub(np.array([1.0]), P.polymul(t_poly, t_poly))
    num, m = np.array([1.0]), 0
    for _ in range(k):
        n1, m1 = deriv(num, m)
        n2, m2 = deriv(n1, m1)
        n1 = P.polymul(n1, P.polymul(one_minus_u2, one_minus_u2))  # to denom m2
        num = P.polyadd(P.polymul(one_minus_t2, n2) * (-1.0 / h**2),
                        P.polymul(t_poly, n1) * (d / h))
        m = m2
    x, w = np.polynomial.legendre.leggauss(800)
    u2 = 1.0 - x * x
    env = np.exp(1.0 - 1.0 / u2 - m * np.log(u2))  # (1-u^2)^{-m} bump(u)
    vals = (P.polyval(x, num) * env) ** 2
    tw = (1.0 - (mid + h * x) ** 2) ** (d / 2.0 - 1.0)
    integral = h * float(np.sum(w * vals * tw))
    return angular_weight_const(d) * integral * 1.1  # quadrature headroom


def _tail_factor(space, L: int, k: int) -> float:
    """max_{l > L} w_l / lambda_l^{2k}, attained at l = L + 1 because the
    weight exponent is below 2k for every supported space."""
    lam = (L + 1.0) * (L + space.d)
    return weight(space, L + 1) / lam ** (2 * k)


def _auto_degree(beta: float) -> int:
    # starting degree; build_witness doubles it until the norm truncation
    # remainder is provably small relative to the norm
    return max(200, int(ceil(60.0 / beta)))


def build_witness(X: PointSet, space: SpaceSpec, M: int, L: int = 0,
                  seed: int = 0, rem_tol: float = 1e-3) -> FoolingWitness:
    """Construct a fooling witness for the rule X and return the certified
    lower bound integral/norm.

    Packs 2M caps greedily, keeps those whose interior contains no node,
    sums one scaled bump per kept cap, and assembles the space norm from the
    bump coefficients and the center Gram sums.  A remainder covering the
    truncated coefficient tail is added to the norm (keeping the quotient a
    lower bound); the truncation degree is doubled until that remainder is
    below rem_tol relative to the norm, so it perturbs the witness by at
    most rem_tol/2.
    """
    pack = greedy_packing(X.d, 2 * M, max(20 * M, 64), seed)
    beta = pack.beta
    adaptive = L <= 0
    if adaptive:
        L = _auto_degree(beta)

    # keep caps with node-free interiors
    inner = pack.centers @ X.points.T  # (2M, N)
    keep = inner.max(axis=1) <= cos(beta)
    centers = pack.centers[keep]
    kept = centers.shape[0]
    if kept == 0:
        raise RuntimeError("no node-free cap in the packing")
    used = Packing(d=X.d, centers=centers, beta=beta)

    g = np.clip(centers @ centers.T, -1.0, 1.0).ravel()
    dd = X.d

    for _ in range(10):
        a = funk_hecke_coeffs(beta, dd, L)
        z = dim_harmonics_arr(dd, L)
        w = weights_arr(space, L)

        ones = np.ones(g.size)
        G = _backend.pair_series_sums(g, ones, dd, L)  # sum_{i,j} P_l(<y_i,y_j>)
        G = np.maximum(G, 0.0)

        norm_sq = float(np.sum(a * a * w * z * G))
        integral = kept * float(a[0])

        # truncation remainder: G_l <= kept^2 and, for any k,
        #   sum_{l>L} a_l^2 w_l Z_l
        #     <= max_{l>L} (w_l / lambda_l^{2k}) * sum_l lambda_l^{2k} a_l^2 Z_l,
        # with the second factor bounded by the L^2 norm of the k-fold zonal
        # Sturm-Liouville image of the bump; take the best k
        remainder = min(
            _tail_factor(space, L, k) * laplacian_l2_bound(beta, dd, k)
            for k in range(3, 9)
        ) * kept * kept
        if remainder <= rem_tol * norm_sq:
            break
        if not adaptive:
            raise RuntimeError(
                f"norm truncation remainder {remainder:.3e} not negligible "
                f"against norm^2 {norm_sq:.3e}; increase L"
            )
        L *= 2
    else:
        raise RuntimeError("witness norm remainder did not converge")
    norm = sqrt(norm_sq + remainder)

    # validity: direct evaluation of the witness at every node
    fvals = np.zeros(X.n)
    for c in centers:
        fvals += bump_scaled(beta, np.clip(X.points @ c, -1.0, 1.0))
    valid = bool(np.abs(fvals).max() <= 1e-12)

    return FoolingWitness(
        packing=used,
        beta=beta,
        coeffs=a,
        integral=integral,
        norm=norm,
        witness=integral / norm,
        valid=valid,
    )
