"""Function spaces on S^d and truncated reproducing-kernel coefficient tables.

Two families: classical Sobolev spaces with weight (1+lambda_l)^s, and the
log-weighted spaces with weight (1+lambda_l)^{d/2} (ln(3+lambda_l))^{2*gamma}.
Every table carries a rigorous bound on the discarded series tail, so kernel
values are enclosures rather than bare floats.
"""

from dataclasses import dataclass
from math import exp, lgamma

import numpy as np

from . import _backend
from .specfun import dim_harmonics_arr

__all__ = [
    "SpaceSpec",
    "CoeffTable",
    "KernelValue",
    "weight",
    "weights_arr",
    "build_coeffs",
    "kernel_eval",
    "tail_at_one",
]


@dataclass(frozen=True)
class SpaceSpec:
    """A function space on S^d: Sobolev(s) or log-weighted (gamma)."""

    d: int
    kind: str  # "sobolev" | "logsob"
    s: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("dimension d must be >= 2")
        if self.kind == "sobolev":
            if not self.s > self.d / 2:
                raise ValueError("Sobolev smoothness must exceed d/2")
        elif self.kind == "logsob":
            if not self.gamma > 0.5:
                raise ValueError("log-weight exponent must exceed 1/2")
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @classmethod
    def sobolev(cls, d: int, s: float) -> "SpaceSpec":
        return cls(d=d, kind="sobolev", s=s)

    @classmethod
    def log_sobolev(cls, d: int, gamma: float) -> "SpaceSpec":
        return cls(d=d, kind="logsob", gamma=gamma)

    def label(self) -> str:
        if self.kind == "sobolev":
            return f"sob:{self.s:g}"
        return f"log:{self.gamma:g}"


@dataclass(frozen=True)
class CoeffTable:
    space: SpaceSpec
    L: int
    c: np.ndarray  # c_l = Z(d,l) / w_l, l = 0..L (c_0 zeroed if constant-free)
    include_constant: bool
    tail_at_one: float


@dataclass(frozen=True)
class KernelValue:
    value: float
    tail_bound: float


def weights_arr(space: SpaceSpec, L: int) -> np.ndarray:
    """w_l for l = 0..L."""
    ell = np.arange(L + 1, dtype=float)
    lam = ell * (ell + space.d - 1)
    if space.kind == "sobolev":
        return (1.0 + lam) ** space.s
    return (1.0 + lam) ** (space.d / 2.0) * np.log(3.0 + lam) ** (2.0 * space.gamma)


def weight(space: SpaceSpec, ell: int) -> float:
    return float(weights_arr(space, ell)[ell])


def _coeff_ratio(space: SpaceSpec, ells: np.ndarray) -> np.ndarray:
    """Z(d,l)/w_l evaluated in log space for large l."""
    from scipy.special import gammaln

    d = space.d
    lam = ells * (ells + d - 1.0)
    logz = np.log(2 * ells + d - 1) + gammaln(ells + d - 1) - gammaln(d) - gammaln(ells + 1)
    logz = np.where(ells == 0, 0.0, logz)
    if space.kind == "sobolev":
        logw = space.s * np.log1p(lam)
    else:
        logw = (d / 2.0) * np.log1p(lam) + 2.0 * space.gamma * np.log(np.log(3.0 + lam))
    return np.exp(logz - logw)


def tail_at_one(space: SpaceSpec, L: int) -> float:
    """Rigorous upper bound on sum_{l>L} Z(d,l)/w_l.

    Uses the elementary majorant
        Z(d,l) = (2l+d-1) Gamma(l+d-1) / (Gamma(d) l!) <= A_L * l^{d-1}
    with A_L = (2 + (d-1)/L)(1 + (d-2)/L)^{d-2} / Gamma(d) for l > L, and
        (1+lambda_l)^{d/2} >= l^d,     ln(3+lambda_l) >= 2 ln l,
    so the summand is dominated by a decreasing integrable phi(l):
    phi(u) = u^{d-1-2s} for Sobolev and u^{-1} (2 ln u)^{-2 gamma} for the
    log spaces.  The sum over l > L is then at most the integral from L.
    """
    if L < 3:
        raise ValueError("tail bound needs L >= 3")
    d = space.d
    A = (2.0 + (d - 1.0) / L) * (1.0 + (d - 2.0) / L) ** (d - 2) / exp(lgamma(d))
    if space.kind == "sobolev":
        integral = L ** (d - 2.0 * space.s) / (2.0 * space.s - d)
    else:
        integral = (2.0 * np.log(L)) ** (1.0 - 2.0 * space.gamma) / (
            2.0 * (2.0 * space.gamma - 1.0)
        )
    return A * integral


def build_coeffs(space: SpaceSpec, L: int, include_constant: bool = False) -> CoeffTable:
    """Truncated coefficient table c_l = Z(d,l)/w_l with tail metadata."""
    if L < 1:
        raise ValueError("L must be >= 1")
    c = dim_harmonics_arr(space.d, L) / weights_arr(space, L)
    if not include_constant:
        c = c.copy()
        c[0] = 0.0
    tail = tail_at_one(space, max(L, 3))
    return CoeffTable(space=space, L=L, c=c, include_constant=include_constant, tail_at_one=tail)


def kernel_eval(tab: CoeffTable, t) -> KernelValue:
    """Truncated kernel value at inner product t, with the tail enclosure.

    Backward (Clenshaw) evaluation; the tail bound is valid for every t since
    |P_l^{(d)}(t)| <= 1.
    """
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1 + 1e-14):
        raise ValueError("inner product t must lie in [-1, 1]")
    val = _backend.zonal_series(np.clip(t, -1, 1), tab.c, tab.space.d)
    if np.ndim(val) == 0:
        return KernelValue(value=float(val), tail_bound=tab.tail_at_one)
    return KernelValue(value=val, tail_bound=tab.tail_at_one)
