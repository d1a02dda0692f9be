"""First-order optimization of point configurations on the sphere.

Three objectives: truncated-kernel energy (minimise), generalised sum of
distances (maximise), and the degree-wise design residual (minimise, used to
manufacture near-designs).  Projected gradient with backtracking line search;
points are retracted to the sphere by normalisation.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .kernels import CoeffTable, SpaceSpec, build_coeffs
from .pointset import PointSet
from .specfun import dim_harmonics_arr

__all__ = ["Objective", "OptResult", "objective_value", "gradient", "optimize"]


@dataclass(frozen=True)
class Objective:
    kind: str  # kernel-energy | distance-sum | design-residual
    space: SpaceSpec | None = None
    L: int = 0
    alpha: float = 0.0
    t: int = 0

    def __post_init__(self):
        if self.kind == "kernel-energy":
            if self.space is None or self.L < 1:
                raise ValueError("kernel energy needs a space and L >= 1")
        elif self.kind == "distance-sum":
            if not 0.0 < self.alpha < 2.0:
                raise ValueError("distance exponent must lie in (0, 2)")
        elif self.kind == "design-residual":
            if self.t < 1:
                raise ValueError("design residual needs t >= 1")
        else:
            raise ValueError(f"unknown objective kind {self.kind!r}")

    @property
    def sense(self) -> int:
        """+1 maximise, -1 minimise."""
        return 1 if self.kind == "distance-sum" else -1

    def _table(self) -> CoeffTable:
        return build_coeffs(self.space, self.L, include_constant=False)


def kernel_energy(space: SpaceSpec, L: int) -> Objective:
    return Objective(kind="kernel-energy", space=space, L=L)


def distance_sum(alpha: float) -> Objective:
    return Objective(kind="distance-sum", alpha=alpha)


def design_residual(t: int) -> Objective:
    return Objective(kind="design-residual", t=t)


@dataclass
class OptResult:
    points: PointSet
    objective_trace: list = field(default_factory=list)
    converged: bool = False
    iterations: int = 0


def _residual_coeffs(d: int, t: int, n: int) -> np.ndarray:
    """Series coefficients of sum_{l=1}^t m_l as a zonal pair functional."""
    c = dim_harmonics_arr(d, t) / n**2
    c[0] = 0.0
    return c


def _value(pts: np.ndarray, d: int, obj: Objective, tab: CoeffTable | None) -> float:
    n = pts.shape[0]
    if obj.kind == "distance-sum":
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt(np.maximum(np.einsum("ijk,ijk->ij", diff, diff), 0.0))
        return float(np.sum(dist**obj.alpha))
    g = np.clip(pts @ pts.T, -1.0, 1.0)
    if obj.kind == "kernel-energy":
        return _backend.zonal_weighted_sum(g, np.ones(g.size), tab.c, d)
    c = _residual_coeffs(d, obj.t, n)
    return float(_backend.pair_series_sums(g, np.ones(g.size), d, obj.t) @ c)


def objective_value(X: PointSet, obj: Objective) -> float:
    tab = obj._table() if obj.kind == "kernel-energy" else None
    return _value(X.points, X.d, obj, tab)


def _euclid_grad(pts: np.ndarray, d: int, obj: Objective, tab: CoeffTable | None) -> np.ndarray:
    n = pts.shape[0]
    if obj.kind == "distance-sum":
        diff = pts[:, None, :] - pts[None, :, :]
        dist2 = np.einsum("ijk,ijk->ij", diff, diff)
        if obj.alpha < 1.0 and np.any((dist2 < 1e-24) & ~np.eye(n, dtype=bool)):
            raise FloatingPointError("coincident points: distance-sum gradient singular")
        with np.errstate(divide="ignore"):
            fac = np.where(dist2 > 0, dist2 ** (obj.alpha / 2.0 - 1.0), 0.0)
        return 2.0 * obj.alpha * np.einsum("ij,ijk->ik", fac, diff)
    g = np.clip(pts @ pts.T, -1.0, 1.0)
    c = tab.c if obj.kind == "kernel-energy" else _residual_coeffs(d, obj.t, n)
    dk = _backend.zonal_deriv_series(g, c, d)
    return 2.0 * dk @ pts


def _project(pts: np.ndarray, grad: np.ndarray) -> np.ndarray:
    return grad - (np.einsum("ik,ik->i", grad, pts))[:, None] * pts


def gradient(X: PointSet, obj: Objective) -> np.ndarray:
    """Riemannian gradient: Euclidean gradient projected onto tangent spaces."""
    tab = obj._table() if obj.kind == "kernel-energy" else None
    return _project(X.points, _euclid_grad(X.points, X.d, obj, tab))


def _retract(pts: np.ndarray) -> np.ndarray:
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def optimize(X0: PointSet, obj: Objective, max_iter: int = 1000, tol: float = 1e-12,
             seed: int = 0) -> OptResult:
    """Projected gradient with backtracking; deterministic for fixed inputs.

    Converged when the gradient norm falls below tol or the relative
    objective change stays below tol over 10 iterations.
    """
    if np.ptp(X0.weights) > 1e-12:
        raise ValueError("optimization assumes equal weights")
    tab = obj._table() if obj.kind == "kernel-energy" else None
    d, sense = X0.d, obj.sense
    pts = X0.points.copy()
    val = _value(pts, d, obj, tab)
    trace = [val]
    step = 0.1
    converged = False
    it = 0
    stall = 0
    while it < max_iter:
        it += 1
        grad = _project(pts, _euclid_grad(pts, d, obj, tab))
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= tol:
            converged = True
            break
        improved = False
        for _ in range(50):
            cand = _retract(pts + sense * step * grad)
            cval = _value(cand, d, obj, tab)
            if sense * (cval - val) > 0:
                improved = True
                break
            step *= 0.5
        if not improved:
            converged = True  # no ascent direction at line-search resolution
            break
        rel = abs(cval - val) / (1.0 + abs(val))
        pts, val = cand, cval
        trace.append(val)
        step *= 1.3
        stall = stall + 1 if rel <= tol else 0
        if stall >= 10:
            converged = True
            break
    X = PointSet(d=d, points=_retract(pts), weights=X0.weights.copy())
    return OptResult(points=X, objective_trace=trace, converged=converged, iterations=it)
