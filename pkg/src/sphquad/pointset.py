"""Point configurations on S^d: I/O, generators, and geometric diagnostics."""

from dataclasses import dataclass
from functools import lru_cache
from math import pi, sqrt

import numpy as np
from scipy.special import betainc

__all__ = [
    "PointSet",
    "SeparationReport",
    "PropertyRReport",
    "Packing",
    "PointFileError",
    "load_pointset",
    "save_pointset",
    "random_uniform",
    "spiral_points",
    "cap_area",
    "separation",
    "property_r",
    "greedy_packing",
]


class PointFileError(ValueError):
    """Malformed point file (carries the offending line number)."""


@dataclass(frozen=True)
class PointSet:
    d: int
    points: np.ndarray  # (N, d+1), unit rows
    weights: np.ndarray  # (N,), sums to 1

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.d + 1 or pts.shape[0] < 1:
            raise ValueError("points must be a nonempty (N, d+1) array")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("all points must be unit vectors (within 1e-12)")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 (within 1e-12)")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def inner_matrix(self) -> np.ndarray:
        g = self.points @ self.points.T
        return np.clip(g, -1.0, 1.0)


@dataclass(frozen=True)
class SeparationReport:
    min_distance: float
    min_angle: float
    separation_constant: float


@dataclass(frozen=True)
class PropertyRReport:
    t: int
    c1: float
    max_ratio: float


@dataclass(frozen=True)
class Packing:
    d: int
    centers: np.ndarray
    beta: float


def load_pointset(source, d: int) -> PointSet:
    """Parse a text point file: '#' comments, whitespace-separated decimals,
    d+1 coordinates per line with an optional trailing weight."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    if isinstance(text, bytes):
        text = text.decode()
    rows, wts, has_w = [], [], None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) == d + 1:
            w = None
        elif len(fields) == d + 2:
            w = fields[-1]
            fields = fields[:-1]
        else:
            raise PointFileError(
                f"line {lineno}: expected {d+1} or {d+2} fields, got {len(fields)}"
            )
        if has_w is None:
            has_w = w is not None
        elif has_w != (w is not None):
            raise PointFileError(f"line {lineno}: inconsistent weight column")
        try:
            vec = np.array([float(f) for f in fields])
            if w is not None:
                wts.append(float(w))
        except ValueError as exc:
            raise PointFileError(f"line {lineno}: {exc}") from None
        nrm = np.linalg.norm(vec)
        if abs(nrm - 1.0) > 1e-9:
            raise PointFileError(f"line {lineno}: vector norm {nrm:.12g} is not 1")
        rows.append(vec / nrm)
    if not rows:
        raise PointFileError("no data lines in point file")
    pts = np.array(rows)
    n = len(rows)
    if has_w:
        w = np.array(wts)
        if abs(w.sum() - 1.0) > 1e-9:
            raise PointFileError(f"weights sum to {w.sum():.12g}, expected 1")
        w = w / w.sum()
    else:
        w = np.full(n, 1.0 / n)
    return PointSet(d=d, points=pts, weights=w)


def save_pointset(X: PointSet, stream, weights: bool = True) -> None:
    for p, w in zip(X.points, X.weights):
        coords = " ".join(repr(float(v)) for v in p)
        stream.write(coords + (f" {float(w)!r}" if weights else "") + "\n")


def random_uniform(d: int, N: int, seed: int) -> PointSet:
    """N i.i.d. uniform points (normalised Gaussians), equal weights."""
    if N < 1:
        raise ValueError("N must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((N, d + 1))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return PointSet(d=d, points=pts, weights=np.full(N, 1.0 / N))


def spiral_points(N: int) -> PointSet:
    """Generalised-spiral nodes on S^2, equal weights."""
    if N < 2:
        raise ValueError("N must be >= 2")
    z = 1.0 - (2.0 * np.arange(1, N + 1) - 1.0) / N
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.zeros(N)
    for i in range(1, N):
        phi[i] = (phi[i - 1] + 3.6 / sqrt(N * (1.0 - z[i] ** 2))) % (2.0 * pi)
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return PointSet(d=2, points=pts, weights=np.full(N, 1.0 / N))


def cap_area(d: int, phi: float) -> float:
    """Normalised area of a spherical cap of angular radius phi.

    Equals the regularised incomplete beta I(sin^2(phi/2); d/2, d/2).
    """
    if not 0.0 <= phi <= pi + 1e-12:
        raise ValueError("cap radius must lie in [0, pi]")
    x = min(1.0, max(0.0, np.sin(min(phi, pi) / 2.0) ** 2))
    return float(betainc(d / 2.0, d / 2.0, x))


def separation(X: PointSet) -> SeparationReport:
    """Exact minimum pairwise distance (O(N^2) scan)."""
    if X.n < 2:
        raise ValueError("separation needs at least two points")
    g = X.points @ X.points.T
    np.fill_diagonal(g, -np.inf)
    gmax = float(g.max())
    dmin = sqrt(max(0.0, 2.0 - 2.0 * min(1.0, gmax)))
    angle = 2.0 * np.arcsin(min(1.0, dmin / 2.0))
    return SeparationReport(
        min_distance=dmin,
        min_angle=float(angle),
        separation_constant=dmin * X.n ** (1.0 / X.d),
    )


def property_r(X: PointSet, t: int, c1: float, probes=None, seed: int = 0) -> PropertyRReport:
    """Largest cap-mass-to-cap-area ratio over a finite probe set.

    A lower estimate of the true supremum; probes default to the nodes plus
    10*N seeded uniform points.
    """
    if t < 1 or not 0 < c1 <= pi / 2:
        raise ValueError("need t >= 1 and 0 < c1 <= pi/2")
    phi = c1 / t
    if probes is None:
        extra = random_uniform(X.d, 10 * X.n, seed).points
        probes = np.vstack([X.points, extra])
    probes = np.asarray(probes, dtype=float)
    area = cap_area(X.d, min(phi, pi))
    cosphi = np.cos(phi)
    inner = probes @ X.points.T  # (n_probes, N)
    mass = (inner >= cosphi) @ np.abs(X.weights)
    return PropertyRReport(t=t, c1=c1, max_ratio=float(mass.max() / area))


@lru_cache(maxsize=64)
def greedy_packing(d: int, M: int, candidate_count: int, seed: int) -> Packing:
    """Farthest-point greedy cap packing with M centers.

    beta is half the minimum pairwise angular distance among the selected
    centers, so the caps S(y_i, beta) have disjoint interiors by construction.
    Deterministic in its arguments, hence memoized.
    """
    if M < 2:
        raise ValueError("M must be >= 2")
    if candidate_count < 10 * M:
        raise ValueError("candidate_count must be >= 10*M")
    cand = random_uniform(d, candidate_count, seed).points
    chosen = np.empty((M, d + 1))
    chosen[0] = cand[0]
    # min inner product to chosen set == max angular distance candidate
    max_inner = cand @ chosen[0]
    for i in range(1, M):
        nxt = int(np.argmin(max_inner))
        chosen[i] = cand[nxt]
        np.maximum(max_inner, cand @ chosen[i], out=max_inner)
    g = chosen @ chosen.T
    np.fill_diagonal(g, -1.0)
    min_angle = float(np.arccos(np.clip(g.max(), -1.0, 1.0)))
    return Packing(d=d, centers=chosen, beta=min_angle / 2.0)
