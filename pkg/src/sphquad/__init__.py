"""Worst-case numerical-integration error on spheres S^d.

Kernel-based worst-case errors for Sobolev and log-weighted spaces, spherical
design validation, certified lower bounds (per-degree certificates and
fooling-function witnesses), and energy-based design generation.
"""

from ._backend import backend_name
from .kernels import SpaceSpec, build_coeffs, kernel_eval
from .pointset import PointSet, load_pointset, random_uniform, spiral_points
from .quaderr import lower_certificate, validate_design, wce, wce_heat_oracle, wce_moments
from .fooling import build_witness
from .designopt import optimize

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "SpaceSpec",
    "build_coeffs",
    "kernel_eval",
    "PointSet",
    "load_pointset",
    "random_uniform",
    "spiral_points",
    "wce",
    "wce_moments",
    "wce_heat_oracle",
    "validate_design",
    "lower_certificate",
    "build_witness",
    "optimize",
    "__version__",
]
