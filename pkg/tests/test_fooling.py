"""Bump functions, Funk-Hecke coefficients, and fooling witnesses."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from sphquad.fooling import bump, bump_scaled, build_witness, funk_hecke_coeffs
from sphquad.kernels import SpaceSpec
from sphquad.pointset import random_uniform, spiral_points
from sphquad.quaderr import wce
from sphquad.specfun import angular_weight_const, legendre_d_eval


def test_bump_values():
    assert bump(0.0) == pytest.approx(1.0)
    assert bump(0.5) == pytest.approx(0.7165313105737893, rel=1e-14)  # e^{-1/3}
    assert bump(1.0) == 0.0
    assert bump(-2.0) == 0.0
    u = np.linspace(-2, 2, 101)
    v = bump(u)
    assert np.all(v >= 0.0) and v.max() == pytest.approx(1.0)


def test_bump_scaled_support():
    beta = 0.4
    lo, hi = math.cos(beta), math.cos(beta / 2.0)
    t = np.linspace(-1.0, 1.0, 2001)
    v = bump_scaled(beta, t)
    assert np.all(v[t <= lo] == 0.0)
    assert np.all(v[t >= hi] == 0.0)
    mid = 0.5 * (lo + hi)
    assert bump_scaled(beta, mid) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        bump_scaled(0.0, 0.5)
    with pytest.raises(ValueError):
        bump_scaled(2.0, 0.5)


def test_funk_hecke_coeffs_against_quad():
    beta, d = 0.6, 2
    a = funk_hecke_coeffs(beta, d, 8)
    lo, hi = math.cos(beta), math.cos(beta / 2.0)
    cd = angular_weight_const(d)
    for ell in (0, 3, 7):
        ref, err = quad(
            lambda t: bump_scaled(beta, t)
            * legendre_d_eval(d, ell, t)
            * (1.0 - t * t) ** (d / 2.0 - 1.0),
            lo,
            hi,
            epsabs=1e-14,
        )
        assert a[ell] == pytest.approx(cd * ref, rel=1e-9, abs=1e-13)


def test_funk_hecke_reconstructs_bump():
    # the truncated zonal expansion must reproduce the bump pointwise
    beta, d = 0.7, 3
    L = 1600
    a = funk_hecke_coeffs(beta, d, L)
    from sphquad.specfun import dim_harmonics_arr, legendre_d_table

    t = np.linspace(-1.0, 1.0, 41)
    vals = (a * dim_harmonics_arr(d, L)) @ legendre_d_table(d, L, t)
    assert np.allclose(vals, bump_scaled(beta, t), atol=1e-5)


def test_witness_vanishes_on_nodes_and_lower_bounds_wce():
    X = spiral_points(64)
    sp = SpaceSpec.log_sobolev(2, 1.0)
    wit = build_witness(X, sp, M=16, seed=0)
    assert wit.valid
    assert wit.witness > 0
    r = wce(X, sp, 500)
    assert wit.witness <= r.value + math.sqrt(r.tail_bound_sq)


def test_witness_deterministic():
    X = spiral_points(32)
    sp = SpaceSpec.sobolev(2, 1.5)
    a = build_witness(X, sp, M=8, seed=4)
    b = build_witness(X, sp, M=8, seed=4)
    assert a.witness == b.witness
    assert a.beta == b.beta


def test_witness_d3():
    X = random_uniform(3, 40, seed=6)
    sp = SpaceSpec.sobolev(3, 2.0)
    wit = build_witness(X, sp, M=8, seed=0)
    assert wit.valid and wit.witness > 0
    r = wce(X, sp, 400)
    assert wit.witness <= r.value + math.sqrt(r.tail_bound_sq)


def test_witness_fixed_degree_failure_raises():
    X = spiral_points(64)
    sp = SpaceSpec.log_sobolev(2, 1.0)
    with pytest.raises(RuntimeError):
        build_witness(X, sp, M=16, L=50, seed=0)
