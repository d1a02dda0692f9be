"""Acceptance suite: ten end-to-end criteria at pinned tolerances.

Each test prints a single PASS/FAIL line (bypassing capture) so the outcome
is visible in any log, then asserts.  Shared fixtures hold the random
configurations and the generated near-designs so the soundness criterion can
sweep every configuration used elsewhere.
"""

import io
import math
import sys
import time

import numpy as np
import pytest

from sphquad.cli import rate_fit, run_command
from sphquad.designopt import design_residual, optimize
from sphquad.fooling import build_witness
from sphquad.kernels import SpaceSpec
from sphquad.pointset import PointSet, random_uniform, save_pointset, spiral_points
from sphquad.quaderr import (
    gram_moments_arr,
    lower_certificate,
    validate_design,
    wce,
    wce_heat_oracle,
    wce_moments,
)
from sphquad.specfun import verify_identities


def announce(ok: bool, label: str, detail: str):
    print(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}", file=sys.__stdout__)
    sys.__stdout__.flush()


# ---------------------------------------------------------------- fixtures

@pytest.fixture(scope="module")
def random_configs():
    """50 random rule/space configurations: d in {2,3}, N <= 64, both kinds."""
    rng = np.random.default_rng(20240)
    out = []
    for i in range(50):
        d = int(rng.integers(2, 4))
        n = int(rng.integers(1, 65))
        if i % 2 == 0:
            space = SpaceSpec.sobolev(d, float(d / 2.0 + rng.uniform(0.25, 2.0)))
        else:
            space = SpaceSpec.log_sobolev(d, float(rng.uniform(0.6, 2.0)))
        out.append((random_uniform(d, n, seed=1000 + i), space))
    return out


@pytest.fixture(scope="module")
def near_designs():
    """Near-t-designs on S^2 from design-residual minimization, t = 4..20."""
    start = time.monotonic()
    designs = {}
    for t in range(4, 21, 2):
        res = optimize(random_uniform(2, t * t, seed=11), design_residual(t),
                       max_iter=2000)
        designs[t] = (res.points, res.objective_trace[-1])
    return designs, time.monotonic() - start


# ---------------------------------------------------------------- criteria

def test_criterion_01_identity_suite():
    start = time.monotonic()
    worst = 0.0
    ok = True
    grid = np.linspace(-1.0, 1.0, 21)
    for d in (2, 3, 4, 5):
        rep = verify_identities(d, 50, grid, tol=1e-10)
        worst = max(worst, rep.max_residual)
        ok = ok and rep.passed
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 30.0
    announce(ok, "criterion 1 identity suite",
             f"max residual {worst:.3e} (tol 1e-10), {elapsed:.1f}s (< 30s)")
    assert ok


def test_criterion_02_two_path_equivalence(random_configs):
    worst = 0.0
    for X, space in random_configs:
        a = wce(X, space, 500).value
        b = wce_moments(X, space, 500).value
        worst = max(worst, abs(a - b) / max(b, 1e-300))
    ok = worst <= 1e-8
    announce(ok, "criterion 2 two-path wce equivalence",
             f"worst relative gap {worst:.3e} over 50 configs (tol 1e-8)")
    assert ok


def test_criterion_03_heat_oracle():
    worst = 0.0
    for n in (1, 8, 32):
        X = random_uniform(2, n, seed=77 + n)
        for s in (1.5, 2.0):
            space = SpaceSpec.sobolev(2, s)
            a = wce_heat_oracle(X, space, L_heat=4000).value
            b = wce_moments(X, space, 4000).value
            worst = max(worst, abs(a - b) / b)
    ok = worst <= 1e-6
    announce(ok, "criterion 3 heat-kernel oracle",
             f"worst relative gap {worst:.3e} (tol 1e-6)")
    assert ok


def test_criterion_04_gram_positivity():
    rng = np.random.default_rng(4)
    worst = np.inf
    draws = 0
    while draws < 10_000:
        d = int(rng.integers(2, 4))
        n = int(rng.integers(1, 17))
        X = random_uniform(d, n, seed=int(rng.integers(0, 2**31)))
        m = gram_moments_arr(X, 100)
        ells = rng.integers(0, 101, size=100)
        worst = min(worst, float(m[ells].min()))
        draws += len(ells)
    ok = worst >= -1e-9
    announce(ok, "criterion 4 Gram positivity",
             f"min moment {worst:.3e} over {draws} draws (tol -1e-9)")
    assert ok


def test_criterion_05_certificate_witness_soundness(random_configs, near_designs):
    designs, _ = near_designs
    configs = list(random_configs)
    for t, (X, _res) in designs.items():
        for g in (0.75, 1.0, 2.0):
            configs.append((X, SpaceSpec.log_sobolev(2, g)))
    cert_viol = wit_viol = 0
    checked = 0
    for X, space in configs:
        rep = wce_moments(X, space, 500)
        cert = lower_certificate(X, space, 500)
        if cert.bound_sq > rep.value_sq + 1e-12:
            cert_viol += 1
        wit = build_witness(X, space, M=max(4, X.n // 4), seed=0)
        slack = math.sqrt(rep.tail_bound_sq)
        if wit.witness > rep.value + slack:
            wit_viol += 1
        checked += 1
    ok = cert_viol == 0 and wit_viol == 0
    announce(ok, "criterion 5 certificate/witness soundness",
             f"{checked} configs, {cert_viol} certificate and {wit_viol} "
             f"witness violations (require 0)")
    assert ok


def test_criterion_06_design_rate(near_designs):
    designs, gen_time = near_designs
    start = time.monotonic()
    ok = True
    details = []
    for g in (0.75, 1.0, 2.0):
        space = SpaceSpec.log_sobolev(2, g)
        samples, scaled = [], []
        for t, (X, _res) in designs.items():
            v = wce_moments(X, space, 500).value
            samples.append((X.n, v))
            scaled.append(v * math.sqrt(X.n) * math.log(X.n) ** (g - 0.5))
        ratio = max(scaled) / min(scaled)
        free, _ = rate_fit(samples)
        good = ratio <= 10.0 and -0.65 <= free.a <= -0.35
        ok = ok and good
        details.append(f"gamma={g}: ratio {ratio:.2f}, a={free.a:.3f}")
    elapsed = gen_time + (time.monotonic() - start)
    ok = ok and elapsed < 600.0
    announce(ok, "criterion 6 design rate",
             "; ".join(details) + f"; {elapsed:.0f}s (< 600s)")
    assert ok


def test_criterion_07_spiral_witness_scaling():
    space = SpaceSpec.log_sobolev(2, 1.0)
    scaled = []
    positive = True
    for k in range(4, 11):
        n = 2**k
        X = spiral_points(n)
        wit = build_witness(X, space, M=max(4, n // 4), seed=0)
        positive = positive and wit.witness > 0.0
        scaled.append(wit.witness * math.sqrt(n) * math.log(n))
    ratio = max(scaled) / min(scaled)
    ok = positive and ratio <= 20.0
    announce(ok, "criterion 7 spiral witness scaling",
             f"N=16..1024: C/c = {ratio:.2f} (<= 20), all positive: {positive}")
    assert ok


def test_criterion_08_design_recovery():
    worst = 0.0
    for seed in range(5):
        res = optimize(random_uniform(2, 4, seed=seed), design_residual(2),
                       max_iter=3000)
        worst = max(worst, res.objective_trace[-1])
    octa = PointSet(d=2, points=np.vstack([np.eye(3), -np.eye(3)]),
                    weights=np.full(6, 1.0 / 6.0))
    tetra = PointSet(
        d=2,
        points=np.array([[1.0, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]])
        / math.sqrt(3.0),
        weights=np.full(4, 0.25),
    )
    octa_ok = validate_design(octa, 3).is_design
    tetra_rejected = not validate_design(tetra, 3).is_design
    ok = worst < 1e-8 and octa_ok and tetra_rejected
    announce(ok, "criterion 8 design recovery",
             f"worst residual over 5 seeds {worst:.3e} (< 1e-8); octahedron "
             f"3-design: {octa_ok}; tetrahedron rejected at t=3: {tetra_rejected}")
    assert ok


def test_criterion_09_gradient_correctness():
    from sphquad.designopt import distance_sum, gradient, kernel_energy, objective_value

    objectives = [
        kernel_energy(SpaceSpec.sobolev(2, 2.0), 30),
        kernel_energy(SpaceSpec.log_sobolev(2, 1.0), 30),
        distance_sum(1.0),
        distance_sum(0.5),
        design_residual(3),
    ]
    worst = 0.0
    h = 1e-6
    for seed, obj in enumerate(objectives):
        X = random_uniform(2, 8, seed=seed)
        grad = gradient(X, obj)
        fd = np.zeros_like(grad)
        for i in range(8):
            for k in range(3):
                for sgn in (1.0, -1.0):
                    p = X.points.copy()
                    p[i, k] += sgn * h
                    p /= np.linalg.norm(p, axis=1, keepdims=True)
                    Y = PointSet(d=2, points=p, weights=X.weights)
                    fd[i, k] += sgn * objective_value(Y, obj)
        fd /= 2.0 * h
        scale = max(1.0, float(np.abs(fd).max()))
        worst = max(worst, float(np.abs(grad - fd).max()) / scale)
    ok = worst <= 1e-5
    announce(ok, "criterion 9 gradient correctness",
             f"worst relative FD gap {worst:.3e} (tol 1e-5)")
    assert ok


def test_criterion_10_csv_determinism(tmp_path):
    path = tmp_path / "pts.txt"
    with open(path, "w") as fh:
        save_pointset(spiral_points(48), fh)
    args = ["--fixed-timing", "wce", "--points", str(path), "--d", "2",
            "--space", "log:1", "--L", "400", "--certificate", "--witness",
            "--seed", "5"]
    outputs = []
    for argv in (args, args, ["--threads", "4"] + args):
        buf = io.StringIO()
        rc = run_command(argv, out=buf)
        assert rc == 0
        outputs.append(buf.getvalue().encode())
    ok = outputs[0] == outputs[1] == outputs[2]
    announce(ok, "criterion 10 CSV determinism",
             f"byte-identical across runs and 1 vs 4 threads: {ok}")
    assert ok
