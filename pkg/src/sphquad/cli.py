"""Command-line surface: experiments to CSV on stdout, diagnostics on stderr.

Space syntax: ``log:<gamma>`` or ``sob:<s>``; the dimension is always given
separately via --d.  Seeds are mandatory wherever randomness is involved.
CSV schema: experiment,d,space,N,t,wce,tail,certificate,witness,seconds.
"""

import argparse
import sys
import time
from dataclasses import dataclass
from math import log, sqrt

import numpy as np

from .designopt import design_residual, distance_sum, kernel_energy, optimize
from .fooling import build_witness
from .kernels import SpaceSpec
from .pointset import load_pointset, random_uniform, save_pointset, spiral_points
from .quaderr import gram_moments_arr, lower_certificate, validate_design, wce, \
    wce_heat_oracle, wce_moments
from .specfun import verify_identities

CSV_HEADER = "experiment,d,space,N,t,wce,tail,certificate,witness,seconds"


@dataclass(frozen=True)
class RateFit:
    a: float
    b: float
    c: float
    rms_residual: float


def rate_fit(samples) -> tuple[RateFit, RateFit]:
    """Least-squares fit of ln v = a ln N + b ln ln N + c.

    Returns (free fit, fit constrained to a = -1/2).
    """
    samples = list(samples)
    if len(samples) < 4:
        raise ValueError("need at least 4 samples")
    ns = np.array([float(n) for n, _ in samples])
    vs = np.array([float(v) for _, v in samples])
    if np.ptp(ns) == 0:
        raise ValueError("degenerate design: all N equal")
    if np.any(ns < 3) or np.any(vs <= 0):
        raise ValueError("need N >= 3 and positive values")
    ln_n, ln_ln_n, y = np.log(ns), np.log(np.log(ns)), np.log(vs)

    A = np.column_stack([ln_n, ln_ln_n, np.ones_like(ln_n)])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    res = y - A @ coef
    free = RateFit(*coef, rms_residual=float(np.sqrt(np.mean(res**2))))

    A2 = np.column_stack([ln_ln_n, np.ones_like(ln_n)])
    y2 = y + 0.5 * ln_n
    coef2, *_ = np.linalg.lstsq(A2, y2, rcond=None)
    res2 = y2 - A2 @ coef2
    fixed = RateFit(-0.5, *coef2, rms_residual=float(np.sqrt(np.mean(res2**2))))
    return free, fixed


def parse_space(text: str, d: int) -> SpaceSpec:
    try:
        kind, value = text.split(":", 1)
        value = float(value)
    except ValueError:
        raise ValueError(f"bad space spec {text!r}; use log:<gamma> or sob:<s>")
    if kind == "log":
        return SpaceSpec.log_sobolev(d, value)
    if kind == "sob":
        return SpaceSpec.sobolev(d, value)
    raise ValueError(f"bad space kind {kind!r}; use log or sob")


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


class _Timer:
    def __init__(self, fixed: bool):
        self.fixed = fixed
        self.start = time.perf_counter()

    def seconds(self) -> float:
        return 0.0 if self.fixed else time.perf_counter() - self.start


def _row(out, experiment, d, space, N, t, wce_v, tail, cert, wit, secs):
    print(
        ",".join(
            [experiment, str(d), space, str(N), str(t), _fmt(wce_v), _fmt(tail),
             _fmt(cert), _fmt(wit), f"{secs:.3f}"]
        ),
        file=out,
    )


def _load(args):
    with open(args.points) as fh:
        return load_pointset(fh, args.d)


def cmd_wce(args, out):
    timer = _Timer(args.fixed_timing)
    X = _load(args)
    space = parse_space(args.space, args.d)
    rep = wce(X, space, args.L)
    cert = wit = None
    if args.certificate:
        cert = lower_certificate(X, space, args.L).bound_sq
    if args.witness:
        wit = build_witness(X, space, M=max(X.n, 8), seed=args.seed).witness
    _row(out, "wce", args.d, space.label(), X.n, -1, rep.value,
         sqrt(rep.tail_bound_sq), cert, wit, timer.seconds())
    return 0


def cmd_moments(args, out):
    timer = _Timer(args.fixed_timing)
    X = _load(args)
    space = parse_space(args.space, args.d)
    rep = wce_moments(X, space, args.L)
    _row(out, "moments", args.d, space.label(), X.n, -1, rep.value,
         sqrt(rep.tail_bound_sq), None, None, timer.seconds())
    return 0


def cmd_validate_design(args, out):
    timer = _Timer(args.fixed_timing)
    X = _load(args)
    rep = validate_design(X, args.t, args.tol)
    _row(out, "validate-design", args.d, "", X.n, args.t, rep.max_residual,
         None, None, None, timer.seconds())
    print(f"max residual {rep.max_residual:.3e}; "
          f"{'is' if rep.is_design else 'is NOT'} a {args.t}-design", file=sys.stderr)
    return 0 if rep.is_design else 1


def cmd_certificate(args, out):
    timer = _Timer(args.fixed_timing)
    X = _load(args)
    space = parse_space(args.space, args.d)
    cert = lower_certificate(X, space, args.L)
    _row(out, "certificate", args.d, space.label(), X.n, -1, None, None,
         cert.bound_sq, None, timer.seconds())
    print(f"degree {cert.ell_star}: bound_sq {cert.bound_sq:.6e}", file=sys.stderr)
    return 0


def cmd_witness(args, out):
    timer = _Timer(args.fixed_timing)
    X = _load(args)
    space = parse_space(args.space, args.d)
    w = build_witness(X, space, M=args.M or max(X.n, 8), seed=args.seed)
    if not w.valid:
        print("witness INVALID: nonzero value at a node", file=sys.stderr)
        return 1
    _row(out, "witness", args.d, space.label(), X.n, -1, None, None, None,
         w.witness, timer.seconds())
    return 0


def cmd_heat_oracle(args, out):
    timer = _Timer(args.fixed_timing)
    X = _load(args)
    space = parse_space(args.space, args.d)
    if space.kind != "sobolev":
        print("heat oracle requires a Sobolev space (sob:<s>)", file=sys.stderr)
        return 2
    rep = wce_heat_oracle(X, space, L_heat=args.L)
    _row(out, "heat-oracle", args.d, space.label(), X.n, -1, rep.value,
         sqrt(rep.tail_bound_sq), None, None, timer.seconds())
    return 0


def cmd_generate(args, out):
    if args.family == "random":
        X = random_uniform(args.d, args.N, args.seed)
    elif args.family == "spiral":
        if args.d != 2:
            print("spiral points are defined for d=2 only", file=sys.stderr)
            return 2
        X = spiral_points(args.N)
    else:
        X = random_uniform(args.d, args.N, args.seed)
        if args.objective == "design":
            obj = design_residual(args.t)
        elif args.objective == "distance":
            obj = distance_sum(args.alpha)
        else:
            obj = kernel_energy(parse_space(args.space, args.d), args.L)
        best = None
        for s in range(args.seed, args.seed + args.restarts):
            res = optimize(random_uniform(args.d, args.N, s), obj,
                           max_iter=args.max_iter, tol=args.tol, seed=s)
            score = obj.sense * res.objective_trace[-1]
            if best is None or score > best[0]:
                best = (score, res)
        X = best[1].points
    save_pointset(X, out, weights=False)
    return 0


def cmd_identities(args, out):
    rep = verify_identities(args.d, args.Lmax, np.linspace(-1, 1, args.grid), args.tol)
    print("identity,params,residual", file=out)
    for name, params, res in rep.checks:
        print(f"{name},{'/'.join(map(str, params))},{res:.3e}", file=out)
    print(f"max residual {rep.max_residual:.3e}; "
          f"{'PASS' if rep.passed else 'FAIL'}", file=sys.stderr)
    return 0 if rep.passed else 1


def cmd_rates(args, out):
    space = parse_space(args.space, args.d)
    ns = [int(v) for v in args.N.split(",")]
    samples = []
    for n in ns:
        timer = _Timer(args.fixed_timing)
        if args.family == "spiral":
            X = spiral_points(n)
        else:
            X = random_uniform(args.d, n, args.seed)
        moments = gram_moments_arr(X, args.L)
        rep = wce_moments(X, space, args.L, moments=moments)
        cert = lower_certificate(X, space, args.L, moments=moments).bound_sq
        samples.append((n, rep.value))
        _row(out, "rates", args.d, space.label(), n, -1, rep.value,
             sqrt(rep.tail_bound_sq), cert, None, timer.seconds())
    free, fixed = rate_fit(samples)
    print(f"# fit a={free.a!r} b={free.b!r} c={free.c!r} rms={free.rms_residual!r}",
          file=out)
    print(f"# fit-constrained a={fixed.a!r} b={fixed.b!r} c={fixed.c!r} "
          f"rms={fixed.rms_residual!r}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sphquad",
                                description="worst-case quadrature error on spheres")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap (results are identical for any value)")
    p.add_argument("--fixed-timing", action="store_true",
                   help="report 0.000 in the seconds column (reproducible tables)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, space=True, L=True):
        sp.add_argument("--points", required=True)
        sp.add_argument("--d", type=int, required=True)
        if space:
            sp.add_argument("--space", required=True)
        if L:
            sp.add_argument("--L", type=int, default=4000)

    sp = sub.add_parser("wce", help="worst-case error of a rule")
    common(sp)
    sp.add_argument("--certificate", action="store_true")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_wce)

    sp = sub.add_parser("moments", help="worst-case error via per-degree moments")
    common(sp)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("validate-design", help="check the t-design property")
    common(sp, space=False, L=False)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--tol", type=float, default=None)
    sp.set_defaults(func=cmd_validate_design)

    sp = sub.add_parser("certificate", help="per-degree lower bound")
    common(sp)
    sp.set_defaults(func=cmd_certificate)

    sp = sub.add_parser("witness", help="fooling-function lower bound")
    common(sp)
    sp.add_argument("--M", type=int, default=0)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("heat-oracle", help="Sobolev wce via Laplace representation")
    common(sp)
    sp.set_defaults(func=cmd_heat_oracle)

    sp = sub.add_parser("generate", help="emit a point set in point-file format")
    sp.add_argument("--family", choices=["random", "spiral", "optimize"], required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--objective", choices=["design", "distance", "energy"],
                    default="distance")
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--space", default="log:1.0")
    sp.add_argument("--L", type=int, default=200)
    sp.add_argument("--restarts", type=int, default=3)
    sp.add_argument("--max-iter", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("identities", help="run the polynomial identity suite")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--Lmax", type=int, default=50)
    sp.add_argument("--grid", type=int, default=21)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("rates", help="wce over a family of N, with a rate fit")
    sp.add_argument("--family", choices=["random", "spiral"], required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--N", required=True, help="comma-separated point counts")
    sp.add_argument("--L", type=int, default=4000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_rates)

    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command not in ("identities", "generate"):
        print(CSV_HEADER, file=out)
    try:
        return args.func(args, out)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
