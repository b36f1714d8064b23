"""Command-line front end emitting deterministic CSV sweeps.

Output format: `#`-prefixed metadata lines carrying the full configuration
and seed, one column-header line, then data rows ordered by sweep value,
with numbers rendered at 12 significant digits (UTF-8, LF line endings).
Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 numerical
failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bounds as bounds_mod
from . import copulas, outage, worstcase
from .errors import CopulaOutageError, DomainError
from .marginals import Exponential, Uniform, parse_marginal
from .numerics import RandomSource, bessel_k1, find_root
from .numerics import _k1_large, _k1_small  # branch cross-check in verify


def _fmt(v):
    return format(float(v), ".12g")


def _emit(out, meta, header, rows):
    for key, value in meta:
        out.write(f"# {key}: {value}\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _sweep(start, stop, points, log):
    if points < 2:
        raise DomainError("sweep needs points >= 2")
    if start >= stop:
        raise DomainError(f"sweep needs start < stop, got [{start}, {stop}]")
    if log:
        if start <= 0:
            raise DomainError("log sweep needs start > 0")
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)


def _pmap(fn, items):
    """Evaluate sweep points, optionally in parallel (ordered results)."""
    workers = int(os.environ.get("COPULA_OUTAGE_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _meta(args, pairs):
    return [("tool", "copula-outage"), ("command", args.command)] + pairs


# --- bounds -----------------------------------------------------------------


def cmd_bounds(args, out):
    fx = parse_marginal(args.fx)
    fy = parse_marginal(args.fy)
    op = bounds_mod.SUM if args.op == "sum" else bounds_mod.PRODUCT
    method = "numerical" if args.numerical else "auto"
    grid = _sweep(args.start, args.stop, args.points, args.log)

    def point(s):
        r = bounds_mod.bound_result(fx, fy, op, float(s), method=method)
        return (s, r.lower, r.upper)

    rows = _pmap(point, grid)
    meta = _meta(args, [
        ("op", args.op), ("fx", str(fx)), ("fy", str(fy)),
        ("from", _fmt(args.start)), ("to", _fmt(args.stop)),
        ("points", args.points), ("scale", "log" if args.log else "linear"),
        ("method", method),
    ])
    _emit(out, meta, ["s", "lower", "upper"], rows)


# --- outage scenarios ---------------------------------------------------------


def _rate_grid(args):
    if args.rate_from is not None:
        return _sweep(args.rate_from, args.rate_to, args.points, args.log)
    if args.rate is None:
        raise DomainError("need --rate or --rate-from/--rate-to")
    return np.array([args.rate])


def cmd_outage_p2p(args, out):
    snr = outage.snr_from_db(args.snr_db)
    rates = _rate_grid(args)

    def point(r):
        b = outage.p2p_outage_bounds(args.lx, args.ly, outage.RateConfig(float(r), snr))
        return (r, b.lower, b.upper)

    rows = _pmap(point, rates)
    meta = _meta(args, [("scenario", "p2p"), ("lx", _fmt(args.lx)),
                        ("ly", _fmt(args.ly)), ("snr_db", _fmt(args.snr_db))])
    _emit(out, meta, ["rate", "lower", "upper"], rows)


def cmd_outage_mac(args, out):
    if args.r1_from is not None:
        r1s = _sweep(args.r1_from, args.r1_to, args.points, args.log)
    elif args.r1 is not None:
        r1s = np.array([args.r1])
    else:
        raise DomainError("need --r1 or --r1-from/--r1-to")

    def point(r1):
        lo = outage.mac_outage_lower(args.lx, args.ly, float(r1), args.r2)
        hi = outage.mac_outage_upper(args.lx, args.ly, float(r1), args.r2)
        return (r1, lo, hi)

    rows = _pmap(point, r1s)
    meta = _meta(args, [("scenario", "mac"), ("lx", _fmt(args.lx)),
                        ("ly", _fmt(args.ly)), ("r2", _fmt(args.r2))])
    _emit(out, meta, ["r1", "lower", "upper"], rows)


def cmd_outage_ris(args, out):
    snr = outage.snr_from_db(args.snr_db)
    rates = _rate_grid(args)

    def point(r):
        cfg = outage.RateConfig(float(r), snr)
        b = outage.ris_outage_bounds(args.lx, args.ly, cfg)
        ind = outage.ris_independent_outage(args.lx, args.ly, cfg)
        return (r, b.lower, ind, b.upper)

    rows = _pmap(point, rates)
    meta = _meta(args, [("scenario", "ris"), ("lx", _fmt(args.lx)),
                        ("ly", _fmt(args.ly)), ("snr_db", _fmt(args.snr_db))])
    _emit(out, meta, ["rate", "lower", "independent", "upper"], rows)


def cmd_outage_corr(args, out):
    snr = outage.snr_from_db(args.snr_db)
    cfg = outage.RateConfig(args.rate, snr)
    rhos = _sweep(args.rho_from, args.rho_to, args.points, log=False)
    ref = outage.p2p_outage_bounds(1.0, 1.0, cfg)

    def point(item):
        i, rho = item
        rng = RandomSource(args.seed).spawn(i)  # per-point seed derivation
        est, err = outage.correlated_rayleigh_outage_mc(
            outage.CorrelationModel(float(rho)), cfg, args.samples, rng)
        return (rho, est, err, ref.lower, ref.upper)

    rows = _pmap(point, list(enumerate(rhos)))
    meta = _meta(args, [("scenario", "corr"), ("snr_db", _fmt(args.snr_db)),
                        ("rate", _fmt(args.rate)), ("samples", args.samples),
                        ("seed", args.seed)])
    _emit(out, meta, ["rho", "mc_estimate", "mc_stderr", "lower", "upper"], rows)


# --- verify -------------------------------------------------------------------


def _verify_checks(seed, samples):
    """Yield (name, passed, detail) for the self-consistency suite."""
    for name, cop in (("copula_valid_W", copulas.W), ("copula_valid_M", copulas.M),
                      ("copula_valid_Pi", copulas.PI)):
        report = copulas.check_copula(cop, grid_n=50)
        yield name, report.is_valid, f"violations={len(report.violations)}"

    grid = np.linspace(0.0, 1.0, 51)
    worst = 0.0
    for a in grid:
        for b in grid:
            w, p, m = copulas.W.eval(a, b), copulas.PI.eval(a, b), copulas.M.eval(a, b)
            worst = min(worst, p - w, m - p)
    yield "frechet_ordering", worst >= -1e-12, f"min_gap={_fmt(worst)}"

    fx, fy = Uniform(1.0, 3.0), Uniform(2.0, 5.0)
    dev = 0.0
    for s in np.linspace(0.5, 12.0, 61):
        cf = bounds_mod.closed_form_sum_uniform(fx, fy, float(s))
        nm = bounds_mod.numerical_bounds(fx, fy, bounds_mod.SUM, float(s))
        dev = max(dev, abs(cf.lower - nm.lower), abs(cf.upper - nm.upper))
    yield "closed_vs_numeric_uniform_sum", dev <= 1e-6, f"max_dev={_fmt(dev)}"

    dev = 0.0
    for lx, ly in ((1.0, 1.0), (1.0, 2.0)):
        ex, ey = Exponential(lx), Exponential(ly)
        for s in np.linspace(0.01, 20.0, 41):
            cf = bounds_mod.closed_form_sum_exponential(ex, ey, float(s))
            nm = bounds_mod.numerical_bounds(ex, ey, bounds_mod.SUM, float(s))
            dev = max(dev, abs(cf.lower - nm.lower), abs(cf.upper - nm.upper))
    yield "closed_vs_numeric_exp_sum", dev <= 1e-6, f"max_dev={_fmt(dev)}"

    rel = max(abs(_k1_small(x) / _k1_large(x) - 1.0)
              for x in np.linspace(1.5, 2.5, 21))
    yield "bessel_branch_overlap", rel <= 1e-9, f"max_rel={_fmt(rel)}"

    ks = [bessel_k1(x) for x in np.geomspace(1e-3, 50.0, 200)]
    mono = all(a > b for a, b in zip(ks, ks[1:]))
    yield "bessel_monotone", mono, "strictly decreasing on log grid"

    dev = 0.0
    for marg in (Exponential(1.0), Uniform(1.0, 3.0)):
        for p in np.linspace(0.1, 0.9, 9):
            hi = marg.quantile(0.999999) + 1.0
            root = find_root(lambda x: marg.cdf(x) - p, marg.support()[0], hi)
            dev = max(dev, abs(root - marg.quantile(p)))
    yield "root_vs_quantile", dev <= 1e-8, f"max_dev={_fmt(dev)}"

    rng = RandomSource(seed)
    j_lo = worstcase.lower_attaining(fx, fy, bounds_mod.SUM, 6.0)
    try:
        emp = worstcase.attainment_audit(j_lo, samples, rng)
        ok, note = True, f"empirical={_fmt(emp)} bound={_fmt(j_lo.value)}"
    except CopulaOutageError as exc:
        ok, note = False, str(exc)
    yield "attain_lower_uniform_sum", ok, note
    rep = worstcase.marginal_audit(j_lo, samples, RandomSource(seed).spawn(1))
    dev = max(rep.sup_dev_x, rep.sup_dev_y)
    band = 3.0 * math.sqrt(0.25 / samples) + 0.001
    yield "marginals_lower_uniform_sum", dev <= band, f"sup_dev={_fmt(dev)}"

    ex = Exponential(1.0)
    j_hi = worstcase.upper_attaining(ex, ex, bounds_mod.SUM, 0.1)
    try:
        emp = worstcase.attainment_audit(j_hi, samples, RandomSource(seed).spawn(2))
        ok, note = True, f"empirical={_fmt(emp)} bound={_fmt(j_hi.value)}"
    except CopulaOutageError as exc:
        ok, note = False, str(exc)
    yield "attain_upper_exp_sum", ok, note
    rep = worstcase.marginal_audit(j_hi, samples, RandomSource(seed).spawn(3))
    dev = max(rep.sup_dev_x, rep.sup_dev_y)
    yield "marginals_upper_exp_sum", dev <= band, f"sup_dev={_fmt(dev)}"


def cmd_verify(args, out):
    failures = 0
    for name, ok, detail in _verify_checks(args.seed, args.samples):
        out.write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n")
        failures += 0 if ok else 1
    out.write(f"{'OK' if failures == 0 else 'FAILED'}: "
              f"{failures} failing check(s)\n")
    return 0 if failures == 0 else 1


# --- argument parsing ---------------------------------------------------------


def _add_rate_sweep(p):
    p.add_argument("--rate", type=float, help="single transmission rate")
    p.add_argument("--rate-from", type=float, dest="rate_from")
    p.add_argument("--rate-to", type=float, dest="rate_to")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--log", action="store_true", help="log-spaced sweep")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="copula-outage",
        description="Dependence-uncertainty bounds on outage probabilities.",
    )
    parser.add_argument("--output", help="write CSV to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("bounds", help="bounds on P(L(X,Y) < s) over a threshold sweep")
    pb.add_argument("op", choices=("sum", "product"))
    pb.add_argument("fx", help="marginal spec, e.g. uniform:1:3 or exp:1.0")
    pb.add_argument("fy")
    pb.add_argument("--from", dest="start", type=float, required=True)
    pb.add_argument("--to", dest="stop", type=float, required=True)
    pb.add_argument("--points", type=int, default=201)
    pb.add_argument("--log", action="store_true")
    pb.add_argument("--numerical", action="store_true",
                    help="force the generic numerical path")
    pb.set_defaults(func=cmd_bounds)

    po = sub.add_parser("outage", help="communication-scenario outage bounds")
    scen = po.add_subparsers(dest="scenario", required=True)

    pp = scen.add_parser("p2p")
    pp.add_argument("--lx", type=float, required=True)
    pp.add_argument("--ly", type=float, required=True)
    pp.add_argument("--snr-db", type=float, dest="snr_db", default=0.0)
    _add_rate_sweep(pp)
    pp.set_defaults(func=cmd_outage_p2p)

    pm = scen.add_parser("mac")
    pm.add_argument("--lx", type=float, required=True)
    pm.add_argument("--ly", type=float, required=True)
    pm.add_argument("--r1", type=float)
    pm.add_argument("--r2", type=float, required=True)
    pm.add_argument("--r1-from", type=float, dest="r1_from")
    pm.add_argument("--r1-to", type=float, dest="r1_to")
    pm.add_argument("--points", type=int, default=50)
    pm.add_argument("--log", action="store_true")
    pm.set_defaults(func=cmd_outage_mac)

    pr = scen.add_parser("ris")
    pr.add_argument("--lx", type=float, required=True)
    pr.add_argument("--ly", type=float, required=True)
    pr.add_argument("--snr-db", type=float, dest="snr_db", default=0.0)
    _add_rate_sweep(pr)
    pr.set_defaults(func=cmd_outage_ris)

    pc = scen.add_parser("corr")
    pc.add_argument("--snr-db", type=float, dest="snr_db", required=True)
    pc.add_argument("--rate", type=float, required=True)
    pc.add_argument("--rho-from", type=float, dest="rho_from", default=0.0)
    pc.add_argument("--rho-to", type=float, dest="rho_to", default=1.0)
    pc.add_argument("--points", type=int, default=21)
    pc.add_argument("--samples", type=int, default=1_000_000)
    pc.add_argument("--seed", type=int, default=0)
    pc.set_defaults(func=cmd_outage_corr)

    pv = sub.add_parser("verify", help="run the self-consistency suite")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--samples", type=int, default=100_000)
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                code = args.func(args, fh)
        else:
            code = args.func(args, sys.stdout)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CopulaOutageError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
