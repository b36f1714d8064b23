"""Pointwise-tight bounds on P(L(X, Y) < s) under unknown dependence.

The generic path parameterizes the level curve {L(x, y) = s} by u = F_X(x)
(compactifying unbounded supports to [0, 1]) and optimizes the extremal-copula
objectives with a coarse grid plus golden-section refinement.  Closed-form
fast paths cover the sum of two uniforms and the sum of two exponentials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .copulas import W
from .errors import TypeMismatch
from .marginals import Exponential, Uniform
from .numerics import DEFAULT_TOL, maximize_scalar

_U_EPS = 1e-12  # opens CDF-space intervals at 0/1 (e.g. product with x=0)


@dataclass(frozen=True)
class BinaryOp:
    """A continuous binary operation non-decreasing in each argument.

    solve_y(x, s) solves f(x, y) = s for y; solve_x(y, s) for x.  Both must
    return +/-inf when the solution escapes to infinity.
    """

    kind: str
    f: object
    solve_y: object
    solve_x: object


def _sum_solve(a, s):
    return s - a


def _product_solve(a, s):
    if a <= 0.0:
        return math.inf if s > 0.0 else 0.0
    if math.isinf(a):
        return 0.0
    return s / a


SUM = BinaryOp("Sum", lambda x, y: x + y, _sum_solve, _sum_solve)
PRODUCT = BinaryOp("Product", lambda x, y: x * y, _product_solve, _product_solve)


def custom_op(f, solve_y, solve_x=None):
    """Custom operation; solve_x defaults to solve_y (symmetric f)."""
    return BinaryOp("Custom", f, solve_y, solve_x or solve_y)


@dataclass(frozen=True)
class BoundResult:
    threshold: float
    lower: float
    upper: float
    lower_argpoint: tuple | None
    upper_argpoint: tuple | None
    method: str  # 'closed_form' or 'numerical'


def _op_range(fx, fy, op):
    """(inf, sup) of L over the support product."""
    xlo, xhi = fx.support()
    ylo, yhi = fy.support()
    return op.f(xlo, ylo), op.f(xhi, yhi)


def _curve_u_interval(fx, fy, op, s):
    """Range of u = F_X(x) along the level curve inside the support box."""
    xlo, xhi = fx.support()
    ylo, yhi = fy.support()
    x_min = max(xlo, op.solve_x(yhi, s))
    x_max = min(xhi, op.solve_x(ylo, s))
    return fx.cdf(x_min), fx.cdf(x_max)


def _curve_point(fx, op, s, u):
    x = fx.quantile(min(max(u, _U_EPS), 1.0 - _U_EPS))
    return x, op.solve_y(x, s)


def tau_lower(fx, fy, op, s, tol=DEFAULT_TOL, copula=W, grid_n=257):
    """Lower bound sup_{L(x,y)=s} C(F_X(x), F_Y(y)) with C = W by default.

    Returns (probability, argpoint) with argpoint on the level curve, or
    argpoint None when the level set misses the support box entirely (the
    bound is then 0 below the range of L and 1 above it).
    """
    lo, hi = _op_range(fx, fy, op)
    if s <= lo:
        return 0.0, None
    if s >= hi:
        return 1.0, None
    u_lo, u_hi = _curve_u_interval(fx, fy, op, s)

    def objective(u):
        x, y = _curve_point(fx, op, s, u)
        return copula.eval(min(max(u, 0.0), 1.0), fy.cdf(y))

    u_star, val = maximize_scalar(objective, u_lo, u_hi, tol=tol, grid_n=grid_n)
    return min(max(val, 0.0), 1.0), _curve_point(fx, op, s, u_star)


def phi_upper(fx, fy, op, s, tol=DEFAULT_TOL, copula=W, grid_n=257):
    """Upper bound inf_{L(x,y)=s} C-dual(F_X(x), F_Y(y)), capped at 1."""
    lo, hi = _op_range(fx, fy, op)
    if s <= lo:
        return 0.0, None
    if s >= hi:
        return 1.0, None
    u_lo, u_hi = _curve_u_interval(fx, fy, op, s)

    def objective(u):
        x, y = _curve_point(fx, op, s, u)
        return -min(copula.dual(min(max(u, 0.0), 1.0), fy.cdf(y)), 1.0)

    u_star, val = maximize_scalar(objective, u_lo, u_hi, tol=tol, grid_n=grid_n)
    return min(max(-val, 0.0), 1.0), _curve_point(fx, op, s, u_star)


def numerical_bounds(fx, fy, op, s, tol=DEFAULT_TOL, grid_n=257):
    """Both bounds at s via the generic optimizer."""
    lower, lo_pt = tau_lower(fx, fy, op, s, tol=tol, grid_n=grid_n)
    upper, up_pt = phi_upper(fx, fy, op, s, tol=tol, grid_n=grid_n)
    return BoundResult(s, lower, upper, lo_pt, up_pt, "numerical")


def closed_form_sum_uniform(fx, fy, s):
    """Bounds for X + Y with uniform marginals.

    The lower bound CDF is uniform on [min(x_lo + y_hi, y_lo + x_hi),
    x_hi + y_hi]; the upper bound CDF is uniform on [x_lo + y_lo,
    max(x_lo + y_hi, y_lo + x_hi)].
    """
    if not (isinstance(fx, Uniform) and isinstance(fy, Uniform)):
        raise TypeMismatch("closed_form_sum_uniform needs two Uniform marginals")
    lo_a = min(fx.lo + fy.hi, fy.lo + fx.hi)
    lo_b = fx.hi + fy.hi
    up_a = fx.lo + fy.lo
    up_b = max(fx.lo + fy.hi, fy.lo + fx.hi)
    lower = min(max((s - lo_a) / (lo_b - lo_a), 0.0), 1.0)
    upper = min(max((s - up_a) / (up_b - up_a), 0.0), 1.0)
    return BoundResult(
        s, lower, upper,
        _uniform_sum_argpoint(fx, fy, s, want_max=True),
        _uniform_sum_argpoint(fx, fy, s, want_max=False),
        "closed_form",
    )


def _uniform_sum_argpoint(fx, fy, s, want_max):
    """Optimizer location on {x + y = s}: the objective is linear inside the
    support box, so the optimum sits at an end of the curve segment."""
    a = max(fx.lo, s - fy.hi)
    b = min(fx.hi, s - fy.lo)
    if a > b:
        return None

    def val(x):
        return fx.cdf(x) + fy.cdf(s - x)

    pick = max if want_max else min
    x = pick((a, b), key=val)
    return (x, s - x)


def closed_form_sum_exponential(fx, fy, s):
    """Bounds for X + Y with exponential marginals (rates lam_x, lam_y).

    With scales a = 1/lam_x and b = 1/lam_y, the lower bound is the shifted
    exponential 1 - exp(-(s - k)/(a + b)) clipped at zero, where
    k = (a + b) ln(a + b) - b ln b - a ln a, attained at the stationary point
    x_star = ((s/b + ln(b/a)) a b)/(a + b) clamped to [0, s].  The upper
    bound is min(F_X(s), F_Y(s)), attained at an end of the curve segment.
    """
    if not (isinstance(fx, Exponential) and isinstance(fy, Exponential)):
        raise TypeMismatch("closed_form_sum_exponential needs two Exponential marginals")
    scale_x = 1.0 / fx.rate
    scale_y = 1.0 / fy.rate
    if s <= 0.0:
        return BoundResult(s, 0.0, 0.0, None, None, "closed_form")
    k = ((scale_x + scale_y) * math.log(scale_x + scale_y)
         - scale_y * math.log(scale_y) - scale_x * math.log(scale_x))
    lower = max(0.0, -math.expm1(-(s - k) / (scale_x + scale_y)))
    x_star = (s / scale_y + math.log(scale_y / scale_x)) * scale_x * scale_y
    x_star = min(max(x_star / (scale_x + scale_y), 0.0), s)
    fxs, fys = fx.cdf(s), fy.cdf(s)
    if fxs <= fys:
        upper, up_pt = fxs, (s, 0.0)
    else:
        upper, up_pt = fys, (0.0, s)
    return BoundResult(s, lower, upper, (x_star, s - x_star), up_pt, "closed_form")


def bound_result(fx, fy, op, s, tol=DEFAULT_TOL, method="auto"):
    """Bounds at s, preferring a closed form when one applies."""
    if method in ("auto", "closed_form") and op.kind == "Sum":
        if isinstance(fx, Uniform) and isinstance(fy, Uniform):
            return closed_form_sum_uniform(fx, fy, s)
        if isinstance(fx, Exponential) and isinstance(fy, Exponential):
            return closed_form_sum_exponential(fx, fy, s)
    if method == "closed_form":
        raise TypeMismatch(f"no closed form for {op.kind} with these marginals")
    return numerical_bounds(fx, fy, op, s, tol=tol)
