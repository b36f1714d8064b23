"""Self-contained numerical primitives.

Bracketing root finder, grid + golden-section scalar optimizer, the modified
Bessel function of the second kind K1, and a seedable random source.  The
rest of the package builds on these instead of pulling in scipy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInterval, MaxIterExceeded, NoBracket

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi, golden-section step ratio
_EULER_GAMMA = 0.5772156649015328606


@dataclass(frozen=True)
class Tolerance:
    """Convergence control for the iterative routines."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")


DEFAULT_TOL = Tolerance()


def find_root(f, lo, hi, tol=DEFAULT_TOL):
    """Root of a continuous f on a bracketing interval [lo, hi].

    Secant steps accelerated by a bisection fallback, so convergence is
    guaranteed for any continuous f with f(lo)*f(hi) <= 0.
    """
    if lo > hi:
        raise InvalidInterval(f"lo={lo} > hi={hi}")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoBracket(f"f({lo})={flo} and f({hi})={fhi} have the same sign")
    a, b, fa, fb = lo, hi, flo, fhi
    for _ in range(tol.max_iter):
        width = b - a
        if width <= tol.abs_tol + tol.rel_tol * max(abs(a), abs(b)):
            return 0.5 * (a + b)
        # secant candidate, rejected if it leaves the bracket interior
        denom = fb - fa
        if denom != 0.0:
            x = b - fb * (b - a) / denom
        else:
            x = 0.5 * (a + b)
        if not (a + 0.01 * width < x < b - 0.01 * width):
            x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if fa * fx < 0.0:
            b, fb = x, fx
        else:
            a, fa = x, fx
    raise MaxIterExceeded(f"no convergence after {tol.max_iter} iterations")


def maximize_scalar(f, lo, hi, tol=DEFAULT_TOL, grid_n=257):
    """Maximize f on [lo, hi]: coarse grid scan, then golden-section refinement.

    Returns (argmax, max).  The refinement is run on the bracket formed by the
    neighbours of the best grid point, so the result never falls below the
    grid maximum.
    """
    if lo > hi:
        raise InvalidInterval(f"lo={lo} > hi={hi}")
    if grid_n < 3:
        raise DomainError("grid_n must be >= 3")
    if lo == hi:
        return lo, f(lo)
    xs = np.linspace(lo, hi, grid_n)
    fs = np.array([f(x) for x in xs])
    i = int(np.argmax(fs))
    best_x, best_f = float(xs[i]), float(fs[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, grid_n - 1)])

    # golden-section on [a, b]
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(tol.max_iter):
        if b - a <= tol.abs_tol + tol.rel_tol * max(abs(a), abs(b)):
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
    xm = 0.5 * (a + b)
    fm = f(xm)
    for x, fx in ((x1, f1), (x2, f2), (xm, fm)):
        if fx > best_f:
            best_x, best_f = float(x), float(fx)
    return best_x, best_f


def minimize_scalar(f, lo, hi, tol=DEFAULT_TOL, grid_n=257):
    """Minimize f on [lo, hi] via maximize_scalar of -f."""
    x, v = maximize_scalar(lambda t: -f(t), lo, hi, tol=tol, grid_n=grid_n)
    return x, -v


# --- modified Bessel function K1 ------------------------------------------
#
# Three branches:
#   x <= 2      ascending series with the log term (A&S 9.6.11), which is
#               convergent and numerically clean on this range,
#   2 < x <= 8  Chebyshev expansion of exp(x)*sqrt(x)*K1(x) fitted on
#               x in [1.25, 9] (overlaps the series range for cross-checks),
#   x > 8       Chebyshev expansion in 16/x - 1 of the same scaled function.
# Both coefficient tables were generated offline from a 50-digit reference
# evaluation and verified to <4e-15 relative error on dense grids.

_K1_CHEB_MID = np.array([
    2.7585752316940384567, -0.10783546707894763276, 0.046440946882918209234,
    -0.020105826028418575286, 0.0087437004245251998176,
    -0.0038172657318467068061, 0.0016721379716856424233,
    -0.00073463394639965673665, 0.00032359053637621798811,
    -0.00014286230096717672595, 6.3201481263900231156e-05,
    -2.8011187752199152797e-05, 1.243513566496175287e-05,
    -5.5286015399759352919e-06, 2.4613078998823531701e-06,
    -1.097110215447308813e-06, 4.8957860272829162727e-07,
    -2.1869663720542059933e-07, 9.7785303003711291125e-08,
    -4.3760789355509728601e-08, 1.9599657901755863431e-08,
    -8.7849295148850419898e-09, 3.9403223656003928505e-09,
    -1.76851353445638203e-09, 7.9423610766159231064e-10,
    -3.5689350282575540919e-10, 1.6045753817677749121e-10,
    -7.2177214360117152896e-11, 3.2482231283538577111e-11,
    -1.4624655215536518972e-11, 6.587318937737801769e-12,
    -2.9682808784680756099e-12, 1.3380266416220823664e-12,
    -6.0335972340118821244e-13, 2.7215478342459195848e-13,
    -1.2277182209511694508e-13, 5.5339651567330142799e-14,
    -2.4816723804395075859e-14, 1.0832905021554297947e-14,
    -4.0638465689234770866e-15,
])
_K1_CHEB_MID_RANGE = (1.25, 9.0)

_K1_CHEB_FAR = np.array([
    2.5637930834373900104, 0.028328878130497209358,
    -0.00024753706739052503454, 5.7719724516072488205e-06,
    -2.0689392195365483027e-07, 9.7399834413818041803e-09,
    -5.5853361403806249847e-10, 3.7329966340461852402e-11,
    -2.8250519610232254451e-12, 2.3720190024841441736e-13,
    -2.1766773879917539793e-14, 2.1579141616160324539e-15,
    -2.290196930718269276e-16, 2.5828857298232749619e-17,
    -3.0767526412684631876e-18,
])


def _cheb_eval(coeffs, t):
    """Clenshaw evaluation; coeffs[0] enters with weight 1/2."""
    b0 = b1 = 0.0
    for c in coeffs[:0:-1]:
        b0, b1 = 2.0 * t * b0 - b1 + c, b0
    return t * b0 - b1 + 0.5 * coeffs[0]


def _k1_small(x):
    """Ascending series with log term; convergent, intended for x <= 2.5."""
    q = 0.25 * x * x
    # I1 by its power series
    term = 0.5 * x
    i1 = term
    for k in range(1, 60):
        term *= q / (k * (k + 1))
        i1 += term
        if abs(term) < 1e-18 * abs(i1):
            break
    # sum_k [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!)
    psi_a = -_EULER_GAMMA
    psi_b = 1.0 - _EULER_GAMMA
    coef = 1.0
    total = psi_a + psi_b
    for k in range(1, 60):
        coef *= q / (k * (k + 1))
        psi_a += 1.0 / k
        psi_b += 1.0 / (k + 1)
        t = (psi_a + psi_b) * coef
        total += t
        if abs(t) < 1e-18 * abs(total):
            break
    return 1.0 / x + math.log(0.5 * x) * i1 - 0.25 * x * total


def _k1_large(x):
    """Scaled Chebyshev branches; valid for x >= 1.25."""
    if x <= 8.0:
        a, b = _K1_CHEB_MID_RANGE
        t = (2.0 * x - a - b) / (b - a)
        scaled = _cheb_eval(_K1_CHEB_MID, t)
    else:
        scaled = _cheb_eval(_K1_CHEB_FAR, 16.0 / x - 1.0)
    return scaled * math.exp(-x) / math.sqrt(x)


def bessel_k1(x):
    """Modified Bessel function of the second kind, order 1, for x > 0."""
    if x <= 0.0:
        raise DomainError(f"bessel_k1 requires x > 0, got {x}")
    if x <= 2.0:
        return _k1_small(x)
    if x > 700.0:
        return 0.0  # exp(-x) underflows double precision
    return _k1_large(x)


# --- random source ----------------------------------------------------------


class RandomSource:
    """Seedable random stream; identical seeds give bit-identical streams.

    Uniform variates come from a PCG64 generator.  Gaussians are produced by
    the Box-Muller transform of two uniforms (z = sqrt(-2 ln(1-u1)) *
    cos(2 pi u2)), keeping the mapping from the uniform stream explicit and
    reproducible.
    """

    def __init__(self, seed):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def spawn(self, index):
        """Independent source derived as seed + index (for parallel sweeps)."""
        return RandomSource(self.seed + int(index))

    def uniform(self, n=None):
        """Uniform variates in [0, 1); scalar if n is None, else ndarray."""
        if n is None:
            return float(self._gen.random())
        return self._gen.random(int(n))

    def gaussian(self, mean=0.0, var=1.0, n=None):
        """Gaussian variates via Box-Muller; var=0 returns mean exactly."""
        if var < 0.0:
            raise DomainError(f"variance must be >= 0, got {var}")
        if var == 0.0:
            if n is None:
                return float(mean)
            return np.full(int(n), float(mean))
        sd = math.sqrt(var)
        if n is None:
            u1, u2 = self._gen.random(), self._gen.random()
            z = math.sqrt(-2.0 * math.log1p(-u1)) * math.cos(2.0 * math.pi * u2)
            return mean + sd * z
        m = int(n)
        u1 = self._gen.random(m)
        u2 = self._gen.random(m)
        z = np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)
        return mean + sd * z


def next_uniform(rng):
    """Next uniform variate in [0, 1) from the source."""
    return rng.uniform()


def next_gaussian(rng, mean=0.0, var=1.0):
    """Next Gaussian variate from the source."""
    return rng.gaussian(mean, var)
