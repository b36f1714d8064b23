"""Two-dimensional copulas: extremal bounds, product copula, validity checks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Copula:
    """A copula given by name ('W', 'M', 'Pi') or a custom callable.

    W(a, b) = max(a + b - 1, 0) and M(a, b) = min(a, b) are the extremal
    copulas bracketing every copula; Pi(a, b) = a * b is independence.
    Custom functions are treated as black boxes and can be screened with
    check_copula.
    """

    kind: str
    func: object = field(default=None, compare=False)

    def eval(self, a, b):
        a, b = _check_unit(a), _check_unit(b)
        if self.kind == "W":
            return max(a + b - 1.0, 0.0)
        if self.kind == "M":
            return min(a, b)
        if self.kind == "Pi":
            return a * b
        return float(self.func(a, b))

    def dual(self, a, b):
        """Dual copula a + b - C(a, b)."""
        return a + b - self.eval(a, b)


W = Copula("W")
M = Copula("M")
PI = Copula("Pi")


def custom(func):
    return Copula("Custom", func)


def _check_unit(v):
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"copula argument outside [0, 1]: {v}")
    return v


def sklar_joint_cdf(c, fx, fy, x, y):
    """Joint CDF H(x, y) = C(F_X(x), F_Y(y))."""
    return c.eval(fx.cdf(x), fy.cdf(y))


@dataclass
class Violation:
    kind: str          # 'boundary' or 'rectangle'
    location: tuple
    magnitude: float


@dataclass
class ValidityReport:
    grid_n: int
    violations: list

    @property
    def is_valid(self):
        return not self.violations

    def worst(self):
        return max((v.magnitude for v in self.violations), default=0.0)


def check_copula(c, grid_n=200, atol=1e-12):
    """Screen a copula on a uniform grid: boundary conditions and the
    2-increasing rectangle inequality over all adjacent grid rectangles.
    Violations are reported as data, not raised.
    """
    if grid_n < 2:
        raise DomainError("grid_n must be >= 2")
    grid = np.linspace(0.0, 1.0, grid_n)
    vals = np.array([[c.eval(a, b) for b in grid] for a in grid])
    violations = []
    for i, a in enumerate(grid):
        for edge, expect in (((i, 0), 0.0), ((i, grid_n - 1), a),
                             ((0, i), 0.0), ((grid_n - 1, i), a)):
            got = vals[edge]
            if abs(got - expect) > atol:
                loc = (grid[edge[0]], grid[edge[1]])
                violations.append(Violation("boundary", loc, abs(got - expect)))
    rect = vals[1:, 1:] - vals[1:, :-1] - vals[:-1, 1:] + vals[:-1, :-1]
    bad = np.argwhere(rect < -atol)
    for i, j in bad:
        loc = (grid[i], grid[j], grid[i + 1], grid[j + 1])
        violations.append(Violation("rectangle", loc, float(-rect[i, j])))
    return ValidityReport(grid_n, violations)


def sample_mixture(weights, n, rng):
    """Sample n pairs (u, v) on the unit square from a convex mixture of the
    three named copulas.  weights = (w_W, w_M, w_Pi) must sum to 1."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (3,) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
        raise DomainError(f"weights must be a 3-simplex point, got {weights}")
    u = rng.uniform(n)
    pick = rng.uniform(n)
    v = np.empty_like(u)
    in_w = pick < w[0]
    in_m = (~in_w) & (pick < w[0] + w[1])
    in_pi = ~(in_w | in_m)
    v[in_w] = 1.0 - u[in_w]
    v[in_m] = u[in_m]
    v[in_pi] = rng.uniform(int(in_pi.sum()))
    return u, v


def sample_pairs(c, n, rng):
    """Sample n pairs (u, v) from one of the named copulas W, M, Pi."""
    if c.kind == "W":
        return sample_mixture((1.0, 0.0, 0.0), n, rng)
    if c.kind == "M":
        return sample_mixture((0.0, 1.0, 0.0), n, rng)
    if c.kind == "Pi":
        return sample_mixture((0.0, 0.0, 1.0), n, rng)
    raise DomainError(f"sampling not supported for copula kind {c.kind!r}")
