"""One-dimensional continuous marginal distributions (uniform, exponential)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


class Marginal:
    """Common interface: cdf, quantile, support.

    cdf clamps outside the support (level-curve evaluation walks through
    points outside the support box).  quantile(1) may be +inf for unbounded
    supports; callers on level curves work in compactified CDF space.
    """

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, p):
        raise NotImplementedError

    def support(self):
        raise NotImplementedError

    def sample(self, rng, n=None):
        """Inverse-CDF sampling from a RandomSource."""
        return self.quantile(rng.uniform(n))


@dataclass(frozen=True)
class Uniform(Marginal):
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"Uniform requires lo < hi, got [{self.lo}, {self.hi}]")

    def cdf(self, x):
        t = (np.asarray(x, dtype=float) - self.lo) / (self.hi - self.lo)
        out = np.clip(t, 0.0, 1.0)
        return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out

    def quantile(self, p):
        p = _check_prob(p)
        return self.lo + p * (self.hi - self.lo)

    def support(self):
        return (self.lo, self.hi)

    def __str__(self):
        return f"uniform:{self.lo:g}:{self.hi:g}"


@dataclass(frozen=True)
class Exponential(Marginal):
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise DomainError(f"Exponential requires rate > 0, got {self.rate}")

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        out = np.where(xa <= 0.0, 0.0, -np.expm1(-self.rate * np.maximum(xa, 0.0)))
        return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out

    def quantile(self, p):
        p = _check_prob(p)
        with np.errstate(divide="ignore"):
            out = -np.log1p(-np.asarray(p, dtype=float)) / self.rate
        return float(out) if np.ndim(p) == 0 else out

    def support(self):
        return (0.0, math.inf)

    def __str__(self):
        return f"exp:{self.rate:g}"


def _check_prob(p):
    pa = np.asarray(p, dtype=float)
    if np.any(pa < 0.0) or np.any(pa > 1.0):
        raise DomainError(f"probability outside [0, 1]: {p}")
    return pa


def parse_marginal(text):
    """Parse the CLI constructor syntax `uniform:a:b` or `exp:rate`."""
    parts = text.strip().split(":")
    try:
        if parts[0] == "uniform" and len(parts) == 3:
            return Uniform(float(parts[1]), float(parts[2]))
        if parts[0] == "exp" and len(parts) == 2:
            return Exponential(float(parts[1]))
    except ValueError as exc:
        raise DomainError(f"bad marginal spec {text!r}: {exc}") from None
    raise DomainError(
        f"bad marginal spec {text!r}; expected 'uniform:a:b' or 'exp:rate'"
    )
