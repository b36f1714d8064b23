"""Outage-probability scenarios: point-to-point, two-user MAC, RIS product
channel, and the linear-correlation Rayleigh baseline."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import PRODUCT, SUM, bound_result, numerical_bounds
from .errors import DomainError
from .marginals import Exponential
from .numerics import DEFAULT_TOL, bessel_k1


@dataclass(frozen=True)
class RateConfig:
    """Transmission rate (bits per channel use) and linear SNR."""

    rate: float
    snr: float = 1.0

    def __post_init__(self):
        if self.rate < 0:
            raise DomainError(f"rate must be >= 0, got {self.rate}")
        if self.snr <= 0:
            raise DomainError(f"snr must be > 0, got {self.snr}")

    @property
    def threshold(self):
        """Channel-gain threshold s = (2^R - 1)/snr."""
        return (2.0 ** self.rate - 1.0) / self.snr


def snr_from_db(snr_db):
    return 10.0 ** (snr_db / 10.0)


@dataclass(frozen=True)
class MacThresholds:
    """Rate-region corner points of the two-user MAC outage events."""

    alpha: float  # 2^R1 - 1
    beta: float   # 2^R2 - 1
    s: float      # 2^(R1+R2) - 1

    @classmethod
    def from_rates(cls, r1, r2):
        if r1 < 0 or r2 < 0:
            raise DomainError(f"rates must be >= 0, got ({r1}, {r2})")
        return cls(2.0 ** r1 - 1.0, 2.0 ** r2 - 1.0, 2.0 ** (r1 + r2) - 1.0)


def _check_rates(lx, ly):
    if lx <= 0 or ly <= 0:
        raise DomainError(f"fading rates must be > 0, got ({lx}, {ly})")


def p2p_outage_bounds(lx, ly, cfg):
    """Bounds on P(X + Y < s) for Rayleigh point-to-point with two links."""
    _check_rates(lx, ly)
    return bound_result(Exponential(lx), Exponential(ly), SUM, cfg.threshold)


def _mac_g(fx, fy, x, y):
    return max(fx.cdf(x) + fy.cdf(y) - 1.0, 0.0)


def mac_outage_lower(lx, ly, r1, r2):
    """Worst-case two-user MAC outage probability (exponential gains).

    Optimizes max(F_X + F_Y - 1, 0) over the three segments of the outage
    boundary: the two axis-parallel segments contribute F_X(alpha) and
    F_Y(beta); on the diagonal x + y = s the optimum y is the stationary
    point y_opt = (lam_x s + ln(lam_y/lam_x))/(lam_x + lam_y) clamped to
    [beta, s - alpha].
    """
    _check_rates(lx, ly)
    th = MacThresholds.from_rates(r1, r2)
    fx, fy = Exponential(lx), Exponential(ly)
    y_opt = (lx * th.s + math.log(ly / lx)) / (lx + ly)
    y_star = min(max(y_opt, th.beta), th.s - th.alpha)
    g_mid = _mac_g(fx, fy, th.s - y_star, y_star)
    return max(fx.cdf(th.alpha), g_mid, fy.cdf(th.beta))


def mac_outage_upper(lx, ly, r1, r2):
    """Best-case two-user MAC outage probability (exponential gains)."""
    _check_rates(lx, ly)
    th = MacThresholds.from_rates(r1, r2)
    fx, fy = Exponential(lx), Exponential(ly)
    return min(fx.cdf(th.alpha) + fy.cdf(th.s - th.alpha),
               fx.cdf(th.s - th.beta) + fy.cdf(th.beta),
               1.0)


def _mac_boundary_segments(fx, fy, th, points):
    """Grid points (x, y) on the three segments of the outage boundary."""
    tail = 1.0 - 1e-12
    x_hi = fx.quantile(tail)
    y_hi = fy.quantile(tail)
    t = np.linspace(0.0, 1.0, points)
    segs = []
    # vertical: x = alpha, y from s - alpha upward
    segs.append((np.full(points, th.alpha),
                 th.s - th.alpha + t * max(y_hi - (th.s - th.alpha), 0.0)))
    # diagonal: x + y = s, x in [alpha, s - beta]
    x_diag = th.alpha + t * (th.s - th.beta - th.alpha)
    segs.append((x_diag, th.s - x_diag))
    # horizontal: y = beta, x from s - beta outward
    segs.append((th.s - th.beta + t * max(x_hi - (th.s - th.beta), 0.0),
                 np.full(points, th.beta)))
    return segs


def mac_bruteforce_lower(lx, ly, r1, r2, points=100_000):
    """Grid-search oracle for the MAC lower bound over the outage boundary."""
    _check_rates(lx, ly)
    th = MacThresholds.from_rates(r1, r2)
    fx, fy = Exponential(lx), Exponential(ly)
    best = 0.0
    for x, y in _mac_boundary_segments(fx, fy, th, points):
        g = np.maximum(fx.cdf(x) + fy.cdf(y) - 1.0, 0.0)
        best = max(best, float(g.max()))
    return best


def mac_bruteforce_upper(lx, ly, r1, r2, points=100_000):
    """Grid-search oracle for the MAC upper bound over the outage boundary."""
    _check_rates(lx, ly)
    th = MacThresholds.from_rates(r1, r2)
    fx, fy = Exponential(lx), Exponential(ly)
    best = 1.0
    for x, y in _mac_boundary_segments(fx, fy, th, points):
        h = np.minimum(fx.cdf(x) + fy.cdf(y), 1.0)
        best = min(best, float(h.min()))
    return best


def ris_independent_outage(lx, ly, cfg):
    """Outage probability of the product channel under independence:
    1 - 2 sqrt(lam_x lam_y s) K1(2 sqrt(lam_x lam_y s))."""
    _check_rates(lx, ly)
    s = cfg.threshold
    if s == 0.0:
        return 0.0
    z = 2.0 * math.sqrt(lx * ly * s)
    return 1.0 - z * bessel_k1(z)


def ris_outage_bounds(lx, ly, cfg, tol=DEFAULT_TOL):
    """Dependence-uncertainty bounds on the product-channel outage."""
    _check_rates(lx, ly)
    return numerical_bounds(Exponential(lx), Exponential(ly), PRODUCT,
                            cfg.threshold, tol=tol)


@dataclass(frozen=True)
class CorrelationModel:
    """Linear correlation model: h = (sqrt(1-rho) x_i + sqrt(rho) x_0)
    + i (sqrt(1-rho) y_i + sqrt(rho) y_0) with N(0, 1/2) components."""

    rho: float

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise DomainError(f"rho must be in [0, 1], got {self.rho}")


def correlated_rayleigh_outage_mc(model, cfg, n, rng):
    """Monte Carlo estimate of P(X + Y < s) under the correlation model.

    Returns (estimate, binomial standard error).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    s = cfg.threshold
    a = math.sqrt(1.0 - model.rho)
    b = math.sqrt(model.rho)
    x0 = rng.gaussian(0.0, 0.5, n)
    y0 = rng.gaussian(0.0, 0.5, n)
    gains = []
    for _ in range(2):
        xi = rng.gaussian(0.0, 0.5, n)
        yi = rng.gaussian(0.0, 0.5, n)
        re = a * xi + b * x0
        im = a * yi + b * y0
        gains.append(re * re + im * im)
    est = float(np.mean(gains[0] + gains[1] < s))
    stderr = math.sqrt(est * (1.0 - est) / n)
    return est, stderr
