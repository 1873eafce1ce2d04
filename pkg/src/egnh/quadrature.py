"""Adaptive-quadrature oracles for moments and related integrals.

These are deliberately independent of the series code: they only touch the
density through :func:`egnh.distribution.log_pdf` and integrate with
QUADPACK over pieces split at fixed quantiles, which keeps the beta < 1
singularity at the origin and the long upper tail in separate panels.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .distribution import EgnhParams, _params, log_pdf, quantile
from .errors import DomainError, QuadratureFailure

SPLIT_PROBABILITIES = (1e-8, 1e-4, 0.5, 1 - 1e-4, 1 - 1e-8)
_LOG_SPAN = 100.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    abserr: float

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class Power:
    """Selects ``E[X^r]``."""

    r: float = 1


@dataclass(frozen=True)
class Mgf:
    """Selects ``E[exp(t X)]``."""

    t: float


@dataclass(frozen=True)
class Incomplete:
    """Selects ``E[X^r 1{X <= z}]``."""

    z: float
    r: float = 1


def split_points(theta) -> np.ndarray:
    return np.asarray(quantile(_params(theta), np.array(SPLIT_PROBABILITIES)))


def integrate_pieces(integrand, breaks, upper=math.inf, rtol=1e-9, limit=200) -> QuadResult:
    """Integrate ``integrand`` over ``(0, upper)`` split at ``breaks``."""
    edges = [0.0] + [float(b) for b in breaks if 0.0 < b < upper] + [upper]
    total = 0.0
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        if lo > 0.0 and math.isfinite(hi) and hi / lo > _LOG_SPAN:
            # a piece spanning many decades is integrated in t = log x;
            # otherwise QUADPACK's endpoint extrapolation mistakes the
            # x^(beta-1) shape for a singularity at lo
            value, abserr = integrate.quad(
                lambda t: integrand(math.exp(t)) * math.exp(t),
                math.log(lo),
                math.log(hi),
                epsabs=0.0,
                epsrel=1e-12,
                limit=limit,
            )
        else:
            value, abserr = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-12, limit=limit)
        total += value
        err += abserr
    if not math.isfinite(total) or err > rtol * max(abs(total), 1e-300):
        raise QuadratureFailure(f"quadrature error estimate {err:.3g} exceeds tolerance for value {total:.6g}")
    return QuadResult(total, err)


def expect(theta, g, upper=math.inf, rtol=1e-9) -> QuadResult:
    """``int_0^upper g(x) f(x) dx`` for a scalar function ``g``."""
    theta = _params(theta)

    def integrand(x):
        if x <= 0.0:
            return 0.0
        lp = log_pdf(theta, x)
        return g(x) * math.exp(lp) if lp > -745.0 else 0.0

    return integrate_pieces(integrand, split_points(theta), upper=upper, rtol=rtol)


def mgf_exists(theta, t: float) -> bool:
    """Whether ``E[exp(tX)]`` is finite.

    The survival function decays like ``exp(-alpha (a x)^b)``: faster than
    any exponential for b > 1, like ``exp(-alpha a x)`` at b = 1, and slower
    than any exponential for b < 1.
    """
    theta = _params(theta)
    if t <= 0:
        return True
    if theta.b > 1:
        return True
    if theta.b == 1:
        return t < theta.alpha * theta.a
    return False


def quadrature_moment(theta, selector=1, rtol=1e-9) -> QuadResult:
    """Quadrature value of a moment-type integral against the density.

    ``selector`` is an integer power ``r`` (shorthand for ``Power(r)``),
    :class:`Power`, :class:`Mgf` or :class:`Incomplete`.
    """
    theta = _params(theta)
    if isinstance(selector, (int, float, np.integer, np.floating)):
        selector = Power(selector)
    if isinstance(selector, Power):
        r = float(selector.r)
        if r < 0:
            raise DomainError("power selector requires r >= 0")
        return expect(theta, lambda x: x**r, rtol=rtol)
    if isinstance(selector, Mgf):
        t = float(selector.t)
        if not mgf_exists(theta, t):
            raise DomainError(f"moment generating function diverges at t={t:g} for {theta}")
        return expect(theta, lambda x: math.exp(t * x), rtol=rtol)
    if isinstance(selector, Incomplete):
        z = float(selector.z)
        r = float(selector.r)
        if z <= 0:
            raise DomainError("incomplete moment requires z > 0")
        return expect(theta, lambda x: x**r, upper=z, rtol=rtol)
    raise TypeError(f"unknown selector {selector!r}")


def mgf(theta, t: float, rtol=1e-9) -> QuadResult:
    return quadrature_moment(theta, Mgf(t), rtol=rtol)


def power_integral(theta, lam: float, rtol=1e-9) -> QuadResult:
    """``int_0^inf f(x)^lam dx``, the quantity inside the Renyi entropy."""
    theta = _params(theta)

    def integrand(x):
        if x <= 0.0:
            return 0.0
        return math.exp(lam * log_pdf(theta, x))

    return integrate_pieces(integrand, split_points(theta), rtol=rtol)


def shannon_entropy(theta, rtol=1e-9) -> QuadResult:
    """``-E[log f(X)]``, the Renyi entropy in the limit of order one."""
    theta = _params(theta)
    return expect(theta, lambda x: -float(log_pdf(theta, x)), rtol=rtol)


def absolute_deviation(theta: EgnhParams, center: float, rtol=1e-9) -> QuadResult:
    """``E|X - center|`` by direct quadrature, split at ``center``."""
    theta = _params(theta)

    def integrand(x):
        if x <= 0.0:
            return 0.0
        return abs(x - center) * math.exp(log_pdf(theta, x))

    breaks = np.sort(np.append(split_points(theta), center))
    return integrate_pieces(integrand, breaks, rtol=rtol)
