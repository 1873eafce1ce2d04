"""Special functions used by the series expansions.

The incomplete gamma functions are evaluated in log space so that products
such as ``exp(k + 1) * Gamma(s, k + 1)`` can be formed without overflow.
The split between the power series for the lower function and the
continued fraction for the upper function follows the usual ``x = s + 1``
rule.  Negative or zero ``s`` (needed by the Renyi entropy when the NH
power shape is below one) is handled by downward recurrence.
"""

import math

import numpy as np
from scipy import special as sc

EULER_GAMMA = 0.57721566490153286061
_EPS = np.finfo(float).eps
_FPMIN = 1e-300
_MAX_ITER = 5000


def _log_lower_series(s, x):
    """log gamma(s, x) by the power series; s > 0, 0 < x < s + 1 (arrays)."""
    term = np.ones_like(x)
    total = np.ones_like(x)
    ap = s.copy()
    for _ in range(_MAX_ITER):
        ap = ap + 1.0
        term = term * x / ap
        total = total + term
        if np.all(np.abs(term) <= np.abs(total) * _EPS):
            break
    return -x + s * np.log(x) - np.log(s) + np.log(total)


def _log_upper_cf(s, x):
    """log Gamma(s, x) by the modified Lentz continued fraction (arrays)."""
    b = x + 1.0 - s
    c = np.full_like(x, 1.0 / _FPMIN)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _FPMIN, _FPMIN, d)
        c = b + an / c
        c = np.where(np.abs(c) < _FPMIN, _FPMIN, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= _EPS):
            break
    return -x + s * np.log(x) + np.log(h)


def _exp1_small(x):
    """E1(x) = Gamma(0, x) for 0 < x < 1 by its convergent series."""
    total = 0.0
    term = 1.0
    for k in range(1, 200):
        term *= -x / k
        piece = term / k
        total += piece
        if abs(piece) < _EPS * abs(total):
            break
    return -EULER_GAMMA - math.log(x) - total


def _upper_small_x_nonpositive_s(s, x):
    """Gamma(s, x) for s <= 0 and 0 < x < 1 by downward recurrence."""
    m = int(math.floor(-s)) + 1
    s0 = s + m
    lg = float(_log_lower_series(np.array([s0]), np.array([x]))[0])
    value = math.gamma(s0) - math.exp(lg)
    current = s0
    for _ in range(m):
        current -= 1.0
        if abs(current) < 1e-14:
            value = _exp1_small(x)
        else:
            value = (value - x**current * math.exp(-x)) / current
    return value


def log_upper_gamma(s, x):
    """Natural log of the upper incomplete gamma function Gamma(s, x).

    Accepts any real ``s`` when ``x > 0``; at ``x = 0`` requires ``s > 0``
    and returns ``log Gamma(s)``.
    """
    s_arr, x_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(x, dtype=float))
    s_arr = s_arr.astype(float).ravel()
    x_arr = x_arr.astype(float).ravel()
    if np.any(x_arr < 0) or np.any(~np.isfinite(s_arr)) or np.any(np.isnan(x_arr)):
        raise ValueError("incomplete gamma requires finite s and x >= 0")
    out = np.empty_like(x_arr)

    zero = x_arr == 0.0
    if np.any(zero & (s_arr <= 0)):
        raise ValueError("Gamma(s, 0) diverges for s <= 0")
    out[zero] = sc.gammaln(s_arr[zero])
    out[np.isposinf(x_arr)] = -np.inf

    live = ~zero & np.isfinite(x_arr)
    series = live & (s_arr > 0) & (x_arr < s_arr + 1.0)
    small = live & (s_arr <= 0) & (x_arr < 1.0)
    cf = live & ~series & ~small

    if np.any(series):
        ss, xs = s_arr[series], x_arr[series]
        log_p = _log_lower_series(ss, xs) - sc.gammaln(ss)
        out[series] = sc.gammaln(ss) + np.log1p(-np.exp(log_p))
    if np.any(cf):
        out[cf] = _log_upper_cf(s_arr[cf], x_arr[cf])
    for idx in np.flatnonzero(small):
        out[idx] = math.log(_upper_small_x_nonpositive_s(s_arr[idx], x_arr[idx]))

    shape = np.broadcast(np.asarray(s), np.asarray(x)).shape
    result = out.reshape(shape)
    return float(result) if result.ndim == 0 else result


def upper_gamma(s, x):
    """Upper incomplete gamma Gamma(s, x) (not regularized)."""
    return np.exp(log_upper_gamma(s, x))


def lower_gamma(s, x):
    """Lower incomplete gamma gamma(s, x) (not regularized), s > 0."""
    s_arr, x_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(x, dtype=float))
    if np.any(s_arr <= 0):
        raise ValueError("lower incomplete gamma requires s > 0")
    s_flat = s_arr.astype(float).ravel()
    x_flat = x_arr.astype(float).ravel()
    out = np.zeros_like(x_flat)
    series = (x_flat > 0) & (x_flat < s_flat + 1.0)
    if np.any(series):
        out[series] = np.exp(_log_lower_series(s_flat[series], x_flat[series]))
    rest = x_flat >= s_flat + 1.0
    if np.any(rest):
        full = sc.gamma(s_flat[rest])
        out[rest] = full - np.exp(log_upper_gamma(s_flat[rest], x_flat[rest]))
    result = out.reshape(s_arr.shape)
    return float(result) if result.ndim == 0 else result


def binom_real(nu, k):
    """Generalized binomial coefficient C(nu, k) for real nu and integer k >= 0.

    Uses log-gamma with sign tracking; integer ``nu >= 0`` is handled exactly
    so that coefficients beyond ``nu`` are exactly zero.
    """
    k = np.asarray(k, dtype=float)
    nu = float(nu)
    if nu >= 0 and float(nu).is_integer():
        out = np.where(k <= nu, sc.comb(nu, k, exact=False), 0.0)
        return float(out) if out.ndim == 0 else out
    if nu < 0 and float(nu).is_integer():
        # C(-m, k) = (-1)^k C(m + k - 1, k); the log-gamma form hits poles.
        m = -nu
        log_abs = sc.gammaln(m + k) - sc.gammaln(k + 1.0) - sc.gammaln(m)
        sign = np.where(k % 2 == 0, 1.0, -1.0)
    else:
        log_abs = sc.gammaln(nu + 1.0) - sc.gammaln(k + 1.0) - sc.gammaln(nu - k + 1.0)
        sign = sc.gammasgn(nu + 1.0) * sc.gammasgn(nu - k + 1.0)
    out = sign * np.exp(log_abs)
    return float(out) if out.ndim == 0 else out


def log1mexp(y):
    """log(1 - exp(y)) for y <= 0, accurate at both ends."""
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(
            y > -math.log(2.0),
            np.log(-np.expm1(np.minimum(y, 0.0))),
            np.log1p(-np.exp(np.minimum(y, 0.0))),
        )
    return float(out) if out.ndim == 0 else out
