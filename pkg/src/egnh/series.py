"""Series expansions for moments, incomplete moments, entropy and order statistics.

The density admits the mixture representation

    f(x) = sum_j u_j h_{j+1}(x),   u_j = alpha beta t_j / (j + 1),

where ``h_{j+1}`` is the exponentiated-NH density with power ``j + 1`` and

    t_j = sum_i (-1)^(i+j) C(beta - 1, i) C(alpha (i + 1) - 1, j).

For integer ``beta`` the i-sum is finite, and for integer ``alpha`` as well
the j-sum stops at ``alpha beta - 1``; those cases are evaluated exactly.
For non-integer ``beta`` the i-sum diverges (its terms grow like
``i^(j - beta)``), so every routine that needs the coefficients raises
:class:`NonConvergence` there instead of returning a number.

Each public routine returns a :class:`SeriesValue` that carries the error
estimate, the stopping rule that fired and the discrepancy to an
independent quadrature value.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sc

from . import quadrature as quad
from .distribution import _kernel, _log_cdf, _log_pdf_positive, _log_sf, _params, cdf, quantile
from .errors import DomainError, NonConvergence, SeriesOracleMismatch, SeriesPrecisionWarning
from .special import binom_real, log_upper_gamma

# relative accuracy of a single term built from log_upper_gamma
_TERM_REL_ERR = 2e-13


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation controls shared by every infinite sum.

    Summation stops at the first of: the estimated truncation error falls
    below ``max(abs_tol, rel_tol * |sum|)``, or ``max_terms`` terms have been
    used (which raises :class:`NonConvergence`).
    """

    max_terms: int = 20000
    abs_tol: float = 1e-14
    rel_tol: float = 1e-8

    def __post_init__(self):
        if int(self.max_terms) < 1:
            raise DomainError("max_terms must be >= 1")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_POLICY = SeriesPolicy()


@dataclass(frozen=True)
class SeriesValue:
    """A series result with its diagnostics.

    ``oracle`` and ``discrepancy`` are filled when the quadrature cross-check
    ran; ``method`` is ``"quadrature"`` when an ill-conditioned series was
    replaced by the oracle.
    """

    value: float
    error_estimate: float
    n_terms: int
    stop_rule: str
    method: str = "series"
    condition: float = 1.0
    oracle: float = None
    oracle_error: float = None
    discrepancy: float = None

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class ExpansionCoeffs:
    w: np.ndarray
    t: np.ndarray
    u: np.ndarray
    truncation_report: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(v == "finite" for v in self.truncation_report.values())


def _is_int(v: float) -> bool:
    return float(v).is_integer()


def _require_integer_beta(theta, what):
    if not _is_int(theta.beta):
        raise NonConvergence(
            f"{what}: the expansion in powers of G(x) diverges for non-integer beta "
            f"(beta={theta.beta:g}); the inner sum over i has terms growing like i^(j-beta)"
        )


# --------------------------------------------------------------------------
# generic summation


def _power_tail(terms: np.ndarray):
    """Estimate the remainder of a series from its computed terms.

    Assumes the tail is eventually of one sign with algebraic or faster
    decay, fits ``|T_k| ~ k^-p`` on two windows and integrates the fit.
    The spread between the two fits is returned as the error.  Oscillating
    tails fall back to the alternating-series bound.
    """
    n = len(terms)
    if n < 16:
        return 0.0, math.inf
    tail_region = terms[n // 4 :]
    if np.all(tail_region == 0.0):
        return 0.0, 0.0
    signs = np.sign(tail_region[tail_region != 0.0])
    if not (np.all(signs > 0) or np.all(signs < 0)):
        return 0.0, float(np.max(np.abs(terms[-4:])))
    m3, m2, m1 = n, n // 2, n // 4
    t3, t2, t1 = abs(terms[m3 - 1]), abs(terms[m2 - 1]), abs(terms[m1 - 1])
    if t3 == 0.0 or t2 == 0.0 or t1 == 0.0:
        return 0.0, t3
    p_hi = math.log(t2 / t3) / math.log(m3 / m2)
    p_lo = math.log(t1 / t2) / math.log(m2 / m1)
    if p_hi <= 1.0:
        return math.inf, math.inf

    def tail(p):
        if p <= 1.0:
            return math.inf
        return t3 * (m3 / (p - 1.0) - 0.5 + p / (12.0 * m3))

    sign = float(signs[0])
    hi = tail(p_hi)
    lo = tail(p_lo)
    return sign * hi, abs(hi - lo) + t3 * 1e-3


def _sum_infinite(block, policy: SeriesPolicy, what: str, guard=None):
    """Sum ``block(start, stop)`` terms until the tail estimate is small.

    ``guard(terms)`` may raise to abort on loss of precision.
    """
    pieces = []
    start = 0
    size = 64
    cap = int(policy.max_terms)
    while True:
        stop = min(start + size, cap)
        pieces.append(np.asarray(block(start, stop), dtype=float))
        start = stop
        terms = np.concatenate(pieces)
        if guard is not None:
            guard(terms)
        partial = math.fsum(terms)
        tail, err = _power_tail(terms)
        total = partial + tail
        if math.isfinite(err) and err <= policy.tolerance(total):
            return total, err, len(terms), "tolerance"
        if start >= cap:
            raise NonConvergence(
                f"{what}: {cap} terms used, estimated truncation error {err:.3g} "
                f"exceeds tolerance {policy.tolerance(total):.3g}"
            )
        size *= 2


# --------------------------------------------------------------------------
# expansion coefficients


def _exact_t(alpha: int, beta: int):
    top = alpha * beta - 1
    t = []
    for j in range(top + 1):
        acc = 0
        for i in range(beta):
            nu = alpha * (i + 1) - 1
            if j <= nu:
                acc += (-1) ** (i + j) * math.comb(beta - 1, i) * math.comb(nu, j)
        t.append(acc)
    return np.array(t, dtype=float)


def _exact_w(alpha: int, beta: int):
    top = alpha * beta
    w = []
    for j in range(top + 1):
        acc = 0
        for i in range(beta + 1):
            if j <= i * alpha:
                acc += (-1) ** (i + j) * math.comb(beta, i) * math.comb(i * alpha, j)
        w.append(acc)
    return np.array(w, dtype=float)


def _real_alpha_coeffs(alpha: float, beta: int, policy: SeriesPolicy):
    """t_j and w_j for integer beta and real alpha; the j-sum is infinite."""

    def t_block(start, stop):
        j = np.arange(start, stop, dtype=float)
        acc = np.zeros_like(j)
        for i in range(beta):
            acc += (-1.0) ** i * math.comb(beta - 1, i) * binom_real(alpha * (i + 1) - 1.0, j)
        return acc * np.where(j % 2 == 0, 1.0, -1.0)

    def w_block(start, stop):
        j = np.arange(start, stop, dtype=float)
        acc = np.zeros_like(j)
        for i in range(beta + 1):
            acc += (-1.0) ** i * math.comb(beta, i) * binom_real(alpha * i, j)
        return acc * np.where(j % 2 == 0, 1.0, -1.0)

    scale = alpha * beta

    def u_block(start, stop):
        j = np.arange(start, stop, dtype=float)
        return scale * t_block(start, stop) / (j + 1.0)

    _, _, n_u, rule_u = _sum_infinite(u_block, policy, "sum of u_j")
    _, _, n_w, rule_w = _sum_infinite(w_block, policy, "sum of w_j")
    n = max(n_u, n_w)
    t = t_block(0, n)
    w = w_block(0, n)
    return w, t, {"w": rule_w, "t": rule_u, "u": rule_u}


def expansion_coeffs(theta, policy: SeriesPolicy = DEFAULT_POLICY) -> ExpansionCoeffs:
    """Mixture weights ``w_j`` (cdf), ``t_j`` (pdf) and ``u_j``.

    Integer ``alpha`` and ``beta`` give finite exact coefficients computed
    in integer arithmetic.  Integer ``beta`` with real ``alpha`` truncates
    the j-series by the tail of ``sum u_j``.  Non-integer ``beta`` raises
    :class:`NonConvergence`.
    """
    theta = _params(theta)
    _require_integer_beta(theta, "expansion coefficients")
    beta = int(theta.beta)
    if _is_int(theta.alpha):
        alpha = int(theta.alpha)
        t = _exact_t(alpha, beta)
        w = _exact_w(alpha, beta)
        report = {"w": "finite", "t": "finite", "u": "finite"}
    else:
        w, t, report = _real_alpha_coeffs(theta.alpha, beta, policy)
    j = np.arange(len(t), dtype=float)
    u = theta.alpha * theta.beta * t / (j + 1.0)
    for arr in (w, t, u):
        arr.setflags(write=False)
    return ExpansionCoeffs(w=w, t=t, u=u, truncation_report=report)


def enh_pdf(power: float, a: float, b: float, x):
    """Exponentiated NH density ``power * g(x) * G(x)^(power - 1)``."""
    x = np.asarray(x, dtype=float)
    l1 = np.log1p(a * x)
    y = -np.expm1(b * l1)
    log_g = math.log(a * b) + (b - 1.0) * l1 + y
    with np.errstate(divide="ignore"):
        log_big_g = np.log(-np.expm1(y))
    out = power * np.exp(log_g + (power - 1.0) * log_big_g) if power != 1 else np.exp(log_g)
    return float(out) if np.ndim(out) == 0 else out


def mixture_pdf(theta, x, coeffs: ExpansionCoeffs = None, n_terms: int = None):
    """Truncated mixture ``sum_{j < n_terms} u_j h_{j+1}(x)``."""
    theta = _params(theta)
    if coeffs is None:
        coeffs = expansion_coeffs(theta)
    u = coeffs.u if n_terms is None else coeffs.u[:n_terms]
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for j, uj in enumerate(u):
        if uj != 0.0:
            total = total + uj * enh_pdf(j + 1, theta.a, theta.b, x)
    return float(total) if total.ndim == 0 else total


# --------------------------------------------------------------------------
# ordinary moments


def _moment_inner_terms(j: int, r: int, b: float) -> np.ndarray:
    """Terms of sum_k sum_l (-1)^(k+r+l) C(j,k) C(r,l) e^(k+1) Gamma(l/b+1, k+1) / (k+1)^(l/b+1)."""
    k = np.arange(j + 1, dtype=float)[:, None]
    l = np.arange(r + 1, dtype=float)[None, :]
    s = l / b + 1.0
    log_mag = (
        sc.gammaln(j + 1.0) - sc.gammaln(k + 1.0) - sc.gammaln(j - k + 1.0)
        + sc.gammaln(r + 1.0) - sc.gammaln(l + 1.0) - sc.gammaln(r - l + 1.0)
        + (k + 1.0) + log_upper_gamma(s, k + 1.0) - s * np.log(k + 1.0)
    )
    sign = np.where((k + r + l) % 2 == 0, 1.0, -1.0)
    return (sign * np.exp(log_mag)).ravel()


def _check_method(method):
    if method not in ("auto", "series", "quadrature"):
        raise ValueError(f"unknown method {method!r}")


def _finish(theta, value, err, n, rule, condition, oracle_fn, policy, check, method, what, scale=0.0):
    """Apply precision routing and the quadrature cross-check.

    ``scale`` sets a floor on the magnitude the relative tolerance applies
    to, for quantities (like an entropy) that can pass through zero.
    """
    tol = policy.tolerance(max(abs(value), scale))
    ill = err > tol
    if ill and method == "auto":
        warnings.warn(
            f"{what}: cancellation leaves error {err:.3g}; using quadrature instead",
            SeriesPrecisionWarning,
            stacklevel=3,
        )
        res = oracle_fn()
        return SeriesValue(res.value, res.abserr, n, rule, "quadrature", condition, res.value, res.abserr, 0.0)
    if ill:
        warnings.warn(f"{what}: series lost precision to cancellation (error {err:.3g})", SeriesPrecisionWarning, stacklevel=3)
    if not check:
        return SeriesValue(value, err, n, rule, "series", condition)
    res = oracle_fn()
    discrepancy = abs(value - res.value)
    allowed = 10.0 * (tol + err) + res.abserr
    if discrepancy > allowed and not ill:
        raise SeriesOracleMismatch(
            f"{what}: series {value!r} vs quadrature {res.value!r} (|diff|={discrepancy:.3g} > {allowed:.3g})"
        )
    return SeriesValue(value, err, n, rule, "series", condition, res.value, res.abserr, discrepancy)


def ordinary_moment(theta, r: int, policy: SeriesPolicy = DEFAULT_POLICY, method: str = "auto", check: bool = True) -> SeriesValue:
    """r-th raw moment from the triple series over (j, k, l).

    ``method`` is ``"auto"`` (series, replaced by quadrature when
    cancellation exceeds the tolerance, which happens for large b),
    ``"series"`` (always the series; warns when ill-conditioned) or
    ``"quadrature"``.
    """
    theta = _params(theta)
    if int(r) != r or r < 1:
        raise DomainError("moment order must be a positive integer")
    r = int(r)

    def oracle():
        return quad.quadrature_moment(theta, quad.Power(r))

    if method == "quadrature":
        res = oracle()
        return SeriesValue(res.value, res.abserr, 0, "quadrature", "quadrature", 1.0, res.value, res.abserr, 0.0)
    _check_method(method)
    coeffs = expansion_coeffs(theta, policy)
    scale = theta.alpha * theta.beta / theta.a**r
    if coeffs.exact:
        parts = [tj * _moment_inner_terms(j, r, theta.b) for j, tj in enumerate(coeffs.t) if tj != 0.0]
        terms = scale * np.concatenate(parts)
        value = math.fsum(terms)
        abs_sum = math.fsum(np.abs(terms))
        err = _TERM_REL_ERR * abs_sum
        n, rule = len(terms), "finite"
    else:
        value, err, n, rule, abs_sum = _moment_infinite(theta, r, coeffs, scale, policy)
    condition = abs_sum / abs(value) if value else math.inf
    return _finish(theta, value, err, n, rule, condition, oracle, policy, check, method, f"moment r={r}")


def _precision_guard(policy, what):
    def guard(terms, abs_mass):
        total = math.fsum(terms)
        if _TERM_REL_ERR * abs_mass > policy.tolerance(total):
            raise NonConvergence(f"{what}: cancellation exhausted double precision before the tail converged")

    return guard


def _moment_infinite(theta, r, coeffs, scale, policy):
    t = coeffs.t
    abs_mass = [0.0]
    guard = _precision_guard(policy, f"moment r={r}")

    def block(start, stop):
        out = []
        for j in range(start, stop):
            if j >= len(t):
                raise NonConvergence(f"moment r={r}: coefficient table exhausted at j={j}")
            inner = scale * t[j] * _moment_inner_terms(j, r, theta.b)
            abs_mass[0] += math.fsum(np.abs(inner))
            out.append(math.fsum(inner))
        return out

    value, err, n, rule = _sum_infinite(block, policy, f"moment r={r}", guard=lambda terms: guard(terms, abs_mass[0]))
    return value, err + _TERM_REL_ERR * abs_mass[0], n, rule, abs_mass[0]


@dataclass(frozen=True)
class MomentSummary:
    raw: np.ndarray
    central: np.ndarray
    cumulants: np.ndarray
    skewness: float
    kurtosis: float


def central_moments_cumulants(theta, r_max: int = 4, policy: SeriesPolicy = DEFAULT_POLICY, method: str = "auto") -> MomentSummary:
    """Central moments, cumulants, and the cumulant skewness and kurtosis.

    Arrays are indexed by order starting at 0 (``raw[0] = 1``,
    ``central[1] = 0``, ``cumulants[0]`` unused and set to 0).  ``kurtosis``
    is ``kappa_4 / kappa_2^2`` (an excess measure; zero for the normal).
    """
    if r_max < 2:
        raise DomainError("r_max must be >= 2")
    raw = np.ones(r_max + 1)
    for r in range(1, r_max + 1):
        raw[r] = float(ordinary_moment(theta, r, policy, method=method))
    mu1 = raw[1]
    central = np.zeros(r_max + 1)
    for r in range(r_max + 1):
        central[r] = math.fsum((-1) ** m * math.comb(r, m) * mu1**m * raw[r - m] for m in range(r + 1))
    kappa = np.zeros(r_max + 1)
    for r in range(1, r_max + 1):
        kappa[r] = raw[r] - math.fsum(math.comb(r - 1, m - 1) * kappa[m] * raw[r - m] for m in range(1, r))
    skew = kappa[3] / kappa[2] ** 1.5 if r_max >= 3 else math.nan
    kurt = kappa[4] / kappa[2] ** 2 if r_max >= 4 else math.nan
    return MomentSummary(raw, central, kappa, float(skew), float(kurt))


# --------------------------------------------------------------------------
# incomplete moments, mean deviations, Bonferroni and Lorenz curves


def _incomplete_inner_terms(j: int, b: float, log_w: float) -> np.ndarray:
    """Terms of sum_k sum_{l in 0,1} of the J_{j+1}(z) expansion, times a / (j + 1).

    Each term is (-1)^(k+l+1) C(j,k) e^(k+1) (k+1)^-(1+l/b)
    [Gamma(1+l/b, k+1) - Gamma(1+l/b, (k+1) W)] with W = (1 + a z)^b.
    """
    k = np.arange(j + 1, dtype=float)[:, None]
    l = np.array([0.0, 1.0])[None, :]
    s = 1.0 + l / b
    with np.errstate(over="ignore"):
        upper_arg = np.exp(np.log(k + 1.0) + log_w)
    lo = np.exp((k + 1.0) + log_upper_gamma(s, k + 1.0))
    hi = np.exp((k + 1.0) + log_upper_gamma(s * np.ones_like(upper_arg), upper_arg))
    log_c = sc.gammaln(j + 1.0) - sc.gammaln(k + 1.0) - sc.gammaln(j - k + 1.0)
    sign = np.where((k + l + 1) % 2 == 0, 1.0, -1.0)
    return (sign * np.exp(log_c - s * np.log(k + 1.0)) * (lo - hi)).ravel()


def first_incomplete_moment(theta, z: float, policy: SeriesPolicy = DEFAULT_POLICY, method: str = "auto", check: bool = True) -> SeriesValue:
    """``m_1(z) = E[X 1{X <= z}]`` from ``sum_j u_j J_{j+1}(z)``."""
    theta = _params(theta)
    z = float(z)
    if not z > 0:
        raise DomainError("first incomplete moment requires z > 0")

    def oracle():
        return quad.quadrature_moment(theta, quad.Incomplete(z, 1))

    if method == "quadrature":
        res = oracle()
        return SeriesValue(res.value, res.abserr, 0, "quadrature", "quadrature", 1.0, res.value, res.abserr, 0.0)
    _check_method(method)
    coeffs = expansion_coeffs(theta, policy)
    log_w = theta.b * math.log1p(theta.a * z)
    scale = theta.alpha * theta.beta / theta.a
    if coeffs.exact:
        parts = [tj * _incomplete_inner_terms(j, theta.b, log_w) for j, tj in enumerate(coeffs.t) if tj != 0.0]
        terms = scale * np.concatenate(parts)
        value = math.fsum(terms)
        abs_sum = math.fsum(np.abs(terms))
        err = _TERM_REL_ERR * abs_sum
        n, rule = len(terms), "finite"
    else:
        t = coeffs.t
        abs_mass = [0.0]
        guard = _precision_guard(policy, "first incomplete moment")

        def block(start, stop):
            out = []
            for j in range(start, stop):
                if j >= len(t):
                    raise NonConvergence(f"first incomplete moment: coefficient table exhausted at j={j}")
                inner = scale * t[j] * _incomplete_inner_terms(j, theta.b, log_w)
                abs_mass[0] += math.fsum(np.abs(inner))
                out.append(math.fsum(inner))
            return out

        value, err, n, rule = _sum_infinite(block, policy, "first incomplete moment", guard=lambda terms: guard(terms, abs_mass[0]))
        abs_sum = abs_mass[0]
        err += _TERM_REL_ERR * abs_sum
    condition = abs_sum / abs(value) if value else math.inf
    return _finish(theta, value, err, n, rule, condition, oracle, policy, check, method, f"m1(z={z:g})")


@dataclass(frozen=True)
class MeanDeviations:
    about_mean: float
    about_median: float

    def __iter__(self):
        return iter((self.about_mean, self.about_median))


def mean_deviations(theta, policy: SeriesPolicy = DEFAULT_POLICY, method: str = "auto") -> MeanDeviations:
    """Mean absolute deviations about the mean and about the median."""
    theta = _params(theta)
    mu = float(ordinary_moment(theta, 1, policy, method=method))
    median = float(quantile(theta, 0.5))
    m_mu = float(first_incomplete_moment(theta, mu, policy, method=method))
    m_med = float(first_incomplete_moment(theta, median, policy, method=method))
    delta1 = 2.0 * mu * float(cdf(theta, mu)) - 2.0 * m_mu
    delta2 = mu - 2.0 * m_med
    return MeanDeviations(delta1, delta2)


def bonferroni_lorenz(theta, pi: float, policy: SeriesPolicy = DEFAULT_POLICY, method: str = "auto"):
    """Bonferroni and Lorenz curve ordinates ``(B(pi), L(pi))``."""
    theta = _params(theta)
    if not 0 < pi < 1:
        raise DomainError("pi must lie in (0, 1)")
    q = float(quantile(theta, pi))
    mu = float(ordinary_moment(theta, 1, policy, method=method))
    m = float(first_incomplete_moment(theta, q, policy, method=method))
    return m / (pi * mu), m / mu


# --------------------------------------------------------------------------
# Renyi entropy


def _renyi_terms(theta, lam: float, s: float, nu: float, start: int, stop: int) -> np.ndarray:
    i = np.arange(start, stop, dtype=float)
    c = (lam + i) * theta.alpha
    coef = binom_real(nu, i) * np.where(i % 2 == 0, 1.0, -1.0)
    with np.errstate(divide="ignore"):
        log_coef = np.log(np.abs(coef))
    log_mag = log_coef + i * theta.alpha - s * np.log(c) + log_upper_gamma(np.full_like(c, s), c)
    return np.sign(coef) * np.exp(log_mag)


def _richardson_sum(block, q0: float, policy: SeriesPolicy, what: str):
    """Sum a series whose remainder after N terms is ``sum_m d_m N^-(q0 + m)``.

    Partial sums at N = 32, 64, 128, ... are extrapolated by solving for the
    limit and the first few remainder coefficients; the change between the
    4- and 5-point extrapolations is the error estimate.
    """
    pieces = []
    ns, partials = [], []
    n = 0
    size = 32
    cap = int(policy.max_terms)
    while n < cap:
        stop = min(n + size, cap)
        pieces.append(np.asarray(block(n, stop), dtype=float))
        n = stop
        size = n
        ns.append(float(n))
        partials.append(math.fsum(np.concatenate(pieces)))
        if len(ns) < 5:
            continue
        est = []
        for m in (3, 4):
            nn = np.array(ns[-(m + 1):])
            mat = np.column_stack([np.ones_like(nn)] + [nn ** -(q0 + k) for k in range(m)])
            est.append(float(np.linalg.solve(mat, np.array(partials[-(m + 1):]))[0]))
        err = abs(est[1] - est[0])
        if err <= policy.tolerance(est[1]):
            return est[1], err, n, "tolerance"
    raise NonConvergence(f"{what}: extrapolation did not settle within {cap} terms")


def renyi_entropy(
    theta, lam: float, policy: SeriesPolicy = DEFAULT_POLICY, method: str = "auto", check: bool = True
) -> SeriesValue:
    """Renyi entropy of order ``lam`` (``lam > 0``, ``lam != 1``).

    Uses the i-series in ``Gamma((lam (b - 1) + 1) / b, (lam + i) alpha)``
    with binomial exponent ``nu = lam (beta - 1)``.  The series is finite
    when ``nu`` is a non-negative integer; otherwise it converges like
    ``i^-(nu + 2)`` and needs ``nu > -1``, which is exactly when
    ``f^lam`` is integrable at the origin.  A finite sum with large ``nu``
    alternates and cancels; ``method`` routes that case as in
    :func:`ordinary_moment`.
    """
    theta = _params(theta)
    lam = float(lam)
    if not lam > 0 or lam == 1.0:
        raise DomainError("Renyi order must be positive and different from one")
    _check_method(method)
    s = (lam * (theta.b - 1.0) + 1.0) / theta.b
    nu = lam * (theta.beta - 1.0)
    # snap rounding noise such as 1.5000000000000002 * 2 onto the finite sum
    if nu > 0 and abs(nu - round(nu)) <= 1e-12 * nu:
        nu = float(round(nu))
    if nu <= -1.0:
        raise NonConvergence(
            f"Renyi entropy: f^lambda is not integrable at 0 (lambda*(beta-1)={nu:g} <= -1)"
        )
    if nu >= 0 and _is_int(nu):
        terms = _renyi_terms(theta, lam, s, nu, 0, int(nu) + 1)
        sigma = math.fsum(terms)
        err = _TERM_REL_ERR * math.fsum(np.abs(terms))
        n, rule = len(terms), "finite"
    else:
        # terms decay like i^-(nu + 2), so the remainder starts at N^-(nu + 1)
        sigma, err, n, rule = _richardson_sum(
            lambda a0, a1: _renyi_terms(theta, lam, s, nu, a0, a1), nu + 1.0, policy, "Renyi entropy series"
        )
        err += _TERM_REL_ERR * abs(sigma)
    if not sigma > 0:
        raise NonConvergence(f"Renyi entropy series summed to a non-positive value {sigma!r}")
    ab = theta.a * theta.b
    value = -math.log(ab) + (lam * math.log(theta.alpha * theta.beta) + theta.alpha * lam + math.log(sigma)) / (1.0 - lam)
    value_err = err / (sigma * abs(1.0 - lam))

    def oracle():
        res = quad.power_integral(theta, lam)
        return quad.QuadResult(math.log(res.value) / (1.0 - lam), res.abserr / (res.value * abs(1.0 - lam)))

    if method == "quadrature":
        res = oracle()
        return SeriesValue(res.value, res.abserr, 0, "quadrature", "quadrature", 1.0, res.value, res.abserr, 0.0)
    return _finish(
        theta, value, value_err, n, rule, 1.0, oracle, policy, check, method,
        f"Renyi entropy lambda={lam:g}", scale=1.0 / abs(1.0 - lam),
    )


# --------------------------------------------------------------------------
# order statistics


def order_statistic_pdf(theta, i: int, n: int, x):
    """Density of the i-th of n order statistics, evaluated directly."""
    theta = _params(theta)
    if not (1 <= i <= n) or int(i) != i or int(n) != n:
        raise DomainError("order statistic requires integers 1 <= i <= n")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or np.any(~np.isfinite(x)):
        raise DomainError("order statistic density requires finite x > 0")
    log_b = sc.betaln(i, n - i + 1)
    with np.errstate(invalid="ignore"):
        log_f = _log_pdf_positive(theta, x)
        out = log_f - log_b
        if i > 1:
            out = out + (i - 1) * _log_cdf(theta, x)
        if n > i:
            out = out + (n - i) * _log_sf(theta, x)
    res = np.exp(out)
    return float(res) if res.ndim == 0 else res


def order_statistic_coeffs(theta, i: int, n: int) -> np.ndarray:
    """Coefficients ``s_l`` of ``f_{i:n} = alpha beta / B(i, n-i+1) sum_l s_l g G^l``.

    Derived from ``F^(i-1) (1 - F)^(n-i)`` by the binomial theorem; finite for
    integer alpha and beta, divergent otherwise.
    """
    theta = _params(theta)
    if not (_is_int(theta.alpha) and _is_int(theta.beta)):
        raise NonConvergence("order-statistic expansion is only finite for integer alpha and beta")
    alpha, beta = int(theta.alpha), int(theta.beta)
    top = alpha * beta * n
    s = [0] * top
    for j in range(n - i + 1):
        nu1 = beta * (i + j) - 1
        for k in range(nu1 + 1):
            nu2 = alpha * (k + 1) - 1
            ck = (-1) ** (j + k) * math.comb(n - i, j) * math.comb(nu1, k)
            for l in range(nu2 + 1):
                s[l] += ck * (-1) ** l * math.comb(nu2, l)
    return np.array(s, dtype=float)


def order_statistic_series_pdf(theta, i: int, n: int, x, n_terms: int = None):
    """Order-statistic density from the ENH mixture, optionally truncated."""
    theta = _params(theta)
    coeffs = order_statistic_coeffs(theta, i, n)
    if n_terms is not None:
        coeffs = coeffs[:n_terms]
    x = np.asarray(x, dtype=float)
    pref = theta.alpha * theta.beta / math.exp(sc.betaln(i, n - i + 1))
    total = np.zeros_like(x)
    for l, sl in enumerate(coeffs):
        if sl != 0.0:
            total = total + sl / (l + 1) * enh_pdf(l + 1, theta.a, theta.b, x)
    out = pref * total
    return float(out) if out.ndim == 0 else out
