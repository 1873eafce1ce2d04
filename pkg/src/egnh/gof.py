"""Goodness-of-fit statistics, information criteria, TTT data and summaries."""

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from .errors import UndefinedStatistic
from .inference import FitResult, Model, fit_model
from .sample import Sample


@dataclass(frozen=True)
class GofReport:
    model: str
    w_star: float
    a_star: float
    ks: float
    aic: float
    caic: float
    bic: float
    hqic: float
    k: int
    n: int
    loglik: float

    def as_dict(self):
        return asdict(self)


def information_criteria(loglik: float, k: int, n: int) -> dict:
    """AIC, consistent AIC with small-sample correction, BIC and HQIC."""
    aic = -2.0 * loglik + 2.0 * k
    return {
        "aic": aic,
        "caic": aic + 2.0 * k * (k + 1) / (n - k - 1) if n - k - 1 > 0 else math.inf,
        "bic": -2.0 * loglik + k * math.log(n),
        "hqic": -2.0 * loglik + 2.0 * k * math.log(math.log(n)) if n > 1 else math.nan,
    }


def edf_statistics(u) -> tuple:
    """Modified Cramer-von Mises, Anderson-Darling and KS from cdf values.

    ``u`` are fitted cdf values at the observations (any order).
    """
    u = np.sort(np.asarray(u, dtype=float))
    n = len(u)
    bad = np.flatnonzero((u <= 0.0) | (u >= 1.0))
    if bad.size:
        i = int(bad[0])
        raise UndefinedStatistic(f"fitted cdf is {u[i]!r} at order statistic {i + 1}; Anderson-Darling diverges", i + 1)
    i = np.arange(1, n + 1)
    w2 = math.fsum((u - (2 * i - 1) / (2.0 * n)) ** 2) + 1.0 / (12.0 * n)
    a2 = -n - math.fsum((2 * i - 1) * (np.log(u) + np.log1p(-u[::-1]))) / n
    ks = float(max(np.max(i / n - u), np.max(u - (i - 1) / n)))
    return w2 * (1.0 + 0.5 / n), a2 * (1.0 + 0.75 / n + 2.25 / n**2), ks


def gof(fit: FitResult, s: Sample, model_cdf=None) -> GofReport:
    """EDF statistics and information criteria for a fitted model."""
    cdf = model_cdf or fit.cdf
    w_star, a_star, ks = edf_statistics(cdf(s.sorted_view))
    crit = information_criteria(fit.loglik, fit.k, s.n)
    return GofReport(Model(fit.model).value, w_star, a_star, ks, k=fit.k, n=s.n, loglik=fit.loglik, **crit)


def compare(s: Sample, models=tuple(Model), **fit_kwargs):
    """Fit several models and rank them by W* (ties by A*, then KS).

    Returns a list of ``(FitResult, GofReport)`` pairs, best first.
    """
    rows = []
    for m in models:
        f = fit_model(s, m, **fit_kwargs)
        rows.append((f, gof(f, s)))
    rows.sort(key=lambda pair: (pair[1].w_star, pair[1].a_star, pair[1].ks))
    return rows


def ttt_plot_data(s: Sample) -> np.ndarray:
    """Scaled total-time-on-test transform, rows ``(r / n, G(r / n))``."""
    y = s.sorted_view
    n = len(y)
    r = np.arange(1, n + 1)
    g = (np.cumsum(y) + (n - r) * y) / y.sum()
    g[-1] = 1.0
    return np.column_stack([r / n, g])


@dataclass(frozen=True)
class DescriptiveStats:
    """Sample summary.

    ``skewness`` is the moment ratio ``m3 / m2^1.5`` and ``kurtosis`` the raw
    ratio ``m4 / m2^2``; the ``_adjusted`` fields are the bias-corrected
    versions and ``excess_kurtosis`` subtracts 3.  Shape measures are None
    for a constant sample.
    """

    n: int
    mean: float
    median: float
    variance: float
    min: float
    max: float
    skewness: float = None
    skewness_adjusted: float = None
    kurtosis: float = None
    excess_kurtosis: float = None
    excess_kurtosis_adjusted: float = None

    def as_dict(self):
        return asdict(self)


def descriptive_stats(s: Sample) -> DescriptiveStats:
    x = s.values
    if len(x) < 2:
        raise ValueError("descriptive statistics need at least two observations")
    base = dict(
        n=len(x),
        mean=float(np.mean(x)),
        median=float(np.median(x)),
        variance=float(np.var(x, ddof=1)),
        min=float(np.min(x)),
        max=float(np.max(x)),
    )
    if np.all(x == x[0]):
        return DescriptiveStats(**base)
    shape = dict(
        skewness=float(stats.skew(x)),
        kurtosis=float(stats.kurtosis(x, fisher=False)),
        excess_kurtosis=float(stats.kurtosis(x)),
    )
    if len(x) > 3:
        shape["skewness_adjusted"] = float(stats.skew(x, bias=False))
        shape["excess_kurtosis_adjusted"] = float(stats.kurtosis(x, bias=False))
    return DescriptiveStats(**base, **shape)
