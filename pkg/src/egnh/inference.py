"""Maximum likelihood for the EGNH family and its baseline submodels.

The shape ``beta`` enters the likelihood only through ``beta * sum(log D)``
so for fixed ``(alpha, a, b)`` it has the closed-form maximiser
``beta_hat = -n / sum(log D)``.  The default fit maximises the resulting
profile likelihood over ``(log alpha, log a, log b)`` with L-BFGS-B.

On the two reference datasets the likelihood has no interior maximum: it
keeps increasing along a ridge ``a -> 0, b -> inf`` with ``a b`` roughly
fixed, where the law tends to a Gompertz-type limit.  Fits therefore run
inside a box (``b <= b_max``) and report ``at_bound`` when the optimum lies
on its face.
"""

import enum
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .distribution import EgnhParams, _kernel, _log_pdf_positive, _params, cdf as egnh_cdf
from .errors import (
    BoundaryWarning,
    DegenerateEstimate,
    DomainError,
    IdentifiabilityWarning,
    NoConvergence,
    SingularInformation,
)
from .sample import Sample

PARAM_NAMES = ("alpha", "beta", "a", "b")
Z95 = 1.959963984540054


class FitMethod(str, enum.Enum):
    FULL = "full"
    PROFILE = "profile"


class Model(str, enum.Enum):
    EGNH = "egnh"
    NH = "nh"
    ENH = "enh"
    EE = "ee"
    EXPONENTIAL = "exponential"
    WEIBULL = "weibull"


# parameters held at one for each EGNH submodel
_FIXED = {
    Model.EGNH: {},
    Model.NH: {"alpha": 1.0, "beta": 1.0},
    Model.ENH: {"alpha": 1.0},
    Model.EE: {"alpha": 1.0, "b": 1.0},
    Model.EXPONENTIAL: {"alpha": 1.0, "beta": 1.0, "b": 1.0},
}


def _values(s):
    if isinstance(s, Sample):
        return s.values
    return Sample(s).values


# --------------------------------------------------------------------------
# likelihood pieces


def loglik(theta, s) -> float:
    """Log-likelihood; ``-inf`` (never NaN) when a term is undefined."""
    theta = _params(theta)
    x = _values(s)
    with np.errstate(invalid="ignore", divide="ignore"):
        total = math.fsum(_log_pdf_positive(theta, x))
    return total if math.isfinite(total) or total == -math.inf else -math.inf


def _score_parts(theta: EgnhParams, x):
    """Per-observation score columns, shape (4, n)."""
    alpha, beta, a, b = theta.as_tuple()
    l1 = np.log1p(a * x)
    e = np.expm1(b * l1)  # (1 + a x)^b - 1
    q = 1.0 + e
    _, y, log_d = _kernel(theta, x)
    r = 1.0 / np.expm1(alpha * e)  # exp(y) / (1 - exp(y))
    lam = 1.0 - (beta - 1.0) * r
    dx = x / (1.0 + a * x)
    d_alpha = 1.0 / alpha - e * lam
    d_beta = 1.0 / beta + log_d
    d_a = 1.0 / a + (b - 1.0) * dx - alpha * b * dx * q * lam
    d_b = 1.0 / b + l1 - alpha * l1 * q * lam
    return np.vstack([d_alpha, d_beta, d_a, d_b])


def score(theta, s) -> np.ndarray:
    """Analytic gradient ``(dl/dalpha, dl/dbeta, dl/da, dl/db)``."""
    theta = _params(theta)
    x = _values(s)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        parts = _score_parts(theta, x)
    out = np.array([math.fsum(row) for row in parts])
    if not np.all(np.isfinite(out)):
        warnings.warn(f"non-finite score components at {theta}", DegenerateEstimate, stacklevel=2)
    return out


def _sum_log_d(alpha, a, b, x):
    theta = EgnhParams(alpha, 1.0, a, b)
    return math.fsum(_kernel(theta, x)[2])


def beta_hat(alpha: float, a: float, b: float, s) -> float:
    """Closed-form maximiser of the likelihood in ``beta``."""
    x = _values(s)
    total = _sum_log_d(alpha, a, b, x)
    if not total < 0:
        raise DomainError("beta_hat is undefined: every log D term is zero")
    out = -len(x) / total
    if out < 1e-12:
        warnings.warn(f"beta_hat={out:.3g} is degenerate (observations near zero)", DegenerateEstimate, stacklevel=2)
    return out


def profile_loglik(alpha: float, a: float, b: float, s) -> float:
    """``loglik`` with beta replaced by :func:`beta_hat`."""
    x = _values(s)
    return loglik(EgnhParams(alpha, beta_hat(alpha, a, b, x), a, b), x)


def observed_information(theta, s, rel_step: float = 1e-5) -> np.ndarray:
    """Negative Hessian by central differences of the analytic score.

    The step is ``rel_step * |theta_i|`` with no absolute floor, since the
    rate ``a`` can be of order 1e-6 on the reference fits.
    """
    theta = _params(theta)
    x = _values(s)
    base = theta.as_array()
    hess = np.empty((4, 4))
    for i in range(4):
        h = rel_step * abs(base[i])
        up, dn = base.copy(), base.copy()
        up[i] += h
        dn[i] -= h
        hess[:, i] = (score(EgnhParams(*up), x) - score(EgnhParams(*dn), x)) / (2.0 * h)
    return -0.5 * (hess + hess.T)


# --------------------------------------------------------------------------
# results


@dataclass
class FitResult:
    model: Model
    param_names: tuple
    estimates: np.ndarray
    loglik: float
    score_at_hat: np.ndarray
    std_errors: np.ndarray
    cov: np.ndarray
    ci95: list
    converged: bool
    iterations: int
    method: FitMethod
    n: int
    at_bound: tuple = ()
    theta_hat: EgnhParams = None
    start_index: int = 0
    starts: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.param_names)

    def as_dict(self) -> dict:
        return dict(zip(self.param_names, (float(v) for v in self.estimates)))

    def cdf(self, x):
        if self.model is Model.WEIBULL:
            shape, scale = self.estimates
            x = np.asarray(x, dtype=float)
            out = -np.expm1(-((np.maximum(x, 0.0) / scale) ** shape))
            return float(out) if out.ndim == 0 else out
        return egnh_cdf(self.theta_hat, x)


def _covariance(info: np.ndarray, names):
    try:
        np.linalg.cholesky(info)
    except np.linalg.LinAlgError:
        warnings.warn(
            "observed information is not positive definite; standard errors omitted",
            SingularInformation,
            stacklevel=3,
        )
        return None, None
    cov = np.linalg.inv(info)
    cov = 0.5 * (cov + cov.T)
    return cov, np.sqrt(np.diag(cov))


def _log_scale_ci(est, se):
    if se is None:
        return None
    out = []
    for v, s in zip(est, se):
        w = Z95 * s / v
        out.append((float(v * math.exp(-w)), float(v * math.exp(w))))
    return out


# --------------------------------------------------------------------------
# EGNH-family fitting


@dataclass(frozen=True)
class StartPolicy:
    """Deterministic start grid over (alpha, b); a and beta follow from the data.

    Each start uses ``a = (1 / mean) / max(b, 1)`` so that ``a * b`` keeps
    the exponential-fit rate, then ``beta = beta_hat`` at that point.
    """

    alphas: tuple = (0.5, 2.0)
    bs: tuple = (0.5, 2.0, 20.0)
    extra: tuple = ((1.0, 5.0), (0.1, 100.0))

    def grid(self):
        pts = [(al, b) for al in self.alphas for b in self.bs]
        return pts + list(self.extra)


@dataclass(frozen=True)
class Bounds:
    """Box for the optimiser, in natural units relative to the data scale."""

    b_max: float = 1e4
    b_min: float = 1e-3
    alpha_min: float = 1e-10
    alpha_max: float = 1e6
    beta_min: float = 1e-10
    beta_max: float = 1e6
    a_decades_below: float = 14.0
    a_decades_above: float = 6.0

    def log_box(self, rate: float):
        la = math.log(rate)
        ten = math.log(10.0)
        return {
            "alpha": (math.log(self.alpha_min), math.log(self.alpha_max)),
            "beta": (math.log(self.beta_min), math.log(self.beta_max)),
            "a": (la - self.a_decades_below * ten, la + self.a_decades_above * ten),
            "b": (math.log(self.b_min), math.log(self.b_max)),
        }


class _Problem:
    """Negative mean log-likelihood over the free log-parameters."""

    def __init__(self, x, fixed, profile):
        self.x = x
        self.n = len(x)
        self.fixed = dict(fixed)
        self.profile = profile and "beta" not in self.fixed
        free = [p for p in PARAM_NAMES if p not in self.fixed]
        if self.profile:
            free.remove("beta")
        self.free = free

    def theta(self, z) -> EgnhParams:
        vals = dict(self.fixed)
        vals.update({p: math.exp(v) for p, v in zip(self.free, z)})
        if self.profile:
            vals["beta"] = 1.0
            vals["beta"] = -self.n / _sum_log_d(vals["alpha"], vals["a"], vals["b"], self.x)
        return EgnhParams(**vals)

    def __call__(self, z):
        with np.errstate(all="ignore"):
            try:
                theta = self.theta(z)
            except (DomainError, ZeroDivisionError, OverflowError):
                return math.inf, np.zeros(len(z))
            ll = math.fsum(_log_pdf_positive(theta, self.x))
            if not math.isfinite(ll):
                return math.inf, np.zeros(len(z))
            parts = _score_parts(theta, self.x)
        g = np.array([math.fsum(row) for row in parts])
        # envelope theorem: at beta_hat the beta component vanishes, so the
        # profile gradient is the score in the remaining coordinates
        nat = dict(zip(PARAM_NAMES, theta.as_array()))
        grad = np.array([g[PARAM_NAMES.index(p)] * nat[p] for p in self.free])
        if not np.all(np.isfinite(grad)):
            return math.inf, np.zeros(len(z))
        return -ll / self.n, -grad / self.n


def _projected_gradient(grad, z, box):
    out = np.array(grad, dtype=float)
    for i, (lo, hi) in enumerate(box):
        if z[i] <= lo + 1e-12 and out[i] > 0:
            out[i] = 0.0
        if z[i] >= hi - 1e-12 and out[i] < 0:
            out[i] = 0.0
    return out


_STATIONARY = 1e-5  # on the projected gradient of -loglik / n in log space


def _run_start(problem: _Problem, z0, box):
    res = optimize.minimize(
        problem,
        z0,
        jac=True,
        method="L-BFGS-B",
        bounds=box,
        options={"maxiter": 5000, "maxfun": 20000, "ftol": 1e-15, "gtol": 1e-10, "maxcor": 20},
    )
    f, g = problem(res.x)
    pg = _projected_gradient(g, res.x, box)
    ok = math.isfinite(f) and float(np.max(np.abs(pg), initial=0.0)) < _STATIONARY
    return res.x, -f * problem.n, ok, int(res.nit), pg


def _starts(x, fixed, policy: StartPolicy, method: FitMethod):
    rate = 1.0 / float(np.mean(x))
    out = []
    seen = set()
    for alpha, b in policy.grid():
        alpha = fixed.get("alpha", alpha)
        b = fixed.get("b", b)
        a = rate / max(b, 1.0)
        key = (alpha, b)
        if key in seen:
            continue
        seen.add(key)
        beta = fixed.get("beta")
        if beta is None:
            beta = -len(x) / _sum_log_d(alpha, a, b, x)
        out.append({"alpha": alpha, "beta": beta, "a": a, "b": b})
    return out


def _fit_family(s, model: Model, method: FitMethod, policy: StartPolicy, bounds: Bounds, workers: int):
    x = _values(s)
    if len(x) < 5:
        warnings.warn(f"only {len(x)} observations; the fit may be unstable", DegenerateEstimate, stacklevel=3)
    fixed = _FIXED[model]
    problem = _Problem(x, fixed, profile=(method is FitMethod.PROFILE))
    log_box = bounds.log_box(1.0 / float(np.mean(x)))
    box = [log_box[p] for p in problem.free]
    starts = _starts(x, fixed, policy, method)

    def start_vec(st):
        return np.array([min(max(math.log(st[p]), lo), hi) for p, (lo, hi) in zip(problem.free, box)])

    if problem.free:
        jobs = [start_vec(st) for st in starts]
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                runs = list(pool.map(lambda z0: _run_start(problem, z0, box), jobs))
        else:
            runs = [_run_start(problem, z0, box) for z0 in jobs]
    else:
        runs = [(np.array([]), loglik(problem.theta([]), x), True, 0, np.array([]))]

    def key(item):
        idx, (z, ll, ok, nit, pg) = item
        return (-ll, float(np.max(np.abs(pg), initial=0.0)), idx)

    good = [(i, r) for i, r in enumerate(runs) if r[2]]
    if not good:
        finite = [r[1] for r in runs if math.isfinite(r[1])]
        raise NoConvergence(
            f"{model.value}: none of {len(runs)} starts reached a stationary point"
            + (f" (best loglik {max(finite):.6g})" if finite else "")
        )
    # logliks within 1e-9 are treated as tied
    best_ll = max(r[1] for _, r in good)
    tied = [(i, r) for i, r in good if best_ll - r[1] <= 1e-9]
    idx, (z, ll, ok, nit, pg) = min(tied, key=lambda item: (float(np.max(np.abs(item[1][4]), initial=0.0)), item[0]))
    theta = problem.theta(z)

    names = tuple(p for p in PARAM_NAMES if p not in fixed)
    sel = [PARAM_NAMES.index(p) for p in names]
    full_score = score(theta, x)
    info = observed_information(theta, x)[np.ix_(sel, sel)]
    cov, se = _covariance(info, names)
    est = theta.as_array()[sel]
    at_bound = tuple(
        p for p, v, (lo, hi) in zip(problem.free, z, box) if v <= lo + 1e-9 or v >= hi - 1e-9
    )
    if at_bound:
        warnings.warn(
            f"{model.value}: optimum on the search box for {', '.join(at_bound)}; the likelihood keeps rising beyond it",
            BoundaryWarning,
            stacklevel=3,
        )
    if model is Model.EGNH and abs(theta.b - 1.0) < 1e-6:
        warnings.warn("b is within 1e-6 of one, where the model is not identifiable", IdentifiabilityWarning, stacklevel=3)
    return FitResult(
        model=model,
        param_names=names,
        estimates=est,
        loglik=float(ll),
        score_at_hat=full_score[sel],
        std_errors=se,
        cov=cov,
        ci95=_log_scale_ci(est, se),
        converged=True,
        iterations=int(nit),
        method=method,
        n=len(x),
        at_bound=at_bound,
        theta_hat=theta,
        start_index=idx,
        starts=[dict(st) for st in starts],
    )


def fit(s, method="profile", starts: StartPolicy = None, bounds: Bounds = None, workers: int = 1, b_max: float = None) -> FitResult:
    """Fit the four-parameter EGNH law by maximum likelihood.

    ``method`` is ``"profile"`` (default; maximise over alpha, a, b with
    beta at its closed form) or ``"full"``.  Starts run sequentially unless
    ``workers > 1``; the winner is the highest log-likelihood, then the
    smallest projected gradient, then the lowest start index.
    """
    method = FitMethod(method)
    bounds = bounds or Bounds()
    if b_max is not None:
        bounds = Bounds(**{**bounds.__dict__, "b_max": float(b_max)})
    return _fit_family(s, Model.EGNH, method, starts or StartPolicy(), bounds, workers)


# --------------------------------------------------------------------------
# Weibull baseline


def weibull_loglik(shape: float, scale: float, s) -> float:
    x = _values(s)
    z = x / scale
    return math.fsum(math.log(shape / scale) + (shape - 1.0) * np.log(z) - z**shape)


def _weibull_score(shape, scale, x):
    z = x / scale
    lz = np.log(z)
    zk = z**shape
    d_shape = math.fsum(1.0 / shape + lz - zk * lz)
    d_scale = math.fsum((shape / scale) * (zk - 1.0))
    return np.array([d_shape, d_scale])


def _fit_weibull(s, bounds: Bounds):
    x = _values(s)
    n = len(x)
    mean = float(np.mean(x))

    def fun(z):
        k, lam = math.exp(z[0]), math.exp(z[1])
        with np.errstate(all="ignore"):
            ll = weibull_loglik(k, lam, x)
            g = _weibull_score(k, lam, x) * np.array([k, lam])
        if not (math.isfinite(ll) and np.all(np.isfinite(g))):
            return math.inf, np.zeros(2)
        return -ll / n, -g / n

    box = [(math.log(1e-3), math.log(1e3)), (math.log(mean) - 20.0, math.log(mean) + 20.0)]
    res = optimize.minimize(fun, np.array([0.0, math.log(mean)]), jac=True, method="L-BFGS-B", bounds=box,
                            options={"maxiter": 2000, "ftol": 1e-15, "gtol": 1e-10})
    f, g = fun(res.x)
    pg = _projected_gradient(g, res.x, box)
    if not (math.isfinite(f) and np.max(np.abs(pg)) < _STATIONARY):
        raise NoConvergence("weibull: optimiser did not reach a stationary point")
    est = np.exp(res.x)
    sc_ = _weibull_score(est[0], est[1], x)
    hess = np.empty((2, 2))
    for i in range(2):
        h = 1e-5 * est[i]
        up, dn = est.copy(), est.copy()
        up[i] += h
        dn[i] -= h
        hess[:, i] = (_weibull_score(*up, x) - _weibull_score(*dn, x)) / (2.0 * h)
    info = -0.5 * (hess + hess.T)
    cov, se = _covariance(info, ("shape", "scale"))
    return FitResult(
        model=Model.WEIBULL,
        param_names=("shape", "scale"),
        estimates=est,
        loglik=-f * n,
        score_at_hat=sc_,
        std_errors=se,
        cov=cov,
        ci95=_log_scale_ci(est, se),
        converged=True,
        iterations=int(res.nit),
        method=FitMethod.FULL,
        n=n,
    )


def fit_submodel(s, model, method="profile", starts: StartPolicy = None, bounds: Bounds = None) -> FitResult:
    """Fit a baseline: NH, ENH, EE (alpha = b = 1), exponential or Weibull."""
    model = Model(model)
    bounds = bounds or Bounds()
    if model is Model.WEIBULL:
        return _fit_weibull(s, bounds)
    return _fit_family(s, model, FitMethod(method), starts or StartPolicy(), bounds, 1)


def fit_model(s, model="egnh", **kwargs) -> FitResult:
    model = Model(model)
    if model is Model.EGNH:
        return fit(s, **kwargs)
    return fit_submodel(s, model, **{k: v for k, v in kwargs.items() if k in ("method", "starts", "bounds")})
