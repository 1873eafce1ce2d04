"""Monte Carlo study of the sampling behaviour of the EGNH estimators."""

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distribution import EgnhParams, _params, sample
from .errors import DomainError, EgnhError
from .inference import PARAM_NAMES, Bounds, FitMethod, fit

REFERENCE_THETA = EgnhParams(1.8e-3, 2.83e-1, 1.75e-3, 47.066)


@dataclass(frozen=True)
class SimDesign:
    theta0: EgnhParams = REFERENCE_THETA
    sizes: tuple = tuple(range(10, 251, 5))
    replications: int = 1000
    seed: int = 2024
    method: str = "profile"
    b_max: float = 1e4

    def __post_init__(self):
        object.__setattr__(self, "theta0", _params(self.theta0))
        sizes = tuple(int(n) for n in self.sizes)
        if not sizes or any(n < 2 for n in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise DomainError("sizes must be strictly increasing integers >= 2")
        object.__setattr__(self, "sizes", sizes)
        if int(self.replications) < 2:
            raise DomainError("replications must be >= 2")
        FitMethod(self.method)


@dataclass(frozen=True)
class SimRow:
    size: int
    parameter: str
    bias: float
    std_error: float
    converged: int
    failed: int
    at_bound: int


@dataclass
class SimResult:
    design: SimDesign
    rows: list
    estimates: dict = field(default_factory=dict)
    bound_hits: dict = field(default_factory=dict)

    def table(self, parameter: str):
        """``(size, bias, std_error)`` rows for one parameter."""
        return [(r.size, r.bias, r.std_error) for r in self.rows if r.parameter == parameter]

    def loglog_slope(self, parameter: str) -> float:
        """Least-squares slope of log(std error) against log(n)."""
        pts = [(math.log(n), math.log(se)) for n, _, se in self.table(parameter) if se > 0 and math.isfinite(se)]
        if len(pts) < 2:
            return math.nan
        x, y = np.array(pts).T
        return float(np.polyfit(x, y, 1)[0])


def replication_seed(seed: int, n: int, r: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed), int(n), int(r)])


def _replicate(args):
    theta0, n, r, seed, method, b_max = args
    s = sample(theta0, n, replication_seed(seed, n, r))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = fit(s, method=method, bounds=Bounds(b_max=b_max))
    except (EgnhError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return n, r, None, False, type(exc).__name__
    return n, r, res.theta_hat.as_array(), bool(res.at_bound), ""


def run_sim(design: SimDesign, workers: int = None) -> SimResult:
    """Run every (size, replication) fit and summarise bias and spread.

    Tasks run in a process pool (``workers=None`` uses all cores, ``1`` runs
    inline).  Results are placed by (size, replication) index, so the output
    does not depend on scheduling.
    """
    tasks = [
        (design.theta0, n, r, design.seed, design.method, design.b_max)
        for n in design.sizes
        for r in range(design.replications)
    ]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_replicate, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    else:
        out = [_replicate(t) for t in tasks]

    reps = design.replications
    est = {n: np.full((reps, 4), np.nan) for n in design.sizes}
    bound = {n: np.zeros(reps, dtype=bool) for n in design.sizes}
    for n, r, values, hit, _ in out:
        if values is not None:
            est[n][r] = values
            bound[n][r] = hit

    truth = design.theta0.as_array()
    rows = []
    for n in design.sizes:
        ok = ~np.isnan(est[n][:, 0])
        good = est[n][ok]
        for j, name in enumerate(PARAM_NAMES):
            if good.shape[0] >= 2:
                bias = float(np.mean(good[:, j]) - truth[j])
                se = float(np.std(good[:, j], ddof=1))
            else:
                bias = se = math.nan
            rows.append(SimRow(n, name, bias, se, int(ok.sum()), int((~ok).sum()), int(bound[n][ok].sum())))
    return SimResult(design, rows, est, bound)
