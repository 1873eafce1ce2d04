"""Acceptance criteria 1-9.

Each test records a one-line verdict (printed in the pytest terminal
summary) before asserting, so a failing criterion still reports its
numbers.  Reference values are the published tables for the two datasets.
"""

import io
import itertools
import math
import time
import warnings

import numpy as np
import pytest
from scipy import stats

from conftest import record
from egnh import cli, distribution as d, gof, inference as inf, quadrature as quad, series, simulation as sim
from egnh.errors import NonConvergence
from egnh.results import ResultDocument
from egnh.sample import Sample

AARSET_THETA = (1.8e-3, 2.83e-1, 1.75e-3, 47.066)
KEVLAR_THETA = (2.41e-1, 1.194, 1.27e-5, 14.268)
AARSET_GOF = {"w_star": 0.191, "a_star": 1.381, "ks": 0.141, "aic": 454.73, "bic": 462.38, "caic": 455.62, "hqic": 457.64}
AARSET_GOF_TOL = {"w_star": 0.01, "a_star": 0.05, "ks": 0.01, "aic": 0.5, "bic": 0.5, "caic": 0.5, "hqic": 0.5}
# rows of the baseline parameter and criteria tables for the Aarset data
BASELINE_PARAMS = {"nh": (1.6e-5, 775.132), "ee": (8.85e-1, 1.70e-2), "weibull": (1.13, 56.08)}
BASELINE_IC = {
    "nh": (476.02, 476.27, 479.84, 477.47),
    "ee": (483.99, 484.25, 487.81, 485.45),
    "weibull": (486.00, 486.26, 489.83, 487.46),
}
GRID = list(itertools.product((0.5, 1, 2), (0.5, 1, 2), (0.5, 1), (0.5, 2)))


def quiet(fn, *args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fn(*args, **kw)


def rel(a, b):
    return abs(a - b) / abs(b)


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(["--format", "jsonl", *argv], stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return ResultDocument.from_json(out.getvalue())


# --------------------------------------------------------------------------


def test_criterion_1_aarset_reproduction(aarset):
    t0 = time.perf_counter()
    doc = cli_json("fit", "--data", "aarset", "--model", "egnh")
    elapsed = time.perf_counter() - t0
    fit = doc.payload["fit"]
    ll = fit["loglik"]
    implied = -(454.73 - 2 * 4) / 2
    close = all(rel(v, r) <= 0.10 for v, r in zip(fit["estimates"], AARSET_THETA))
    better = ll > implied
    ok = ll >= implied - 0.25 and (close or better) and elapsed < 30
    record(
        1, ok,
        f"loglik {ll:.4f} vs implied {implied:.3f}; params within 10%: {close}; "
        f"better loglik: {better}; {elapsed:.1f} s",
    )
    assert ok


def test_criterion_2_aarset_gof(aarset, aarset_fit):
    r = gof.gof(aarset_fit, aarset).as_dict()
    misses = {k: (r[k], v) for k, v in AARSET_GOF.items() if abs(r[k] - v) > AARSET_GOF_TOL[k]}
    detail = ", ".join(f"{k} {r[k]:.4g} (ref {v})" for k, v in AARSET_GOF.items())
    ok = not misses
    record(2, ok, detail + ("" if ok else f"; outside tolerance: {', '.join(misses)}"))
    assert ok, misses


def test_criterion_3_kevlar_reproduction(kevlar, kevlar_fit):
    r = gof.gof(kevlar_fit, kevlar)
    ref = inf.loglik(KEVLAR_THETA, kevlar)
    close = all(rel(v, t) <= 0.10 for v, t in zip(kevlar_fit.estimates, KEVLAR_THETA))
    better = kevlar_fit.loglik > ref
    stats_ok = abs(r.w_star - 0.032) <= 0.005 and abs(r.a_star - 0.236) <= 0.02 and abs(r.ks - 0.069) <= 0.01
    ok = stats_ok and (close or better)
    record(
        3, ok,
        f"W* {r.w_star:.4f}, A* {r.a_star:.4f}, KS {r.ks:.4f}; loglik {kevlar_fit.loglik:.3f} "
        f"vs {ref:.3f} at the published estimates",
    )
    assert ok


def test_criterion_4_baselines(aarset):
    fits = {m: quiet(inf.fit_model, aarset, m) for m in ("egnh", "enh", "nh", "ee", "weibull")}
    notes, ok = [], True
    for m, ref in BASELINE_PARAMS.items():
        worst = max(rel(v, t) for v, t in zip(fits[m].estimates, ref))
        crit = gof.information_criteria(fits[m].loglik, fits[m].k, aarset.n)
        ic = (crit["aic"], crit["caic"], crit["bic"], crit["hqic"])
        ic_gap = max(abs(a - b) for a, b in zip(ic, BASELINE_IC[m]))
        ok &= worst <= 0.10 and ic_gap <= 0.5
        notes.append(f"{m} params off by {100 * worst:.0f}%, criteria off by {ic_gap:.2f}")
    ll = {m: f.loglik for m, f in fits.items()}
    nested = ll["egnh"] >= ll["enh"] - 1e-4 >= ll["nh"] - 2e-4
    ok &= nested
    notes.append(f"nesting {'holds' if nested else 'violated'}")
    record(4, ok, "; ".join(notes))
    assert ok


def _printed_tol(text):
    # +-0.001, widened to half a unit in the last printed digit
    decimals = len(text.split(".")[1]) if "." in text else 0
    return max(1e-3, 0.5 * 10.0**-decimals)


def test_criterion_5_descriptive(aarset, kevlar):
    refs = {
        "aarset": (aarset, ("45.686", "48.5", "1078.153", "0.1", "86"), -0.1378, 1.414),
        "kevlar": (kevlar, ("8805.694", "8831", "20738145", "1051", "17568"), 0.097, 2.172),
    }
    ok, notes = True, []
    for name, (s, printed, skew, kurt) in refs.items():
        r = gof.descriptive_stats(s)
        ours = (r.mean, r.median, r.variance, r.min, r.max)
        exact = all(abs(v - float(p)) <= _printed_tol(p) for v, p in zip(ours, printed))
        skew_ok = min(abs(r.skewness - skew), abs(r.skewness_adjusted - skew)) <= 0.01
        kurt_ok = min(abs(r.kurtosis - kurt), abs(r.excess_kurtosis - kurt), abs(r.excess_kurtosis_adjusted - kurt)) <= 0.01
        ok &= exact and skew_ok and kurt_ok
        notes.append(
            f"{name} mean {r.mean:.3f} median {r.median:g} var {r.variance:.3f} "
            f"skew {r.skewness:.4f} (adj {r.skewness_adjusted:.4f}) kurt {r.kurtosis:.4f} (excess {r.excess_kurtosis:.4f})"
        )
    record(5, ok, "; ".join(notes))
    assert ok


def test_criterion_6_analytics_oracles():
    t0 = time.perf_counter()
    checked = diverged = 0
    worst = 0.0
    problems = []

    def compare(value, ref, what):
        nonlocal worst, checked
        err = abs(value - ref) / max(abs(ref), 1e-300)
        worst = max(worst, err)
        checked += 1
        if err > 1e-4:
            problems.append(f"{what} rel err {err:.2g}")

    for theta in GRID:
        integer_shapes = float(theta[0]).is_integer() and float(theta[1]).is_integer()
        norm = quad.expect(theta, lambda x: 1.0).value
        if abs(norm - 1.0) > 1e-6:
            problems.append(f"normalisation {norm!r} at {theta}")
        median = float(d.quantile(theta, 0.5))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                for r in (1, 2, 3, 4):
                    v = series.ordinary_moment(theta, r, method="series", check=False)
                    compare(v.value, quad.quadrature_moment(theta, r).value, f"moment {r} at {theta}")
                v = series.first_incomplete_moment(theta, median, method="series", check=False)
                compare(v.value, quad.quadrature_moment(theta, quad.Incomplete(median, 1)).value, f"m1 at {theta}")
                mu = quad.quadrature_moment(theta, 1).value
                md = series.mean_deviations(theta, method="series")
                compare(md.about_mean, quad.absolute_deviation(theta, mu).value, f"delta1 at {theta}")
                compare(md.about_median, quad.absolute_deviation(theta, median).value, f"delta2 at {theta}")
                if not integer_shapes:
                    problems.append(f"series returned at the divergent corner {theta}")
            except NonConvergence:
                diverged += 1
                if integer_shapes:
                    problems.append(f"unexpected NonConvergence at {theta}")
            for lam in (0.5, 2.0, 5.0):
                try:
                    v = series.renyi_entropy(theta, lam, method="series", check=False)
                except NonConvergence:
                    diverged += 1
                    if lam * (theta[1] - 1) > -1:
                        problems.append(f"unexpected Renyi NonConvergence at {theta}, lambda {lam}")
                    continue
                p = quad.power_integral(theta, lam).value
                compare(v.value, math.log(p) / (1 - lam), f"Renyi {lam} at {theta}")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 120
    record(
        6, ok,
        f"{len(GRID)} grid points, {checked} series values, worst rel err {worst:.1e}, "
        f"{diverged} NonConvergence at divergent corners, {elapsed:.0f} s"
        + ("" if not problems else f"; {problems[:3]}"),
    )
    assert ok, problems


def test_criterion_7_distributional_identities():
    ps = np.concatenate([[1e-6, 1e-4, 1e-2], np.linspace(0.05, 0.95, 19), [1 - 1e-2, 1 - 1e-4, 1 - 1e-6]])
    worst = 0.0
    for theta in [AARSET_THETA, KEVLAR_THETA] + GRID:
        q = d.quantile(theta, ps)
        worst = max(worst, float(np.max(np.abs(d.cdf(theta, q) - ps))))
        # relative error in x on the other side of the loop
        back = d.quantile(theta, d.cdf(theta, q))
        worst = max(worst, float(np.max(np.abs(back - q) / q)))
    round_trip = worst < 1e-9

    n = 10_000
    ks_stats = []
    for theta in [(2, 1.5, 0.5, 2), AARSET_THETA, (0.5, 0.5, 1, 0.5)]:
        s = d.sample(theta, n, 42)
        ks_stats.append(stats.kstest(s.values, lambda x, t=theta: d.cdf(t, x)).statistic)
    ks_ok = max(ks_stats) < 1.63 / math.sqrt(n)

    # parallel system of beta = 3 branches, each a series system of alpha = 2
    # NH components; NH draws come straight from its closed-form quantile
    alpha, beta, a, b = 2, 3, 0.5, 2.0
    m = 20_000
    rng = np.random.default_rng(2024)
    u = rng.random((m, beta, alpha))
    nh = ((1 - np.log1p(-u)) ** (1 / b) - 1) / a
    built = nh.min(axis=2).max(axis=1)
    direct = d.sample((alpha, beta, a, b), m, 7).values
    two = stats.ks_2samp(built, direct)
    series_ok = two.pvalue > 0.01

    ok = round_trip and ks_ok and series_ok
    record(
        7, ok,
        f"round-trip max err {worst:.1e}; KS at n=1e4 max {max(ks_stats):.4f} vs {1.63 / math.sqrt(n):.4f}; "
        f"parallel-series two-sample p={two.pvalue:.3f}",
    )
    assert ok


def _random_points(s, count, seed):
    rng = np.random.default_rng(seed)
    mean = float(np.mean(s.values))
    out = []
    for _ in range(count):
        alpha, beta = np.exp(rng.uniform(math.log(0.2), math.log(5.0), 2))
        b = math.exp(rng.uniform(math.log(0.5), math.log(20.0)))
        rate = math.exp(rng.uniform(math.log(0.2), math.log(5.0))) / mean
        out.append(d.EgnhParams(alpha, beta, rate / b, b))
    return out


def test_criterion_8_inference_correctness(aarset, kevlar):
    score_err = beta_err = prof_err = scale_err = 0.0
    for s in (aarset, kevlar):
        for theta in _random_points(s, 20, 8):
            base = theta.as_array()
            g = inf.score(theta, s)
            fd = np.empty(4)
            for i in range(4):
                h = 1e-6 * base[i]
                up, dn = base.copy(), base.copy()
                up[i] += h
                dn[i] -= h
                fd[i] = (inf.loglik(d.EgnhParams(*up), s) - inf.loglik(d.EgnhParams(*dn), s)) / (2 * h)
            # relative error of theta_i * dl/dtheta_i, floor 1 for components near zero
            err = np.abs(base * (g - fd)) / np.maximum(np.abs(base * fd), 1.0)
            score_err = max(score_err, float(err.max()))
            bh = inf.beta_hat(theta.alpha, theta.a, theta.b, s)
            beta_err = max(beta_err, abs(inf.score(theta.replace(beta=bh), s)[1]) / s.n)
        p = quiet(inf.fit, s, method="profile")
        f = quiet(inf.fit, s, method="full")
        prof_err = max(prof_err, float(np.max(np.abs(p.estimates - f.estimates) / f.estimates)))
        for c in (10.0, 0.01):
            g = quiet(inf.fit, Sample(s.values * c))
            expect = p.estimates * np.array([1, 1, 1 / c, 1])
            scale_err = max(scale_err, float(np.max(np.abs(g.estimates - expect) / expect)))
    ok = score_err < 1e-5 and beta_err < 1e-10 and prof_err < 1e-3 and scale_err < 1e-3
    record(
        8, ok,
        f"score vs FD {score_err:.1e}; beta score after substitution {beta_err:.1e} per obs; "
        f"profile vs full {prof_err:.1e}; scale equivariance {scale_err:.1e}",
    )
    assert ok


def test_criterion_9_simulation_study():
    design = sim.SimDesign(sizes=(10, 50, 100, 250), replications=200, seed=1)
    t0 = time.perf_counter()
    res = sim.run_sim(design)
    elapsed = time.perf_counter() - t0
    notes, ok = [], elapsed < 600
    for p in inf.PARAM_NAMES:
        table = res.table(p)
        se10, se250 = table[0][2], table[-1][2]
        slope = res.loglog_slope(p)
        good = se250 < se10 and slope < 0
        ok &= good
        notes.append(f"{p} se {se10:.3g}->{se250:.3g} slope {slope:+.2f}")
    hits = [int(res.bound_hits[n].sum()) for n in design.sizes]
    notes.append(f"b at cap in {hits} of 200 fits; {elapsed:.0f} s")
    record(9, ok, "; ".join(notes))
    assert ok
