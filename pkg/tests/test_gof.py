import math
import warnings

import numpy as np
import pytest
from scipy import stats

from egnh import distribution as d
from egnh import gof
from egnh.errors import UndefinedStatistic
from egnh.sample import Sample


def test_information_criteria_identities():
    ll, k, n = -100.0, 4, 50
    c = gof.information_criteria(ll, k, n)
    assert c["aic"] == 208.0
    assert c["bic"] == pytest.approx(200 + 4 * math.log(50))
    assert c["hqic"] == pytest.approx(200 + 8 * math.log(math.log(50)))
    assert c["caic"] == pytest.approx(208 + 40 / 45)
    assert gof.information_criteria(ll, 4, 5)["caic"] == math.inf


def test_edf_perfect_fit():
    n = 20
    u = (np.arange(1, n + 1) - 0.5) / n
    w, a, ks = gof.edf_statistics(u[::-1])
    assert ks == pytest.approx(1 / (2 * n), abs=1e-15)
    assert w == pytest.approx((1 / (12 * n)) * (1 + 0.5 / n), rel=1e-12)
    assert a > 0


def test_edf_against_scipy():
    rng = np.random.default_rng(5)
    x = rng.exponential(2.0, 40)
    u = stats.expon(scale=2.0).cdf(x)
    w, a, ks = gof.edf_statistics(u)
    n = len(x)
    ref_w = stats.cramervonmises(x, "expon", args=(0, 2.0)).statistic
    assert w == pytest.approx(ref_w * (1 + 0.5 / n), rel=1e-10)
    assert ks == pytest.approx(stats.kstest(x, "expon", args=(0, 2.0)).statistic, rel=1e-12)
    # Anderson-Darling against a direct loop
    us = np.sort(u)
    raw = -n - sum((2 * i - 1) * (math.log(us[i - 1]) + math.log(1 - us[n - i])) for i in range(1, n + 1)) / n
    assert a == pytest.approx(raw * (1 + 0.75 / n + 2.25 / n**2), rel=1e-12)


def test_ks_brute_force(kevlar_fit, kevlar):
    grid = np.linspace(0, kevlar.values.max() * 1.01, 100_000)
    grid = np.union1d(grid, kevlar.values)
    emp_right = np.searchsorted(kevlar.sorted_view, grid, side="right") / kevlar.n
    emp_left = np.searchsorted(kevlar.sorted_view, grid, side="left") / kevlar.n
    f = kevlar_fit.cdf(grid)
    brute = max(np.max(np.abs(emp_right - f)), np.max(np.abs(emp_left - f)))
    assert gof.gof(kevlar_fit, kevlar).ks == pytest.approx(brute, abs=1e-12)


def test_undefined_statistic_index():
    with pytest.raises(UndefinedStatistic) as err:
        gof.edf_statistics([0.2, 1.0, 0.5])
    assert err.value.index == 3


def test_gof_report_fields(kevlar_fit, kevlar):
    r = gof.gof(kevlar_fit, kevlar)
    assert r.model == "egnh" and r.k == 4 and r.n == 49
    assert r.aic == pytest.approx(-2 * r.loglik + 8)
    assert set(r.as_dict()) >= {"w_star", "a_star", "ks", "aic", "caic", "bic", "hqic"}


def test_compare_orders_by_w_star(kevlar):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = gof.compare(kevlar)
    ws = [r.w_star for _, r in rows]
    assert ws == sorted(ws)
    assert rows[0][1].model == "egnh"
    best = rows[0][1]
    for _, r in rows[1:]:
        assert best.w_star < r.w_star and best.a_star < r.a_star


def test_ttt_exponential_is_diagonal():
    # large exponential samples give a TTT curve close to the diagonal
    s = d.sample((1, 1, 1, 1), 20000, 8)
    t = gof.ttt_plot_data(s)
    assert t.shape == (20000, 2)
    assert np.max(np.abs(t[:, 1] - t[:, 0])) < 0.02
    assert t[-1, 1] == 1.0
    assert np.all(np.diff(t[:, 1]) >= -1e-15)


def test_ttt_small_case():
    t = gof.ttt_plot_data(Sample([3.0, 1.0, 2.0]))
    # G(1/3) = 3*1/6, G(2/3) = (1 + 2*2)/6
    np.testing.assert_allclose(t, [[1 / 3, 0.5], [2 / 3, 5 / 6], [1.0, 1.0]])


def test_ttt_increasing_hazard_is_concave():
    s = d.sample((2, 3, 1, 2), 5000, 3)
    t = gof.ttt_plot_data(s)
    assert np.all(t[:, 1] >= t[:, 0] - 1e-3)


def test_descriptive_stats_constant_sample():
    r = gof.descriptive_stats(Sample([2.0, 2.0, 2.0]))
    assert r.variance == 0.0 and r.skewness is None and r.kurtosis is None


def test_descriptive_stats_conventions():
    s = Sample([1.0, 2.0, 4.0, 8.0, 3.0])
    r = gof.descriptive_stats(s)
    assert r.kurtosis == pytest.approx(r.excess_kurtosis + 3)
    assert r.skewness_adjusted == pytest.approx(stats.skew(s.values, bias=False))
    with pytest.raises(ValueError):
        gof.descriptive_stats(Sample([1.0]))
