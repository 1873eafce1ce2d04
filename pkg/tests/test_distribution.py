import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egnh import distribution as d
from egnh.errors import DomainError

REF = d.EgnhParams(1.8e-3, 2.83e-1, 1.75e-3, 47.066)

pos = st.floats(min_value=0.05, max_value=20.0)
thetas = st.builds(d.EgnhParams, pos, pos, pos, pos)
probs = st.floats(min_value=1e-6, max_value=1 - 1e-6)


def test_params_validation():
    with pytest.raises(DomainError):
        d.EgnhParams(0, 1, 1, 1)
    with pytest.raises(DomainError):
        d.EgnhParams(1, float("nan"), 1, 1)
    assert not d.EgnhParams(1, 1, 1, 1).identifiable
    assert d.EgnhParams(1, 1, 1, 2).identifiable


def test_exponential_special_case():
    theta = (1, 1, 1, 1)
    x = np.array([0.0, 0.3, 1.0, 4.0])
    np.testing.assert_allclose(d.pdf(theta, x), np.exp(-x), rtol=1e-15)
    np.testing.assert_allclose(d.cdf(theta, x), -np.expm1(-x), rtol=1e-15)
    np.testing.assert_allclose(d.hrf(theta, x[1:]), 1.0, rtol=1e-13)


def test_pdf_at_zero_limits():
    assert d.pdf((1, 0.5, 1, 1), 0.0) == math.inf
    assert d.pdf((2, 1, 3, 1), 0.0) == pytest.approx(6.0)
    assert d.pdf((2, 2, 3, 1), 0.0) == 0.0


def test_constant_hazard_when_beta_and_b_are_one():
    assert d.hrf((2, 1, 3, 1), 7.0) == pytest.approx(6.0, rel=1e-12)


def test_cdf_edges():
    assert d.cdf(REF, 0.0) == 0.0
    assert d.cdf(REF, -3.0) == 0.0
    assert d.cdf(REF, math.inf) == 1.0
    with pytest.raises(DomainError):
        d.cdf(REF, -math.inf)


def test_pdf_is_derivative_of_cdf():
    theta = (2, 1.5, 0.5, 2)
    for x in (0.1, 0.7, 2.0):
        h = 1e-6 * x
        fd = (d.cdf(theta, x + h) - d.cdf(theta, x - h)) / (2 * h)
        assert d.pdf(theta, x) == pytest.approx(fd, rel=1e-7)


def test_far_tail_hazard_asymptotic_continuity():
    theta = (2, 1.5, 1, 2)
    # y crosses the far-tail switch near x ~ 3.5
    xs = np.linspace(3.0, 4.5, 301)
    h = d.hrf(theta, xs)
    assert np.all(np.isfinite(h))
    assert np.max(np.abs(np.diff(np.log(h)))) < 0.01
    assert d.hrf(theta, 1e3) > 0


@settings(max_examples=200, deadline=None)
@given(thetas, probs)
def test_quantile_cdf_round_trip(theta, p):
    x = d.quantile(theta, p)
    if x > 0 and math.isfinite(x):
        assert d.cdf(theta, x) == pytest.approx(p, rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(thetas, st.floats(min_value=1e-3, max_value=50.0))
def test_cdf_plus_sf_is_one(theta, x):
    assert d.cdf(theta, x) + d.sf(theta, x) == pytest.approx(1.0, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(thetas, st.floats(min_value=1e-3, max_value=20.0), st.floats(min_value=1e-3, max_value=20.0))
def test_cdf_monotone(theta, x1, x2):
    lo, hi = sorted((x1, x2))
    assert d.cdf(theta, lo) <= d.cdf(theta, hi)


@settings(max_examples=50, deadline=None)
@given(thetas, st.floats(min_value=0.05, max_value=5.0), st.floats(min_value=0.01, max_value=10.0))
def test_scale_family(theta, c, x):
    # X ~ EGNH(alpha, beta, a, b)  =>  c X ~ EGNH(alpha, beta, a / c, b)
    scaled = theta.replace(a=theta.a / c)
    assert d.cdf(scaled, c * x) == pytest.approx(d.cdf(theta, x), rel=1e-10, abs=1e-300)


def test_sampling_is_reproducible():
    a = d.sample(REF, 100, seed=7)
    b = d.sample(REF, 100, seed=7)
    c = d.sample(REF, 100, seed=8)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    assert np.all(a.values > 0)


def test_shape_classification():
    assert d.classify_shape((1, 0.5, 1, 0.5)) == d.ShapeClass(d.DensityShape.LOG_CONVEX, d.HazardShape.DECREASING)
    assert d.classify_shape((1, 2, 1, 2)) == d.ShapeClass(d.DensityShape.LOG_CONCAVE, d.HazardShape.INCREASING)
    assert d.classify_shape((1, 1, 1, 1)).hazard_shape is d.HazardShape.CONSTANT
    assert d.classify_shape((1, 0.5, 1, 2)).hazard_shape is d.HazardShape.INDETERMINATE


def test_quantile_measures_exponential():
    assert d.bowley_skewness((1, 1, 1, 1)) == pytest.approx(math.log(4 / 3) / math.log(3), rel=1e-12)
    # Moors kurtosis of the exponential from its octiles
    e = [-math.log(1 - k / 8) for k in (1, 3, 5, 7)]
    moors = (e[3] - e[2] + e[1] - e[0]) / math.log(3)
    assert d.moors_kurtosis((1, 1, 1, 1)) == pytest.approx(moors, rel=1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        d.quantile(REF, 1.0)
    with pytest.raises(DomainError):
        d.log_pdf(REF, 0.0)
    with pytest.raises(DomainError):
        d.pdf(REF, float("nan"))
