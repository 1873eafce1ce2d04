import math

import numpy as np
import pytest

from egnh import simulation as sim
from egnh.errors import DomainError
from egnh.inference import PARAM_NAMES


def test_reference_theta():
    assert sim.REFERENCE_THETA.as_tuple() == (1.8e-3, 2.83e-1, 1.75e-3, 47.066)
    d = sim.SimDesign()
    assert d.sizes[0] == 10 and d.sizes[-1] == 250 and len(d.sizes) == 49
    assert d.replications == 1000


@pytest.mark.parametrize(
    "kw", [{"sizes": ()}, {"sizes": (10, 10)}, {"sizes": (1,)}, {"replications": 1}]
)
def test_design_validation(kw):
    with pytest.raises(DomainError):
        sim.SimDesign(**kw)


def test_design_rejects_unknown_method():
    with pytest.raises(ValueError):
        sim.SimDesign(method="bfgs")


def test_replication_seeds_are_distinct():
    a = sim.replication_seed(1, 10, 0).generate_state(4)
    b = sim.replication_seed(1, 10, 1).generate_state(4)
    c = sim.replication_seed(1, 50, 0).generate_state(4)
    assert not np.array_equal(a, b) and not np.array_equal(a, c)


@pytest.fixture(scope="module")
def smoke():
    design = sim.SimDesign(sizes=(10, 30), replications=3, seed=1)
    return design, sim.run_sim(design, workers=1)


def test_smoke_run_shape(smoke):
    design, res = smoke
    assert len(res.rows) == 2 * 4
    assert [r.parameter for r in res.rows[:4]] == list(PARAM_NAMES)
    for r in res.rows:
        assert r.converged + r.failed == 3
        assert 0 <= r.at_bound <= r.converged
    assert res.estimates[10].shape == (3, 4)
    assert [n for n, _, _ in res.table("alpha")] == [10, 30]


def test_bias_and_std_error_match_estimates(smoke):
    design, res = smoke
    truth = design.theta0.as_array()
    for r in res.rows:
        j = PARAM_NAMES.index(r.parameter)
        est = res.estimates[r.size][:, j]
        est = est[~np.isnan(est)]
        assert r.bias == pytest.approx(est.mean() - truth[j])
        assert r.std_error == pytest.approx(est.std(ddof=1))


def test_deterministic_and_schedule_independent(smoke):
    design, res = smoke
    again = sim.run_sim(design, workers=2)
    for n in design.sizes:
        np.testing.assert_array_equal(res.estimates[n], again.estimates[n])
    assert res.rows == again.rows


def test_loglog_slope_of_known_curve():
    rows = [sim.SimRow(n, "alpha", 0.0, 3.0 / math.sqrt(n), 10, 0, 0) for n in (10, 40, 160)]
    res = sim.SimResult(sim.SimDesign(sizes=(10, 40, 160)), rows)
    assert res.loglog_slope("alpha") == pytest.approx(-0.5)
    assert math.isnan(res.loglog_slope("beta"))
