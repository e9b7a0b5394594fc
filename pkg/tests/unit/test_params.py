import math

import numpy as np
import pytest

from boojum_dist.errors import DomainError
from boojum_dist.params import (BoojumParams, Reason, analytic_log_z,
                                boundary_margin, boundary_t,
                                classify)

LOG2 = math.log(2.0)


@pytest.mark.parametrize('m, r, proper, reason', [
    # rates not all positive
    (1.0, (0.0, 1.0), False, Reason.RateNonpositive),
    (-2.0, (-1.0, 1.0), False, Reason.RateNonpositive),
    (0.0, (3.0, -0.5, 2.0), False, Reason.RateNonpositive),
    # m <= -1
    (-1.0, (1.0, 1.0), False, Reason.ShapeAtOrBelowMinusOne),
    (-3.0, (1.0, 2.0), False, Reason.ShapeAtOrBelowMinusOne),
    # -1 < m <= 0
    (-0.5, (0.1, 300.0), True, Reason.Proper),
    (-0.999, (5.0,), True, Reason.Proper),
    (0.0, (1.0, 1.0), True, Reason.Proper),
    # m > 0, T < 1
    (0.5, (2.0, 2.0), True, Reason.Proper),
    (1.0, (3.0, 3.0), True, Reason.Proper),
    (0.3, (5.0,), True, Reason.Proper),
    # m > 0, T = 1
    (1.0, (LOG2, LOG2), False, Reason.BoundaryTAtLeastOne),
    # m > 0, T > 1
    (2.0, (1.0, 1.0), False, Reason.BoundaryTAtLeastOne),
    (1.0, (1.0, 1.0, 1.0), False, Reason.BoundaryTAtLeastOne),
    (1.0, (0.5, 0.5, 0.5), False, Reason.BoundaryTAtLeastOne),
])
def test_properness_truth_table(m, r, proper, reason):
    verdict = classify(BoojumParams(m, r))
    assert verdict.proper is proper
    assert verdict.reason is reason


def test_verdict_t_value():
    verdict = classify(BoojumParams(0.5, (2.0, 2.0)))
    assert verdict.t_value == pytest.approx(2 * math.exp(-4.0))
    assert verdict.t_value == pytest.approx(0.0366, abs=1e-4)

    verdict = classify(BoojumParams(2.0, (1.0, 1.0)))
    assert verdict.t_value == pytest.approx(2 * math.exp(-0.5))

    assert classify(BoojumParams(0.0, (1.0, 1.0))).t_value is None
    assert classify(BoojumParams(-0.5, (1.0, 1.0))).t_value is None
    assert classify(BoojumParams(1.0, (1.0, -1.0))).t_value is None


def test_verdict_record():
    record = classify(BoojumParams(-1.0, (1.0, 1.0))).to_record()
    assert record == {'proper': False, 'reason': 'ShapeAtOrBelowMinusOne'}
    assert 't_value' in classify(BoojumParams(0.5, (2.0, 2.0))).to_record()


@pytest.mark.parametrize('m, r, expected', [
    (1.0, (3.0, 3.0), 1 - 2 * math.exp(-3.0)),
    (1.0, (LOG2, LOG2), 0.0),
    (0.5, (10.0, 10.0, 10.0), 1 - 3 * math.exp(-20.0)),
])
def test_boundary_margin(m, r, expected):
    assert boundary_margin(BoojumParams(m, r)) == pytest.approx(
        expected, abs=1e-15)


def test_boundary_margin_at_one_is_exactly_zero():
    params = BoojumParams(1.0, (LOG2, LOG2))
    assert boundary_margin(params) == 0.0
    assert not classify(params).proper


def test_boundary_margin_absent():
    assert boundary_margin(BoojumParams(0.0, (1.0, 1.0))) is None
    assert boundary_margin(BoojumParams(-0.5, (1.0, 1.0))) is None
    assert boundary_margin(BoojumParams(1.0, (1.0, 0.0))) is None


def test_margin_grows_with_rates(rng):
    for _ in range(200):
        m = rng.uniform(0.05, 5.0)
        r = rng.uniform(0.01, 10.0, rng.integers(1, 5))
        scale = rng.uniform(1.01, 3.0)
        before = BoojumParams(m, r)
        after = BoojumParams(m, scale * r)
        assert boundary_margin(after) >= boundary_margin(before)
        if boundary_t(before) > 0:
            assert boundary_t(after) < boundary_t(before)


def test_margin_saturates_for_tiny_t():
    before = BoojumParams(0.05, (5.0,))
    after = BoojumParams(0.05, (10.0,))
    assert boundary_margin(before) == boundary_margin(after) == 1.0
    assert 0 < boundary_t(after) < boundary_t(before)


def test_single_rate_always_proper(rng):
    for _ in range(500):
        m = rng.uniform(-0.999, 20.0)
        r = rng.uniform(1e-3, 20.0)
        assert classify(BoojumParams(m, (r,))).proper


@pytest.mark.parametrize('m, r', [
    (float('nan'), (1.0,)),
    (1.0, ()),
    (1.0, (1.0, float('inf'))),
    ('abc', (1.0,)),
])
def test_params_validation(m, r):
    with pytest.raises(DomainError):
        BoojumParams(m, r)


def test_params_record():
    params = BoojumParams(0.5, [2, 3])
    assert params.r == (2.0, 3.0)
    assert params.K == 2
    assert params.to_record() == {'m': 0.5, 'r': [2.0, 3.0]}
    assert BoojumParams.from_record({'m': 0.5, 'r': [2, 3]}) == params
    with pytest.raises(DomainError):
        BoojumParams.from_record({'r': [1.0]})


def test_params_rates_vector():
    params = BoojumParams(1, (1, 2, 3))
    np.testing.assert_array_equal(params.rates, [1.0, 2.0, 3.0])
    assert params.with_rates([4, 5, 6]).r == (4.0, 5.0, 6.0)


def test_analytic_log_z():
    assert analytic_log_z(BoojumParams(0.0, (2.0, 5.0))) == pytest.approx(
        -math.log(10.0))
    assert analytic_log_z(BoojumParams(0.7, (3.0,))) == pytest.approx(
        -math.log(3.0))
    assert analytic_log_z(BoojumParams(1.0, (3.0, 3.0))) is None
    assert analytic_log_z(BoojumParams(2.0, (1.0, 1.0))) is None
