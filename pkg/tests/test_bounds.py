import math
import random

import flint
import pytest
from hypothesis import given, strategies as st

from primdiv import bounds
from primdiv.ball import RealBall, Undecidable

import oracles


def test_height_quadratic_pair():
    h = bounds.height_quadratic_pair(-3, 2)
    assert abs(float(h) - math.log(2) / 2) < 1e-12
    assert bounds.height_quadratic_pair(1, 1).contains(0)
    assert bounds.height_quadratic_pair(5, 2980) <= 4
    assert bounds.height_quadratic_pair(5, 2981) > 4


@pytest.mark.parametrize("pq", [(-3, 2), (1, 2), (5, 3), (-7, 9), (11, 13)])
def test_height_from_minimal_polynomial(pq):
    p, q = pq
    assert bounds.height((q, -p, q)).overlaps(bounds.height_quadratic_pair(p, q))


def test_height_general_polynomial():
    # X^2 - 2: roots +-sqrt 2, height = log 2 / 2
    assert abs(float(bounds.height((-2, 0, 1))) - math.log(2) / 2) < 1e-12
    # 2X - 1: root 1/2, height = log 2
    assert abs(float(bounds.height((-1, 2))) - math.log(2)) < 1e-12


def test_height_lower_bound():
    assert abs(float(bounds.height_lower_bound(2)) - 2 / (2 * math.log(6) ** 3)) < 1e-12
    vals = [bounds.height_lower_bound(d) for d in range(2, 101)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    for p, q in [(p, q) for q in range(2, 30) for p in range(-2 * q + 1, 2 * q) if oracles.valid(p, q)]:
        assert bounds.height_lower_bound(2) < bounds.height_quadratic_pair(p, q)
    with pytest.raises(ValueError):
        bounds.height_lower_bound(1)


def test_linear_form_example():
    q = bounds.LinearFormQuery(D=2, h=RealBall(2).log() / 2, B=RealBall(2))
    lg = bounds.linear_form_log_lower_bound(q)
    expected = -81.9 * (2 * math.log(6)) ** 3 * (math.log(2) / 2) * math.log(2) ** 2
    assert abs(float(lg) - expected) < 1e-9
    assert -628 < float(lg) < -627


def test_linear_form_monotone():
    h = RealBall(2).log() / 2
    prev = None
    for B in [2, 10, 100, 10 ** 4]:
        v = bounds.linear_form_log_lower_bound(bounds.LinearFormQuery(2, h, RealBall(B)))
        assert prev is None or v < prev
        prev = v
    a = bounds.linear_form_log_lower_bound(bounds.LinearFormQuery(2, h, RealBall(50)))
    b = bounds.linear_form_log_lower_bound(bounds.LinearFormQuery(3, h, RealBall(50)))
    c = bounds.linear_form_log_lower_bound(bounds.LinearFormQuery(2, h * 2, RealBall(50)))
    assert b < a and c < a


def test_linear_form_query_validation():
    with pytest.raises(ValueError):
        bounds.LinearFormQuery(0, RealBall(1), RealBall(2))
    with pytest.raises(ValueError):
        bounds.LinearFormQuery(2, RealBall(1), RealBall(1))


def test_lmn():
    assert bounds.lmn_log_bound(20, 17).contains(-52020)
    assert bounds.lmn_bound(20, 17).overlaps(RealBall(-52020).exp())
    with pytest.raises(ValueError):
        bounds.lmn_log_bound(19, 17)
    a, H = bounds.lmn_parameters(2, RealBall(2).log() / 2, 10 ** 6, 10 ** 6, RealBall(1))
    assert a >= 20 and H >= 17


def test_large_B_consistency_grid():
    # only used with D >= 2; at D = 2 the threshold 679000 is essentially tight
    for D in range(2, 40):
        for B in [679001, 10 ** 7, 10 ** 10, 10 ** 20]:
            assert bounds.large_B_consistency(D, B)
    assert not bounds.large_B_consistency(2, 678000)


def _true_log_power_diff(p, q, n, prec=256):
    flint.ctx.prec = prec
    s = flint.acb(p + 2 * q).sqrt()
    r = flint.acb(p - 2 * q).sqrt()
    a, b = (s + r) / 2, (s - r) / 2
    return RealBall._wrap(abs(a ** n - b ** n).log(), prec)


def test_power_diff_example():
    h = RealBall(2).log() / 2
    log_alpha = RealBall(2).log() / 2
    lo, hi = bounds.power_diff_bounds(10, 2, h, log_alpha)
    t = _true_log_power_diff(-3, 2, 10)
    assert lo < t and t < hi


def test_power_diff_random_pairs():
    rng = random.Random(7)
    pairs = [(p, q) for q in range(2, 60) for p in range(-2 * q + 1, 2 * q) if oracles.valid(p, q)]
    for p, q in rng.sample(pairs, 20):
        h = bounds.height_quadratic_pair(p, q)
        log_alpha = RealBall(q).log() / 2
        for n in range(2, 201, 7):
            lo, hi = bounds.power_diff_bounds(n, 2, h, log_alpha)
            t = _true_log_power_diff(p, q, n)
            assert lo < hi
            assert lo < t and t < hi, (p, q, n)


def test_power_diff_n1():
    h = RealBall(2).log() / 2
    log_alpha = RealBall(2).log() / 2
    lo, hi = bounds.power_diff_bounds_n1(2, h, log_alpha)
    t = _true_log_power_diff(-3, 2, 1)
    assert lo < t and t <= hi


def test_arccos_examples():
    assert bounds.arccos_diff_bound(0).contains(0)
    assert bounds.arccos_diff_bound(2).overlaps(RealBall.pi())
    with pytest.raises(ValueError):
        bounds.arccos_diff_bound(-1)


def test_arccos_property_sampled():
    rng = random.Random(1)
    for _ in range(10 ** 4):
        x, y = rng.uniform(-1, 1), rng.uniform(-1, 1)
        from fractions import Fraction
        fx, fy = Fraction(x), Fraction(y)
        lhs = abs(RealBall(fx).acos() - RealBall(fy).acos())
        rhs = bounds.arccos_diff_bound(abs(RealBall(fx) - RealBall(fy)))
        assert not lhs > rhs


def test_thresholds():
    t = bounds.thm2_threshold(2)
    assert 1.7e10 <= t <= 2e10
    assert t > 1.74e10
    assert bounds.thm2_working_threshold(2) > 1.74e10
    assert bounds.thm2_working_threshold(2) < t
    assert bounds.PIPELINE_CAP == 2 * 10 ** 10
    for d in range(2, 21):
        analytic = 4000 * (d * math.log(3 * d)) ** 12
        assert 2 * (2 ** d - 1) < analytic
    assert bounds.thm2_refined_threshold(2) < bounds.thm2_threshold(2)


def test_thirdineq():
    assert not bounds.thirdineq_check(100, 2)
    for n in [2 * 10 ** 10 + 1, 2 * 10 ** 10 + 3, 2 * 10 ** 10 + 7]:
        assert bounds.thirdineq_check(n, 2)
    for n in [17400000001, 18000000007, 19999999999]:
        assert bounds.thirdineq_lhs(n) > RealBall(n) ** RealBall("0.3495")
