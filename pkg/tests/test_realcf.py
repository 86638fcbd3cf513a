import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from primdiv import realcf
from primdiv.ball import ExactZero, RealBall
from primdiv.realcf import Verdict

import oracles

TABLE1_DENOMS = [1291, 1504, 4299, 10102, 135625, 145727, 281352, 989783, 1271135, 2260918, 5792971,
                 8053889, 21900749, 29954638, 51855387, 81810025, 133665412, 215475437, 2072944345,
                 4361364127, 6434308472, 17229981071]


def test_theta_examples():
    assert realcf.theta(0, 2).contains(Fraction(1, 4))
    t = realcf.theta(-3, 2)
    assert abs(float(t) - 0.384973) < 1e-6
    assert t.rad < Fraction(1, 2 ** 120)
    near = realcf.theta(-2 * 1000 + 1, 1000)
    assert near < Fraction(1, 2) and near > Fraction(49, 100)
    with pytest.raises(ValueError):
        realcf.theta(4, 2)


def test_convergents_of_golden_ratio():
    phi = lambda prec: (1 + RealBall(5, prec).sqrt()) / 2 - 1
    conv = realcf.convergents(phi, 10 ** 6)
    fib = [1, 1]
    while fib[-1] < 10 ** 7:
        fib.append(fib[-1] + fib[-2])
    assert [(c.k, c.n) for c in conv] == [(0, 1)] + [(fib[i], fib[i + 1]) for i in range(len(fib) - 1)
                                                    if fib[i + 1] <= 10 ** 6]


def test_table1_denominators():
    conv = realcf.convergents(lambda prec: realcf.theta(-3, 2, prec), 2 * 10 ** 10)
    big = [c for c in conv if c.n > 1260]
    assert [c.n for c in big] == TABLE1_DENOMS
    assert (big[0].k, big[0].n) == (497, 1291)


@pytest.mark.parametrize("pq", [(-3, 2), (1, 2), (5, 7), (-11, 13), (29, 50)])
def test_convergent_laws(pq):
    p, q = pq
    conv = realcf.convergents(lambda prec: realcf.theta(p, q, prec), 10 ** 9)
    t = oracles.theta_mp(p, q, 80)
    with mpmath.workdps(80):
        for a, b in zip(conv, conv[1:]):
            assert b.n > a.n
            assert math.gcd(b.k, b.n) == 1
            # consecutive convergents straddle theta
            assert (mpmath.mpf(a.k) / a.n - t) * (mpmath.mpf(b.k) / b.n - t) < 0
        for c in conv:
            assert abs(t - mpmath.mpf(c.k) / c.n) < mpmath.mpf(1) / c.n ** 2


def test_doubling_stability():
    src = lambda prec: realcf.theta(-3, 2, prec)
    q1, c1, _ = realcf._expand(src(256), 10 ** 12)
    q2, c2, _ = realcf._expand(src(512), 10 ** 12)
    assert c1 == c2[: len(c1)]


def test_precision_exhausted():
    with pytest.raises(realcf.PrecisionExhausted):
        realcf.convergents(lambda prec: realcf.theta(-3, 2, prec), 10 ** 60, start_prec=32, max_prec=64)


def test_d_act_examples():
    a = realcf.d_act_log(-3, 2, 497, 1291)
    assert a.trunc(1) == Fraction(-126, 10)
    b = realcf.d_act_log(-3, 2, 6633082188, 17229981071)
    assert b.trunc(1) == Fraction(-454, 10)
    with pytest.raises(ExactZero):
        realcf.d_act_log(0, 2, 1, 4)
    with pytest.raises(ValueError):
        realcf.d_act_log(-3, 2, 2, 4)


def test_d_act_against_mpmath():
    with mpmath.workdps(60):
        v = mpmath.log(abs(mpmath.mpf(-3) / 2 - 2 * mpmath.cos(2 * mpmath.pi * 497 / 1291)))
        ref = Fraction(mpmath.nstr(v, 50))
    b = realcf.d_act_log(-3, 2, 497, 1291)
    assert abs(b.mid - ref) < Fraction(1, 10 ** 30)


def test_d_req_examples():
    assert realcf.d_req_log_bound(2, 1291).trunc(0) == -116
    big = realcf.d_req_log_bound(2, 17229981071)
    assert abs(float(big) - (-1438733756)) / 1438733756 < 1e-3
    assert RealBall(Fraction(5, 3 * 2)).log() < 0
    with pytest.raises(ValueError):
        realcf.d_req_log(2, 30, RealBall(1))


def test_d_req_decreases_in_q():
    for n in range(31, 2001, 13):
        vals = [realcf.d_req_log_bound(q, n) for q in range(2, 51)]
        assert all(a > b for a, b in zip(vals, vals[1:])), n


def test_rhs_examples():
    assert realcf.rhs_check(3, 331)
    assert not all(realcf.rhs_check(3, n) for n in range(31, 331))
    assert realcf.rhs_check(21, 43)
    assert not realcf.rhs_check(2, 1260)
    assert all(realcf.rhs_check(2, n) for n in range(1261, 1400))


def test_nearest_coprime_k_examples():
    assert realcf.nearest_coprime_k(-3, 2, 1291) == 497
    assert realcf.nearest_coprime_k(-3, 2, 10102) == 3889
    assert realcf.nearest_coprime_k(0, 2, 7) == 2


@given(st.integers(2, 40), st.integers(3, 400), st.data())
def test_nearest_coprime_k_brute_force(q, n, data):
    p = data.draw(st.integers(-2 * q + 1, 2 * q - 1))
    ks = [k for k in range(1, (n + 1) // 2) if math.gcd(k, n) == 1 and 2 * k < n]
    if not ks:
        return
    with mpmath.workdps(50):
        dist = {k: abs(mpmath.mpf(p) / q - 2 * mpmath.cos(2 * mpmath.pi * k / n)) for k in ks}
    ordered = sorted(dist.values())
    if len(ordered) > 1 and ordered[1] - ordered[0] < mpmath.mpf(10) ** -30:
        return  # genuine tie, handled by Undecidable
    assert realcf.nearest_coprime_k(p, q, n) == min(dist, key=dist.get)


def test_convergent_record_row_one():
    rec = realcf.convergent_record(-3, 2, 497, 1291)
    assert rec.verdict is Verdict.REFUTED
    assert rec.dreq_log_int == -116 and rec.dact_log_1dp == Fraction(-126, 10)
    margin = rec.d_act_log - rec.d_req_log
    assert 103 < float(margin) < 104
