import math

import pytest
from hypothesis import given, strategies as st

from primdiv import arith
from primdiv import cyclotomic as cy
from primdiv.cyclotomic import IntegerPolynomial as P

import oracles


def test_cyclotomic_examples():
    assert cy.cyclotomic_poly(6).coeffs == (1, -1, 1)
    assert cy.cyclotomic_poly(12).coeffs == (1, 0, -1, 0, 1)
    f = cy.cyclotomic_poly(105)
    assert f.degree == 48 and -2 in f.coeffs


@pytest.mark.parametrize("n", list(range(1, 61)) + [105, 210, 231, 385, 462, 1155])
def test_cyclotomic_matches_sympy(n):
    assert list(cy.cyclotomic_poly(n).coeffs) == oracles.cyclotomic(n)


def test_cyclotomic_against_repeated_division():
    # the textbook route: X^n - 1 divided by Phi_d for each proper divisor d
    for n in range(1, 200):
        f = P.binomial(n)
        for d in arith.divisors(n)[:-1]:
            f = f.exact_div(cy.cyclotomic_poly(d))
        assert f == cy.cyclotomic_poly(n)
        assert f.degree == arith.phi(n)


def test_g_examples():
    assert cy.g_poly(12).coeffs == (-3, 0, 1)
    assert cy.g_poly(5).coeffs == (-1, 1, 1)
    assert cy.g_poly(3).coeffs == (1, 1)
    with pytest.raises(ValueError):
        cy.g_poly(2)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 9, 12, 15, 16, 21, 30, 31])
def test_g_matches_minimal_polynomial(n):
    assert list(cy.g_poly(n).coeffs) == oracles.minpoly_2cos(n)


def test_g_monic_and_degree():
    for n in range(3, 300):
        g = cy.g_poly(n)
        assert g.coeffs[-1] == 1 and g.degree == arith.phi(n) // 2


def test_G_eval_examples():
    assert cy.G_eval(12, -3, 2) == -3
    assert cy.G_eval(5, -3, 2) == -1
    for p, q in [(1, 2), (-5, 7), (4, 3)]:
        assert cy.G_eval(3, p, q) == p + q


@pytest.mark.parametrize("pq", [(-3, 2), (1, 2), (5, 3)])
def test_G_eval_matches_cosine_product(pq):
    p, q = pq
    for n in range(3, 301):
        assert cy.cosine_product(n, p, q, 256).contains(cy.G_eval(n, p, q)), n


def test_h_examples():
    assert cy.h_poly(1) == P([1])
    assert cy.h_poly(7) == P([-1, 1])
    assert cy.h_poly(15) == (P.binomial(5) * cy.cyclotomic_poly(3))
    for bad in (2, 9, 12):
        with pytest.raises(ValueError):
            cy.h_poly(bad)


def test_h_supnorm_bound_examples():
    assert cy.h_supnorm_bound(105) == 45
    assert cy.h_supnorm_bound(15) == 6
    assert cy.h_supnorm_bound(7) == 2
    assert cy.h_supnorm_bound(1) == 1
    with pytest.raises(ValueError):
        cy.h_supnorm_bound(45)


def test_supnorm_sample_examples():
    s = cy.supnorm_sample(P([-1, 1]), 4096)
    assert s <= 2 and s > 2 - 1e-6
    assert cy.supnorm_sample(P([1]), 64).contains(1)
    assert cy.supnorm_sample(cy.h_poly(15), 4096) <= 6


def test_h_supnorm_bound_small_range():
    for m in range(1, 200, 2):
        if all(e == 1 for _, e in arith.factor(m).factors):
            assert cy.supnorm_sample(cy.h_poly(m), 1024) <= cy.h_supnorm_bound(m), m


def test_g_deriv_examples():
    assert cy.g_deriv_at(12, 1).overlaps(2 * math.sqrt(3)) or abs(float(cy.g_deriv_at(12, 1)) - 2 * math.sqrt(3)) < 1e-12
    assert abs(float(cy.g_deriv_at(5, 1)) - math.sqrt(5)) < 1e-12
    assert cy.g_deriv_at(3, 1).contains(1)
    with pytest.raises(ValueError):
        cy.g_deriv_at(12, 2)


def test_g_deriv_lower_bound_examples():
    assert cy.g_deriv_lower_bound(12).contains(1.5)
    assert cy.g_deriv_lower_bound(14).contains(1.75)
    assert cy.g_deriv_lower_bound(1291).contains(322.75)


def test_g_deriv_lower_bound_is_below_exact():
    # n = 4 is the equality case: 2|sin(pi/2)| = 2 and g_4' = 1 = bound
    assert cy.g_deriv_lower_bound(4).contains(1) and cy.g_deriv_at(4, 1).contains(1)
    for n in [3] + list(range(5, 150)):
        lb = cy.g_deriv_lower_bound(n)
        for k in range(1, (n + 1) // 2):
            if math.gcd(k, n) == 1 and 2 * k < n:
                assert lb < cy.g_deriv_at(n, k), (n, k)


def test_derivative_sine_identity_small():
    for n in range(3, 60):
        for k in range(1, (n + 1) // 2):
            if math.gcd(k, n) == 1 and 2 * k < n:
                assert cy.g_deriv_at(n, k).overlaps(cy.lemma7_rhs(n, k))


def test_mobius_product_examples():
    assert cy.homogeneous_cyclotomic(6, 2, 1) == 3
    assert cy.mobius_product_check(6, 2, 1)
    assert cy.homogeneous_cyclotomic(2, 3, 1) == 4
    assert cy.mobius_product_check(2, 3, 1)


def test_reduction_identity_sign():
    # the substitution identity is exact except at powers of two, where m = 1
    # and Phi_1(-Y) = -(Y + 1) introduces a sign
    units = {n: cy.lemma8_i_unit(n) for n in range(1, 200)}
    assert [n for n, e in units.items() if e == -1] == [2, 4, 8, 16, 32, 64, 128]
    assert all(cy.lemma8_i_holds(n) == (units[n] == 1) for n in range(1, 200))


def test_prime_lift_and_fold_small():
    for n in range(1, 60):
        for p in (2, 3, 5, 7):
            if n % p:
                assert cy.lemma8_ii_holds(p, n)
    assert all(cy.fold_identity_holds(n) for n in range(3, 120))


def test_cache_roundtrip_and_threadsafety():
    from concurrent.futures import ThreadPoolExecutor
    cy.clear_cache()
    with ThreadPoolExecutor(4) as pool:
        out = list(pool.map(cy.g_poly, [60, 60, 84, 84, 90, 90]))
    assert out[0] == out[1] and out[2] == out[3]
    assert {60, 84, 90} <= set(cy.cached_entries())


poly = st.lists(st.integers(-50, 50), min_size=1, max_size=8).map(P)


@given(poly, poly, poly)
def test_polynomial_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(poly, st.lists(st.integers(-50, 50), min_size=1, max_size=6).map(lambda c: P(c + [1])))
def test_divmod_with_monic_divisor(a, b):
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree
    assert (a * b).exact_div(b) == a


@given(poly, st.integers(-20, 20), st.integers(1, 20))
def test_homogeneous_matches_rational_evaluation(f, x, y):
    from fractions import Fraction
    d = max(f.degree, 0)
    assert f.homogeneous(x, y, d) == Fraction(f(Fraction(x, y))) * y ** d
