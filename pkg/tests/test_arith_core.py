import math
from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sunconj.arith_core import (
    EULER_GAMMA,
    ConstantEstimate,
    FactorMap,
    carmichael_lambda,
    divisors,
    f_exact,
    f_value,
    factorize,
    g_exact,
    inverse_c2_series,
    mertens_product,
    mobius,
    mult_order,
    odd_squarefree_divisors,
    pollard_brent,
    singular_series,
    twin_prime_constant,
)
from sunconj.errors import DomainError, FactorizationTimeout

# 1/C2 to 7 digits, from the product at cutoff 1e8 (frozen oracle)
C2_REF = 0.6601618


def test_factorize_examples():
    assert factorize(1) == FactorMap()
    assert factorize(4084).as_dict() == {2: 2, 1021: 1}
    assert factorize(46).as_dict() == {2: 1, 23: 1}
    assert factorize(2**12 - 12).value() == 4084


@pytest.mark.parametrize(
    "n",
    [
        2**64 + 1,
        (2**31 - 1) * (2**61 - 1),
        1000003 * 1000033,
        999983**3 * 2**5,
        2**128 - 1,
        600851475143,
        10**18 + 9,
    ],
)
def test_factorize_against_sympy(n):
    assert factorize(n).as_dict() == sympy.factorint(n)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**15))
def test_factorize_reconstructs(n):
    fm = factorize(n)
    assert fm.value() == n
    ps = fm.primes
    assert list(ps) == sorted(set(ps))
    assert all(sympy.isprime(p) for p in ps)


def test_factorize_rejects_zero():
    with pytest.raises(DomainError):
        factorize(0)


def test_rho_budget_is_enforced():
    n = 1000003 * 1000033
    with pytest.raises(FactorizationTimeout) as info:
        pollard_brent(n, budget=1)
    assert info.value.n == n


def test_factor_map_helpers():
    fm = FactorMap.from_dict({5: 1, 2: 3})
    assert fm.factors == ((2, 3), (5, 1))
    assert fm.value() == 40
    assert str(fm) == "2^3 5"
    assert fm.merge(FactorMap.from_dict({5: 2, 7: 1})).as_dict() == {2: 3, 5: 3, 7: 1}
    assert sorted(divisors(fm)) == sympy.divisors(40)


@pytest.mark.parametrize("n,mu", [(1, 1), (15, 1), (12, 0), (30, -1), (2, -1), (49, 0)])
def test_mobius_examples(n, mu):
    assert mobius(n) == mu


def test_mobius_matches_sympy():
    assert all(mobius(n) == sympy.mobius(n) for n in range(1, 3000))


@pytest.mark.parametrize("a,m,t", [(2, 7, 3), (4, 7, 3), (4, 3, 1), (2, 1, 1), (2, 2**61 - 1, 61)])
def test_mult_order_examples(a, m, t):
    assert mult_order(a, m) == t


def test_mult_order_domain():
    with pytest.raises(DomainError):
        mult_order(2, 6)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10**6), st.integers(2, 10**9))
def test_mult_order_properties(a, m):
    assume(gcd(a, m) == 1)
    t = mult_order(a, m)
    assert pow(a, t, m) == 1 % m
    assert carmichael_lambda(factorize(m)) % t == 0
    assert sympy.totient(m) % t == 0
    for q in factorize(t).primes:
        assert pow(a, t // q, m) != 1
    if m < 10**6:
        assert t == sympy.n_order(a, m)


def test_carmichael_lambda_matches_sympy():
    for m in range(1, 2000):
        assert carmichael_lambda(factorize(m)) == sympy.reduced_totient(m)


def test_f_examples():
    assert f_value(1) == 1.0
    assert f_value(4) == 1.0
    assert f_exact(15) == Fraction(8, 3)
    assert f_exact(46) == Fraction(22, 21)
    assert f_value(46) == pytest.approx(22 / 21, rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_f_multiplicative(a, b):
    assume(gcd(a, b) == 1)
    assert f_exact(a * b) == f_exact(a) * f_exact(b)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**5), st.integers(0, 20), st.integers(1, 4))
def test_f_depends_on_odd_kernel(d, a, e):
    assert f_exact(d**e * 2**a) == f_exact(d)


def _brute_divisor_sum(d):
    """sum over odd square-free l | d of g(l), by scanning every l <= d."""
    total = Fraction(0)
    for l in range(1, d + 1, 2):
        if d % l == 0 and all(l % (p * p) for p in range(3, math.isqrt(l) + 1, 2)):
            term = Fraction(1)
            for p in sympy.primefactors(l):
                term /= p - 2
            total += term
    return total


def test_divisor_sum_identity_brute_small():
    for d in range(1, 400):
        assert _brute_divisor_sum(d) == f_exact(d)


def test_divisor_sum_identity_exhaustive():
    for d in range(1, 10**4 + 1):
        assert sum((g_exact(l) for l in odd_squarefree_divisors(d)), Fraction(0)) == f_exact(d)


def test_g_exact():
    assert g_exact(1) == 1
    assert g_exact(3) == 1
    assert g_exact(15) == Fraction(1, 3)
    assert g_exact(9) == 0
    assert g_exact(6) == 0


def test_singular_series():
    c2 = twin_prime_constant(10**6)
    assert singular_series(2, c2) == pytest.approx(1.320324, abs=2e-6)
    assert singular_series(6, c2) == pytest.approx(2.640647, abs=4e-6)
    assert singular_series(4, c2) == singular_series(2, c2)
    with pytest.raises(DomainError):
        singular_series(5, c2)


def test_twin_prime_constant_small():
    est = twin_prime_constant(3)
    assert est.value == pytest.approx(0.75, rel=1e-15)
    assert est.lower == pytest.approx(0.75 * math.exp(-0.5), rel=1e-15)
    assert est.upper == est.value
    with pytest.raises(DomainError):
        twin_prime_constant(2)


def test_twin_prime_constant_exact_product_small():
    exact = Fraction(1)
    for p in sympy.primerange(3, 1000):
        exact *= 1 - Fraction(1, (p - 1) ** 2)
    assert twin_prime_constant(1000).value == pytest.approx(float(exact), rel=1e-13)


def test_twin_prime_constant_intervals():
    mid = twin_prime_constant(10**6)
    assert mid.width < 1e-5
    assert mid.lower <= C2_REF <= mid.upper + 5e-8
    big = twin_prime_constant(10**8)
    assert big.width < 1e-7
    assert big.lower <= 0.66016181 <= big.upper
    # tighter cutoff encloses inside the looser one
    assert mid.lower <= big.lower and big.upper <= mid.upper


def test_constant_estimate_invariant():
    with pytest.raises(ValueError):
        ConstantEstimate(1.0, 2.0, 3.0, "bad")


def test_mertens():
    assert mertens_product(3).product == pytest.approx(1.5)
    assert mertens_product(5).product == pytest.approx(15 / 8)
    mp = mertens_product(10**6)
    assert mp.asymptotic == pytest.approx(math.exp(EULER_GAMMA) / 2 * math.log(10**6))
    assert 0.99 <= mp.ratio <= 1.01


def test_inverse_c2_series_examples():
    assert inverse_c2_series(1) == 1.0
    assert inverse_c2_series(3) == pytest.approx(4 / 3)
    exact = sum((g_exact(e) / e for e in range(1, 200, 2)), Fraction(0))
    assert inverse_c2_series(199) == pytest.approx(float(exact), rel=1e-13)


def test_inverse_c2_series_monotone():
    vals = [inverse_c2_series(b) for b in range(1, 300)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_inverse_c2_series_limit():
    c2 = twin_prime_constant(10**8)
    assert abs(inverse_c2_series(10**6) - 1 / c2.value) < 1e-3
    assert abs(inverse_c2_series(10**6) * c2.value - 1) < 2e-3
