from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    brute_factor_partition,
    brute_roots_mod,
    peval,
    sylvester_discriminant,
    sylvester_resultant,
)
from twistgate.poly_core import (
    IntPoly,
    count_real_roots,
    count_roots_mod_ell,
    discriminant,
    eval_homogeneous,
    factor_degree_partition_mod_ell,
    integer_nth_root,
    is_squarefree,
    nth_power_free_part,
    poly_gcd,
    primes_up_to,
    rational_roots,
    real_root_intervals,
    resultant,
    roots_mod_ell,
    signed_nth_root,
)

P = IntPoly.from_high_first
SEXTIC = P([1, 0, -11, 0, 36, 0, -36])  # (x^2-2)(x^2-3)(x^2-6)


def coeff_lists(max_deg=8, bound=50, min_deg=1):
    return st.lists(st.integers(-bound, bound), min_size=min_deg + 1, max_size=max_deg + 1).filter(
        lambda c: c[-1] != 0
    )


small_primes = st.sampled_from(primes_up_to(101))


# -- examples --------------------------------------------------------------------


def test_intpoly_strips_leading_zeros():
    f = IntPoly((1, 2, 0, 0))
    assert f.degree == 1 and f.coeffs == (1, 2)
    assert IntPoly(()).is_zero() and IntPoly(()).degree == -1
    assert (P([1, 1]) * P([1, -1]) - P([1, 0, -1])).is_zero()


def test_parse_high_first():
    f = IntPoly.parse("1, 0, 7, 0")
    assert f.coeffs == (0, 7, 0, 1)
    with pytest.raises(ValueError):
        IntPoly.parse(" , ")


def test_eval_homogeneous_examples():
    f = P([1, 0, 7, 0])
    assert eval_homogeneous(f, 1, 1) == 8
    assert eval_homogeneous(f, 1, 2) == 29
    assert eval_homogeneous(SEXTIC, 0, 1) == -36


def test_eval_homogeneous_rejects_bad_input():
    f = P([1, 0, 7, 0])
    with pytest.raises(ValueError):
        eval_homogeneous(f, 1, 0)
    with pytest.raises(ValueError):
        eval_homogeneous(f, 2, 4)


def test_discriminant_examples():
    assert discriminant(P([1, 0, -1])) == 4
    assert discriminant(P([1, 0, 0])) == 0
    assert discriminant(P([1, 0, 7, 0])) == -1372
    with pytest.raises(ValueError):
        discriminant(P([5]))


def test_is_squarefree_examples():
    assert is_squarefree(P([1, 0, 7, 0]))
    assert not is_squarefree(P([1, -1]) * P([1, -1]) * P([1, 2]))
    assert is_squarefree(P([1, 0, 0, 0, 0, 0, -1]))


def test_rational_roots_examples():
    assert rational_roots(P([1, 0, 7, 0])) == [Fraction(0)]
    assert rational_roots(SEXTIC) == []
    assert rational_roots(P([2, -3])) == [Fraction(3, 2)]


def test_roots_mod_ell_examples():
    assert sorted(roots_mod_ell(P([1, 0, 1]), 5)) == [2, 3]
    assert roots_mod_ell(P([1, 0, 1]), 7) == []
    assert roots_mod_ell(SEXTIC, 7)


def test_roots_mod_large_prime_uses_frobenius_gcd():
    p = 1_000_003
    f = P([1, 0, 1])
    assert count_roots_mod_ell(f, p) == (2 if p % 4 == 1 else 0)
    g = P([1, -5]) * P([1, 7]) * P([1, 0, 1])
    assert sorted(roots_mod_ell(g, p)) == sorted({5, p - 7})


def test_factor_partition_examples():
    assert factor_degree_partition_mod_ell(P([1, 0, 1]), 5) == [1, 1]
    assert factor_degree_partition_mod_ell(P([1, 0, 1]), 7) == [2]
    cubic = [-1, -1, 0, 1]  # x^3 - x - 1, low first
    assert factor_degree_partition_mod_ell(IntPoly(tuple(cubic)), 5) == brute_factor_partition(cubic, 5)


def test_factor_partition_rejects_bad_primes():
    with pytest.raises(ValueError):
        factor_degree_partition_mod_ell(P([1, 0, 7, 0]), 7)
    with pytest.raises(ValueError):
        factor_degree_partition_mod_ell(P([3, 0, 1]), 3)


def test_nth_power_free_part_examples():
    assert nth_power_free_part(32, 2) == (2, 4)
    assert nth_power_free_part(-24, 3) == (-3, 2)
    assert nth_power_free_part(7, 5) == (7, 1)
    with pytest.raises(ValueError):
        nth_power_free_part(0, 2)


def test_integer_roots():
    assert integer_nth_root(10**40, 4) == (10**10, True)
    assert integer_nth_root(10**40 - 1, 4) == (10**10 - 1, False)
    assert signed_nth_root(-27, 3) == -3
    assert signed_nth_root(-4, 2) is None


def test_real_roots_of_sextic():
    assert count_real_roots(SEXTIC) == 6
    assert count_real_roots(P([1, 0, 0, 0, 0, 0, 1])) == 0
    for a, b in real_root_intervals(SEXTIC):
        assert SEXTIC(a) * SEXTIC(b) <= 0


# -- invariants ---------------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(coeff_lists(max_deg=6, bound=20, min_deg=2), coeff_lists(max_deg=5, bound=20))
def test_resultant_matches_sylvester(f, g):
    assert resultant(IntPoly(tuple(f)), IntPoly(tuple(g))) == sylvester_resultant(f, g)


@settings(max_examples=200, deadline=None)
@given(coeff_lists(max_deg=7, bound=30, min_deg=1))
def test_discriminant_matches_sylvester_and_squarefreeness(f):
    F = IntPoly(tuple(f))
    if F.degree == 1:
        assert discriminant(F) == 1
        return
    disc = discriminant(F)
    assert disc == sylvester_discriminant(f)
    assert (disc != 0) == is_squarefree(F)
    assert (disc != 0) == (poly_gcd(F, F.derivative()).degree == 0)


@settings(max_examples=300, deadline=None)
@given(coeff_lists(), small_primes)
def test_roots_mod_ell_matches_scan(f, ell):
    F = IntPoly(tuple(f))
    assert set(roots_mod_ell(F, ell)) == brute_roots_mod(f, ell)
    assert count_roots_mod_ell(F, ell) == len(brute_roots_mod(f, ell))


@settings(max_examples=200, deadline=None)
@given(coeff_lists(max_deg=7, bound=30), st.sampled_from(primes_up_to(31)))
def test_partition_sums_to_degree(f, ell):
    F = IntPoly(tuple(f))
    disc = discriminant(F) if F.degree > 1 else 1
    if (F.lc * disc) % ell == 0:
        return
    parts = factor_degree_partition_mod_ell(F, ell)
    assert sum(parts) == F.degree
    assert parts.count(1) == len(roots_mod_ell(F, ell))


@settings(max_examples=60, deadline=None)
@given(coeff_lists(max_deg=6, bound=30), st.sampled_from(primes_up_to(13)))
def test_partition_matches_trial_division(f, ell):
    F = IntPoly(tuple(f))
    disc = discriminant(F) if F.degree > 1 else 1
    if (F.lc * disc) % ell == 0:
        return
    assert factor_degree_partition_mod_ell(F, ell) == brute_factor_partition(f, ell)


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**9, 10**9).filter(bool), st.integers(2, 6))
def test_nth_power_free_round_trip(a, n):
    d1, d2 = nth_power_free_part(a, n)
    assert d1 * d2**n == a
    for p in primes_up_to(1000):
        assert d1 % p**n != 0


@settings(max_examples=200, deadline=None)
@given(coeff_lists(bound=100), st.integers(-10**6, 10**6))
def test_eval_homogeneous_at_s_one(f, r):
    assert eval_homogeneous(IntPoly(tuple(f)), r, 1) == peval(f, r)


@settings(max_examples=200, deadline=None)
@given(coeff_lists(max_deg=6, bound=30), st.integers(-50, 50), st.integers(1, 50))
def test_eval_homogeneous_matches_rational(f, r, s):
    if gcd(r, s) != 1:
        return
    m = len(f) - 1
    assert eval_homogeneous(IntPoly(tuple(f)), r, s) == peval(f, Fraction(r, s)) * s**m


@settings(max_examples=100, deadline=None)
@given(coeff_lists(max_deg=7, bound=30, min_deg=1))
def test_real_root_count_agrees_with_intervals(f):
    F = IntPoly(tuple(f))
    if not is_squarefree(F):
        return
    ivs = real_root_intervals(F)
    assert len(ivs) == count_real_roots(F)
    for a, b in ivs:
        assert a <= b
        assert F(a) == 0 or F(b) == 0 or F(a) * F(b) < 0
