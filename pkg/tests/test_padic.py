from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_is_nth_power, unit_powers
from twistgate.padic import (
    HenselError,
    PadicContext,
    class_key,
    class_precision,
    has_root_in_zl,
    hensel_lift,
    is_nth_power_local,
    nth_power_class_congruence,
    padic_nth_root_unit,
    unit_class_key,
    unit_class_representatives,
    valuation,
)
from twistgate.poly_core import IntPoly

P = IntPoly.from_high_first
primes13 = st.sampled_from([2, 3, 5, 7, 11, 13])
nonzero = st.integers(-10**4, 10**4).filter(bool)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(12, 5) == 0
    assert valuation(3**7 * 5, 3) == 7
    assert valuation(-8, 2) == 3
    with pytest.raises(ValueError):
        valuation(0, 3)


def test_context_precision():
    ctx = PadicContext(3, 3)
    assert ctx.theta == 1 and ctx.working_precision == 3 and ctx.modulus == 27
    assert PadicContext(2, 4).working_precision == 2 * 2 + 3
    assert PadicContext(5, 2).working_precision == 1
    with pytest.raises(ValueError):
        PadicContext(3, 9, working_precision=4)


def test_is_nth_power_examples():
    assert is_nth_power_local(4, 5, 2)
    assert is_nth_power_local(28, 3, 3)
    assert is_nth_power_local(2, 5, 2) == brute_is_nth_power(2, 5, 2)
    assert not is_nth_power_local(2, 5, 2)
    assert is_nth_power_local(17, 2, 2) and not is_nth_power_local(5, 2, 2)
    assert is_nth_power_local(Fraction(9, 4), 7, 2)
    with pytest.raises(ValueError):
        is_nth_power_local(0, 3, 2)


def test_hensel_examples():
    x = hensel_lift(P([1, 0, -17]), 1, 2, 5)
    assert x in (9, 23) and (x * x - 17) % 32 == 0
    g = P([1, 0, 0, -28])
    x = hensel_lift(g, 1, 3, 10)
    assert g(x) % 3**10 == 0 and x % 9 == 1
    with pytest.raises(HenselError):
        hensel_lift(P([1, 0, -5]), 0, 5, 4)


def test_class_congruence_examples():
    mod, res = nth_power_class_congruence(1, 5, 2)
    assert mod == 5 and sorted(res) == [1, 4]
    mod, res = nth_power_class_congruence(1, 3, 3)
    assert mod == 27 and sorted(res) == [1, 8, 10, 17, 19, 26]
    mod, res = nth_power_class_congruence(2, 5, 2)
    assert all(valuation(r, 5) == 0 for r in res)


def test_has_root_in_zl_examples():
    assert has_root_in_zl(P([1, 0, -17]), 2)
    assert not has_root_in_zl(P([1, 0, -3]), 2)
    assert has_root_in_zl(P([1, 0, 1]), 5)
    assert not has_root_in_zl(P([1, 0, 1]), 7)
    assert has_root_in_zl(P([1, 0, -2]), 7)
    # x^2 - 25 * 3: no root in Z_5 although it is 0 mod 25
    assert not has_root_in_zl(P([1, 0, -75]), 5)
    assert has_root_in_zl(P([1, 0, -11, 0, 36, 0, -36]), 23)


@settings(max_examples=500, deadline=None)
@given(nonzero, primes13, st.integers(2, 6))
def test_is_nth_power_matches_enumeration(a, ell, n):
    assert is_nth_power_local(a, ell, n) == brute_is_nth_power(a, ell, n)


@settings(max_examples=300, deadline=None)
@given(nonzero, st.integers(-10**3, 10**3).filter(bool), primes13, st.integers(2, 6))
def test_closure_under_nth_powers(a, b, ell, n):
    assert is_nth_power_local(a * b**n, ell, n) == is_nth_power_local(a, ell, n)


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, primes13, st.integers(2, 6))
def test_class_key_detects_ratio_in_nth_powers(a, b, ell, n):
    # a/b is an n-th power iff a * b^(n-1) is
    same = brute_is_nth_power(a * b ** (n - 1), ell, n)
    assert (class_key(a, ell, n) == class_key(b, ell, n)) == same


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_representatives_are_a_transversal(ell, n):
    reps = unit_class_representatives(ell, n)
    labels = {unit_class_key(u, ell, n) for u in reps}
    assert len(labels) == len(reps)
    e = class_precision(ell, n) + 2
    mod = ell**e
    units = [u for u in range(1, min(mod, 5000)) if u % ell]
    # index of the n-th powers among units mod l^e: the group order divided by the image size
    image = unit_powers(ell, n, e)
    assert len(reps) == (mod - mod // ell) // len(image)
    for u in units[:400]:
        hits = [r for r in reps if brute_is_nth_power(u * pow(r, n - 1, mod), ell, n)]
        assert len(hits) == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(-500, 500).filter(bool), primes13, st.integers(2, 5))
def test_class_congruence_residues_share_the_class(c, ell, n):
    if valuation(c, ell) >= n:
        return
    mod, res = nth_power_class_congruence(c, ell, n)
    assert res
    for r in res[:: max(1, len(res) // 20)]:
        for k in (0, 1, 7):
            d = r + k * mod
            # d / c is an n-th power in Q_l
            assert brute_is_nth_power(d * c ** (n - 1), ell, n)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 10**4), primes13, st.integers(2, 6), st.integers(1, 30))
def test_nth_root_of_unit_powers(w, ell, n, prec):
    if w % ell == 0:
        return
    u = w**n
    r = padic_nth_root_unit(u, ell, n, prec)
    assert (r**n - u) % ell**prec == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(-10**4, 10**4).filter(bool), st.integers(0, 10**4), primes13, st.integers(1, 20))
def test_hensel_output_is_a_root(a, x0, ell, prec):
    g = P([1, 0, -a])
    try:
        x = hensel_lift(g, x0, ell, prec)
    except HenselError:
        dg = 2 * x0
        gx = x0 * x0 - a
        assert dg == 0 or (gx != 0 and valuation(gx, ell) <= 2 * valuation(dg, ell))
        return
    assert g(x) % ell**prec == 0
