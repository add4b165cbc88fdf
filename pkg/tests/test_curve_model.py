from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import affine_point_count
from twistgate.curve_model import (
    InfinityStatus,
    InvalidCurveError,
    TriState,
    TwistClass,
    base_twist_parameter,
    build_curve,
    make_twist,
    rational_fixed_points,
    theorem1_degree_gate,
    twisted_model,
)
from twistgate.poly_core import IntPoly, discriminant, nth_power_free_part, primes_up_to, rational_roots

P = IntPoly.from_high_first
SEXTIC = P([1, 0, -11, 0, 36, 0, -36])


def hurwitz_genus(n, m):
    # 2g - 2 = -2n + m (n - 1) + (n - gcd(n, m)): the roots are totally ramified, infinity has gcd points
    total = -2 * n + m * (n - 1) + (n - gcd(n, m))
    assert total % 2 == 0
    return total // 2 + 1


def test_genus_examples():
    assert build_curve(2, P([1, 0, 0, 0, 0, -1])).genus == 2
    assert build_curve(2, P([1, 0, 7, 0])).genus == 1
    assert build_curve(3, P([1, 0, 0, 0, 1])).genus == 3


def test_build_curve_rejections():
    with pytest.raises(InvalidCurveError, match="squarefree"):
        build_curve(2, P([1, -1]) * P([1, -1]) * P([1, 0, 1]))
    with pytest.raises(InvalidCurveError):
        build_curve(2, P([1, 0, 1]))
    with pytest.raises(InvalidCurveError):
        build_curve(1, P([1, 0, 0, 1]))
    # y^2 = cubic is fine, but n = 2 with deg 2 would be genus 0
    with pytest.raises(InvalidCurveError):
        build_curve(2, P([1, 1, 0]))


def test_infinity_data():
    C = build_curve(4, SEXTIC)
    assert (C.g_inf, C.e_inf, C.chart_exponent) == (2, 2, 2)
    # G(t) = t^(8 - 6) * rev f
    assert C.infinity_poly.coeffs == (0, 0) + SEXTIC.reversed().coeffs
    C = build_curve(3, P([1, 0, 0, 1, 0]))
    assert C.e_inf == 3 and C.chart_exponent == 2


def test_fixed_point_examples():
    v = rational_fixed_points(build_curve(2, P([1, 0, 7, 0])))
    assert v.affine_fixed == (Fraction(0),) and v.condition_i_holds is TriState.NO
    v = rational_fixed_points(build_curve(2, P([1, 0, 0, 0, 0, -2])))
    assert v.affine_fixed == ()
    assert v.infinity_status is InfinityStatus.RATIONAL_BRANCH and v.condition_i_holds is TriState.NO
    v = rational_fixed_points(build_curve(2, SEXTIC))
    assert v.affine_fixed == ()
    assert v.infinity_status is InfinityStatus.NO_BRANCH and v.condition_i_holds is TriState.YES
    v = rational_fixed_points(build_curve(4, SEXTIC))
    assert v.infinity_status is InfinityStatus.INDETERMINATE and v.condition_i_holds is TriState.UNKNOWN


def test_make_twist_examples():
    C2 = build_curve(2, SEXTIC)
    C3 = build_curve(3, P([1, 0, 0, 2, 0]))
    assert make_twist(C2, 8).d == 2
    assert make_twist(C3, -5).d == 5
    assert make_twist(C2, -5).d == -5
    with pytest.raises(ValueError):
        make_twist(C2, 0)
    with pytest.raises(ValueError):
        TwistClass(C2, 8)
    with pytest.raises(ValueError):
        TwistClass(C3, -5)


def test_degree_gate_examples():
    assert theorem1_degree_gate(build_curve(2, SEXTIC))
    assert not theorem1_degree_gate(build_curve(2, P([1, 0, 0, 0, 0, -1])))
    assert theorem1_degree_gate(build_curve(3, P([1, 0, 0, 0, 0, 1])))


def test_base_twist_parameter_carries_a_point():
    C = build_curve(2, SEXTIC)
    c, d1 = base_twist_parameter(C)
    assert c == 1 and d1 == -10  # f(1) = -10
    C = build_curve(2, P([1, 0, -1, 0]))  # f(1) = 0, so c = 2, f(2) = 6
    assert base_twist_parameter(C) == (2, 6)


def test_twisted_model():
    C = build_curve(3, P([1, 0, 0, 2, 0]))
    T = twisted_model(C, 5)
    assert T.f.coeffs == tuple(25 * a for a in C.f.coeffs)


def test_weil_interval_for_genus_two():
    f = [-1, 0, 0, 0, 0, 1]  # x^5 - 1
    C = build_curve(2, IntPoly(tuple(f)))
    g = C.genus
    for ell in primes_up_to(97):
        if ell < 7 or (2 * C.disc) % ell == 0:
            continue
        count = affine_point_count(f, ell) + 1  # one point at infinity for odd degree
        # |count - (l + 1)| <= 2 g sqrt(l), squared to stay in integers
        assert (count - ell - 1) ** 2 <= 4 * g * g * ell


@st.composite
def squarefree_polys(draw, min_deg=3, max_deg=7):
    coeffs = draw(st.lists(st.integers(-9, 9), min_size=min_deg + 1, max_size=max_deg + 1).filter(lambda c: c[-1]))
    f = IntPoly(tuple(coeffs))
    if discriminant(f) == 0:
        coeffs[0] += 1
        f = IntPoly(tuple(coeffs))
    if discriminant(f) == 0 or f.degree < min_deg:
        return P([1, 0, 1, 1])
    return f


@settings(max_examples=200, deadline=None)
@given(squarefree_polys(), st.integers(2, 7))
def test_genus_matches_hurwitz(f, n):
    C = build_curve(n, f)
    assert C.genus == hurwitz_genus(n, f.degree)
    assert (C.e_inf > 1) == (f.degree % n != 0)
    if n == 2:
        assert C.genus == (f.degree - 1) // 2


@settings(max_examples=200, deadline=None)
@given(squarefree_polys(), st.integers(2, 5), st.integers(-500, 500).filter(bool), st.integers(-10, 10).filter(bool))
def test_make_twist_idempotent(f, n, d, b):
    C = build_curve(n, f)
    t = make_twist(C, d)
    assert make_twist(C, d * b**n) == t
    assert make_twist(C, t.d) == t
    assert nth_power_free_part(t.d, n)[0] == t.d
    if n % 2:
        assert t.d > 0


@settings(max_examples=200, deadline=None)
@given(squarefree_polys(), st.integers(2, 6))
def test_no_yes_with_rational_root(f, n):
    v = rational_fixed_points(build_curve(n, f))
    if rational_roots(f):
        assert v.condition_i_holds is TriState.NO
    if v.condition_i_holds is TriState.UNKNOWN:
        assert v.infinity_status is InfinityStatus.INDETERMINATE and not v.affine_fixed
