"""Superelliptic curves y^n = f(x) with squarefree f, and their twists d*y^n = f(x)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .poly_core import IntPoly, discriminant, is_squarefree, nth_power_free_part, rational_roots


class InvalidCurveError(ValueError):
    pass


class InfinityStatus(str, enum.Enum):
    NO_BRANCH = "NoBranchAtInfinity"
    RATIONAL_BRANCH = "RationalBranchPoint"
    NONRATIONAL_BRANCH = "NonRationalBranchPoint"
    INDETERMINATE = "Indeterminate"


class TriState(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


def genus_formula(n: int, m: int) -> Fraction:
    return Fraction((m - 1) * (n - 1) + 1 - gcd(n, m), 2)


@dataclass(frozen=True)
class SuperellipticCurve:
    n: int
    f: IntPoly

    @property
    def m(self) -> int:
        return self.f.degree

    @property
    def lc(self) -> int:
        return self.f.lc

    @cached_property
    def disc(self) -> int:
        return discriminant(self.f)

    @property
    def g_inf(self) -> int:
        return gcd(self.n, self.m)

    @property
    def e_inf(self) -> int:
        """Ramification index of the points above infinity."""
        return self.n // self.g_inf

    @property
    def chart_exponent(self) -> int:
        """c = ceil(m/n), so that t^(n c) f(1/t) is a polynomial."""
        return -(-self.m // self.n)

    @cached_property
    def genus(self) -> int:
        g = genus_formula(self.n, self.m)
        assert g.denominator == 1, "genus formula must give an integer"
        return int(g)

    @cached_property
    def infinity_poly(self) -> IntPoly:
        """G(t) = t^(n c - m) * t^m f(1/t), the model at infinity."""
        e = self.n * self.chart_exponent - self.m
        return IntPoly((0,) * e + self.f.reversed().coeffs)

    def __str__(self) -> str:
        return f"y^{self.n} = {self.f}"


def build_curve(n: int, f: IntPoly) -> SuperellipticCurve:
    if n < 2:
        raise InvalidCurveError("n must be at least 2")
    if f.degree < 3:
        raise InvalidCurveError("deg f must be at least 3")
    if not is_squarefree(f):
        raise InvalidCurveError(
            "f must be squarefree: only models with distinct roots (all multiplicities 1) are supported"
        )
    g = genus_formula(n, f.degree)
    if g.denominator != 1 or g < 0:
        raise InvalidCurveError(f"genus formula gave {g}; inconsistent input")
    if g < 1:
        raise InvalidCurveError("curve has genus 0; twists of genus 0 curves are not handled")
    return SuperellipticCurve(n, f)


@dataclass(frozen=True)
class TwistClass:
    curve: SuperellipticCurve
    d: int

    def __post_init__(self) -> None:
        if self.d == 0:
            raise ValueError("twist parameter must be nonzero")
        d1, _ = nth_power_free_part(self.d, self.curve.n)
        if d1 != self.d or (self.curve.n % 2 == 1 and self.d < 0):
            raise ValueError(f"{self.d} is not a canonical twist parameter; use make_twist")

    def __str__(self) -> str:
        return f"{self.d}*y^{self.curve.n} = {self.curve.f}"


def make_twist(curve: SuperellipticCurve, d_raw: int) -> TwistClass:
    if d_raw == 0:
        raise ValueError("twist parameter must be nonzero")
    d, _ = nth_power_free_part(d_raw, curve.n)
    if curve.n % 2 == 1:
        # y -> -y identifies C_d with C_{-d}
        d = abs(d)
    return TwistClass(curve, d)


@dataclass(frozen=True)
class FixedPointVerdict:
    affine_fixed: tuple[Fraction, ...]
    infinity_status: InfinityStatus
    condition_i_holds: TriState = field(init=False)

    def __post_init__(self) -> None:
        if self.affine_fixed or self.infinity_status is InfinityStatus.RATIONAL_BRANCH:
            value = TriState.NO
        elif self.infinity_status is InfinityStatus.INDETERMINATE:
            value = TriState.UNKNOWN
        else:
            value = TriState.YES
        object.__setattr__(self, "condition_i_holds", value)


def rational_fixed_points(curve: SuperellipticCurve) -> FixedPointVerdict:
    roots = tuple(rational_roots(curve.f))
    g = curve.g_inf
    if g == curve.n:
        status = InfinityStatus.NO_BRANCH
    elif g == 1:
        status = InfinityStatus.RATIONAL_BRANCH
    else:
        status = InfinityStatus.INDETERMINATE
    return FixedPointVerdict(roots, status)


def theorem1_degree_gate(curve: SuperellipticCurve) -> bool:
    """deg f >= (4n - 2)/(n - 1), compared exactly."""
    n = curve.n
    return curve.m * (n - 1) >= 4 * n - 2


def base_twist_parameter(curve: SuperellipticCurve) -> tuple[int, int]:
    """(c, d1): smallest c >= 1 with f(c) != 0 and d1 the n-th-power-free part of f(c).

    C_{d1} carries the rational point (c, d2) where f(c) = d1 d2^n.
    """
    c = 1
    while curve.f(c) == 0:
        c += 1
    d1, _ = nth_power_free_part(curve.f(c), curve.n)
    if curve.n % 2 == 1:
        d1 = abs(d1)
    return c, d1


def twisted_model(curve: SuperellipticCurve, d: int) -> SuperellipticCurve:
    """C_d written as y^n = d^(n-1) f(x); its twist by e is C_{d e}."""
    return SuperellipticCurve(curve.n, curve.f * (d ** (curve.n - 1)))
