"""Bounded search for rational points on d*y^n = f(x), and the Granville exponent.

The search never proves C_d(Q) is empty; "nothing up to height H" is all it
can report.  Candidates x = r/s are filtered through n-th power residue
tables for a handful of auxiliary primes before the exact integer n-th root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .curve_model import SuperellipticCurve, TwistClass, theorem1_degree_gate
from .poly_core import eval_homogeneous, integer_nth_root, primes_up_to, rational_roots, signed_nth_root

# number of auxiliary primes used to discard (r, s) before exact root extraction
FILTER_PRIMES = 10


@dataclass(frozen=True)
class RationalPoint:
    """A point of C_d(Q); x is None for a point above infinity.

    For a point above infinity, branch is the rational g-th root of lc/d
    (g = gcd(n, deg f)) that labels it.
    """

    x: Fraction | None
    y: Fraction | None
    height: int
    trivial: bool = False
    branch: Fraction | None = None

    @property
    def at_infinity(self) -> bool:
        return self.x is None

    def satisfies(self, curve: SuperellipticCurve, d: int) -> bool:
        if self.at_infinity:
            g = curve.g_inf
            return self.branch is not None and self.branch**g == Fraction(curve.lc, d)
        fx = sum((Fraction(a) * self.x**i for i, a in enumerate(curve.f.coeffs)), Fraction(0))
        return d * self.y**curve.n == fx

    def __str__(self) -> str:
        if self.at_infinity:
            return f"infinity[{self.branch}]"
        return f"({self.x}, {self.y})"


def _rational_root(q: Fraction, g: int) -> Fraction | None:
    a = signed_nth_root(q.numerator, g)
    b = signed_nth_root(q.denominator, g)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def trivial_points(curve: SuperellipticCurve, d: int) -> list[RationalPoint]:
    """(alpha, 0) for rational roots alpha, and rational points above infinity."""
    out = [
        RationalPoint(r, Fraction(0), max(abs(r.numerator), r.denominator), trivial=True)
        for r in rational_roots(curve.f)
    ]
    root = _rational_root(Fraction(curve.lc, d), curve.g_inf)
    if root is not None:
        out.append(RationalPoint(None, None, 1, trivial=True, branch=root))
    return out


def _filter_primes(n: int) -> list[int]:
    """Primes q = 1 mod n above n; about 1/n of the residues mod q are n-th powers."""
    out = []
    for q in primes_up_to(10_000):
        if q > n and (q - 1) % n == 0:
            out.append(q)
        if len(out) == FILTER_PRIMES:
            break
    return out


@lru_cache(maxsize=8)
def _grid(curve: SuperellipticCurve, H: int):
    """Coprime (r, s), 1 <= s <= H, |r| <= H in scan order, with F(r,s) s^(nc-m) mod each filter prime."""
    rs_r, rs_s = [], []
    rr = np.arange(0, H + 1, dtype=np.int64)
    signed = np.stack([rr, -rr], axis=1).reshape(-1)[1:]  # 0, 1, -1, 2, -2, ...
    for s in range(1, H + 1):
        g = np.gcd(signed, s)
        keep = signed[g == 1]
        if s > 1:
            keep = keep[keep != 0]
        rs_r.append(keep)
        rs_s.append(np.full(keep.shape, s, dtype=np.int64))
    r = np.concatenate(rs_r)
    s = np.concatenate(rs_s)
    n, m = curve.n, curve.m
    shift = n * curve.chart_exponent - m
    tables = []
    for q in _filter_primes(n):
        rq = r % q
        sq = s % q
        acc = np.zeros_like(rq)
        spow = np.ones_like(rq)
        # F(r, s) = sum a_i r^i s^(m-i), Horner in r with powers of s
        for a in reversed(curve.f.coeffs):
            acc = (acc * rq + (a % q) * spow) % q
            spow = spow * sq % q
        for _ in range(shift):
            acc = acc * sq % q
        powers = np.zeros(q, dtype=bool)
        powers[[pow(x, n, q) for x in range(q)]] = True
        tables.append((q, acc, powers))
    return r, s, tables


def search_points(curve: SuperellipticCurve, d: TwistClass | int, H: int) -> RationalPoint | None:
    """First rational point on C_d in the order: trivial points, then (s, |r|, sign of r).

    Trivial points are returned whatever H is.  Otherwise the point returned
    has height max(|r|, s) <= H, and None means no point of height <= H.
    """
    if H < 1:
        raise ValueError("height bound must be at least 1")
    dd = d.d if isinstance(d, TwistClass) else d
    triv = trivial_points(curve, dd)
    if triv:
        return triv[0]
    n, m = curve.n, curve.m
    c = curve.chart_exponent
    shift = n * c - m
    dpow = dd ** (n - 1)
    r, s, tables = _grid(curve, H)
    mask = np.ones(r.shape, dtype=bool)
    for q, acc, powers in tables:
        mask &= powers[acc * (dpow % q) % q]
    for idx in np.nonzero(mask)[0]:
        ri, si = int(r[idx]), int(s[idx])
        F = eval_homogeneous(curve.f, ri, si)
        N = F * si**shift * dpow
        root = signed_nth_root(N, n)
        if root is None:
            continue
        y = Fraction(root, dd * si**c)
        return RationalPoint(Fraction(ri, si), y, max(abs(ri), si))
    return None


# -- Granville exponent --------------------------------------------------------


@dataclass(frozen=True)
class GranvilleData:
    """deg f = n k + i with 1 <= i <= n; exponent = n k + i - 1 - (gcd(n, i) + 1)/(n - 1)."""

    n: int
    m: int
    k: int
    i: int
    exponent: Fraction
    count_exponent: Fraction | None  # 2 / exponent, None when exponent <= 0
    epsilon: Fraction
    gate_holds: bool

    @property
    def count_exponent_with_epsilon(self) -> Fraction | None:
        if self.count_exponent is None:
            return None
        return self.count_exponent + self.epsilon


def granville_data(curve: SuperellipticCurve, epsilon: Fraction | int = 0) -> GranvilleData:
    n, m = curve.n, curve.m
    k = (m - 1) // n
    i = m - n * k
    E = Fraction(m - 1) - Fraction(gcd(n, i) + 1, n - 1)
    count = Fraction(2) / E if E > 0 else None
    return GranvilleData(n, m, k, i, E, count, Fraction(epsilon), theorem1_degree_gate(curve))


def height_bound_hint(
    curve: SuperellipticCurve, d: TwistClass | int, epsilon: Fraction | int = 0, c: Fraction | int = 1
) -> int:
    """ceil(c * |d|^(1/E + epsilon)) computed exactly; at least 1.  Advisory only."""
    dd = abs(d.d if isinstance(d, TwistClass) else d)
    E = granville_data(curve, epsilon).exponent
    c = Fraction(c)
    if E <= 0:
        return max(1, -(-c.numerator // c.denominator))
    expo = 1 / E + Fraction(epsilon)
    p, q = expo.numerator, expo.denominator
    # smallest H with (H b / a)^q >= d^p, i.e. H^q b^q >= a^q d^p
    target = c.numerator**q * dd**p
    scale = c.denominator**q
    h, _ = integer_nth_root(target // scale, q)
    while h**q * scale < target:
        h += 1
    while h > 1 and (h - 1) ** q * scale >= target:
        h -= 1
    return max(1, h)
