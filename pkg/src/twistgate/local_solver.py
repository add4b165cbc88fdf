"""Local solvability of d*y^n = f(x) over R and over Q_l.

C_d(Q_l) is nonempty iff some x in Q_l makes f(x)/d an n-th power (or zero):
any l-adic point above infinity is a limit of affine ones.  x in Z_l is the
affine chart; x = 1/t with t in l Z_l is the reciprocal chart, where

    d w^n = G(t) = t^(n c - m) * t^m f(1/t),     c = ceil(m/n).

Both charts are searched as trees of residue balls x = a + l^k z.  A ball is
closed when the constant Taylor coefficient dominates the others by at
least the class precision E (then every point in it has the class of the
centre value), when Hensel's lemma certifies a root of the chart polynomial,
or, for the ball around t = 0 when n does not divide m, by a finite check
over the valuation of t mod n and the unit class of t.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .curve_model import SuperellipticCurve, TwistClass, make_twist
from .padic import (
    class_key,
    class_precision,
    hensel_lift,
    is_nth_power_local,
    padic_nth_root_unit,
    unit_class_representatives,
    unit_is_nth_power,
    unit_part,
    valuation,
)
from .poly_core import (
    IntPoly,
    compose_linear,
    count_real_roots,
    prime_factors,
    primes_up_to,
    real_root_intervals,
    root_bound,
    roots_mod_ell,
)

WITNESS_PRECISION = 12
REAL = "R"


class LocalSolverError(RuntimeError):
    """The residue search hit its depth or work limit; no verdict is given."""


class Status(str, enum.Enum):
    SOLVABLE = "Solvable"
    UNSOLVABLE = "Unsolvable"


class Method(str, enum.Enum):
    SIGN = "SignAnalysis"
    WEIL_HENSEL = "WeilHensel"
    RESIDUE_SEARCH = "ResidueSearch"
    POWER_CLASS = "PowerClassIsomorphism"


@dataclass(frozen=True)
class Witness:
    """A local point: d*y^n = P(x) mod l^precision, P the chart polynomial.

    chart is "affine" (P = f), "infinity" (P = G, x is t = 1/x) or "real"
    (x is a rational with f(x)/d >= 0; y and precision are None).
    """

    chart: str
    x: int | Fraction
    y: int | None
    precision: int | None


@dataclass(frozen=True)
class LocalVerdict:
    place: str | int
    status: Status
    method: Method
    witness: Witness | None = None
    nodes: int = 0

    @property
    def solvable(self) -> bool:
        return self.status is Status.SOLVABLE


@dataclass(frozen=True)
class CriticalPlaceSet:
    real_place: bool
    primes: tuple[int, ...]

    def __contains__(self, ell) -> bool:
        return ell in self.primes


def depth_bound(curve: SuperellipticCurve, d: int, ell: int) -> int:
    """v(disc f) + v(lc f) + 2 v(n) + v(d) + 2."""

    def v(a):
        return valuation(a, ell)

    return v(curve.disc) + v(curve.lc) + 2 * v(curve.n) + v(d) + 2


def _curve_bad_primes(curve: SuperellipticCurve) -> tuple[int, ...]:
    small = primes_up_to(4 * curve.genus**2)
    bad = prime_factors(curve.n * curve.lc * curve.disc)
    return tuple(sorted(set(small) | set(bad)))


def critical_places(curve: SuperellipticCurve, d: TwistClass | int) -> CriticalPlaceSet:
    dd = d.d if isinstance(d, TwistClass) else d
    primes = set(solver_for(curve).bad_primes)
    if abs(dd) > 1:
        primes |= set(prime_factors(dd))
    return CriticalPlaceSet(True, tuple(sorted(primes)))


def real_sample_points(f: IntPoly) -> tuple[list[Fraction], bool]:
    """Rational sample points meeting every sign region of f, and whether f has a real root."""
    if count_real_roots(f) == 0:
        return [Fraction(0)], False
    # f changes sign at each real root, so these cover every sign f takes
    bound = root_bound(f) + 1
    pts = [-bound, bound]
    for a, b in real_root_intervals(f):
        pts += [a, b]
    return pts, True


def solvable_real(curve: SuperellipticCurve, d: TwistClass | int) -> LocalVerdict:
    dd = d.d if isinstance(d, TwistClass) else d
    if curve.n % 2 == 1:
        return LocalVerdict(REAL, Status.SOLVABLE, Method.SIGN, Witness("real", Fraction(0), None, None))
    f = curve.f
    pts, _ = solver_for(curve).real_points
    for x in pts:
        # f(x) = 0 is the real point (x, 0)
        if f(x) * dd >= 0:
            return LocalVerdict(REAL, Status.SOLVABLE, Method.SIGN, Witness("real", x, None, None))
    return LocalVerdict(REAL, Status.UNSOLVABLE, Method.SIGN)


def _first_power_hit(q: list[int], ell: int, n: int, dinv: int, skip: set[int]) -> int | None:
    """Least b in [0, l) outside skip with q(b)*dinv a nonzero n-th power residue mod l."""
    g = gcd(n, ell - 1)
    expo = (ell - 1) // g
    if ell < 256 or ell >= 1 << 31:
        for b in range(ell):
            if b in skip:
                continue
            val = 0
            for a in reversed(q):
                val = (val * b + a) % ell
            if val and pow(val * dinv % ell, expo, ell) == 1:
                return b
        return None
    chunk = 1 << 16
    for start in range(0, ell, chunk):
        xs = np.arange(start, min(start + chunk, ell), dtype=np.int64)
        acc = np.zeros_like(xs)
        for a in reversed(q):
            acc = (acc * xs + a) % ell
        acc = acc * (dinv % ell) % ell
        # vectorised acc^expo mod l
        res = np.ones_like(acc)
        base = acc.copy()
        e = expo
        while e:
            if e & 1:
                res = res * base % ell
            e >>= 1
            if e:
                base = base * base % ell
        hits = np.nonzero((acc != 0) & (res == 1))[0]
        for h in hits:
            b = int(xs[h])
            if b not in skip:
                return b
    return None


@dataclass
class _Found:
    kind: str  # "root" | "class" | "tail"
    chart: str
    x0: int


class LocalSolver:
    """Per-curve local solvability engine with a verdict cache keyed by power class of d."""

    def __init__(self, curve: SuperellipticCurve, depth_slack: int = 64):
        self.curve = curve
        self.depth_slack = depth_slack
        self.bad_primes = _curve_bad_primes(curve)
        self._cache: dict[tuple, tuple] = {}
        self.origin_mult = curve.n * curve.chart_exponent - curve.m
        self.reverse = curve.f.reversed()

    @cached_property
    def real_points(self) -> tuple[list[Fraction], bool]:
        return real_sample_points(self.curve.f)

    # -- chart search ------------------------------------------------------

    def chart_poly(self, chart: str) -> IntPoly:
        return self.curve.f if chart == "affine" else self.curve.infinity_poly

    def _search_chart(self, chart: str, d: int, ell: int, max_depth: int) -> tuple[_Found | None, int]:
        n = self.curve.n
        E = class_precision(ell, n)
        mod = ell**E
        vd, du = unit_part(d, ell)
        du_inv = pow(du, -1, mod)
        e0 = self.origin_mult if chart == "infinity" else 0
        lc = self.curve.lc
        vlc = valuation(lc, ell)

        def positive(val: int) -> bool:
            v, u = unit_part(val, ell)
            return (v - vd) % n == 0 and unit_is_nth_power(u * du_inv % mod, ell, n)

        P = self.chart_poly(chart)
        if chart == "affine":
            stack = [(0, 0, list(P.coeffs), False)]
        else:
            stack = [(0, 1, compose_linear(P.coeffs, 0, ell), e0 > 0)]
        nodes = 0
        while stack:
            a, k, c, origin = stack.pop()
            nodes += 1
            if k > max_depth:
                raise LocalSolverError(
                    f"residue search at l={ell} exceeded depth {max_depth} (nodes={nodes})"
                )
            if origin:
                # every t in l^k Z_l has F(t)/lc = 1 mod l^E once the tail is dominated
                Fk = compose_linear(self.reverse.coeffs, 0, ell**k)
                if all(valuation(x, ell) - vlc >= E for x in Fk[1:] if x):
                    hit = self._tail(ell, k, d)
                    if hit is not None:
                        return _Found("class", chart, hit), nodes
                    continue
            else:
                c0 = c[0] if c else 0
                if c0 == 0:
                    return _Found("root", chart, a), nodes
                v0 = valuation(c0, ell)
                c1 = c[1] if len(c) > 1 else 0
                if c1:
                    s = valuation(c1, ell) - k
                    if v0 > 2 * s and (e0 == 0 or valuation(a, ell) <= s):
                        return _Found("root", chart, a), nodes
                vmin = min((valuation(x, ell) for x in c[1:] if x), default=None)
                if vmin is None or v0 < vmin:
                    if (v0 - vd) % n:
                        continue
                    if vmin is None or vmin - v0 >= E:
                        if positive(c0):
                            return _Found("class", chart, a), nodes
                        continue
            # refine into child balls a + l^k (b + l z)
            step = ell**k
            if E == 1:
                vstar = min(valuation(x, ell) for x in c if x)
                q = [(x // ell**vstar) % ell if x else 0 for x in c]
                qpoly = IntPoly(tuple(q))
                roots = roots_mod_ell(qpoly, ell) if qpoly.degree > 0 else []
                if (vstar - vd) % n == 0 and len(roots) < ell:
                    b = _first_power_hit(list(qpoly.coeffs), ell, n, du_inv % ell, set(roots))
                    if b is not None:
                        return _Found("class", chart, a + step * b), nodes
                children = roots
            else:
                children = range(ell)
            for b in reversed(list(children)):
                stack.append((a + step * b, k + 1, compose_linear(c, b, ell), origin and b == 0))
        return None, nodes

    def _tail(self, ell: int, k: int, d: int) -> int | None:
        """Some t = l^j u, j >= k, with t^e lc / d an n-th power, or None."""
        n, e = self.curve.n, self.origin_mult
        E = class_precision(ell, n)
        mod = ell**E
        vd, du = unit_part(d, ell)
        vl, ul = unit_part(self.curve.lc, ell)
        base = ul * pow(du, -1, mod) % mod
        for j in range(k, k + n):
            if (j * e + vl - vd) % n:
                continue
            for u in unit_class_representatives(ell, n):
                if unit_is_nth_power(pow(u, e, mod) * base % mod, ell, n):
                    return ell**j * u
        return None

    # -- witnesses ---------------------------------------------------------

    def witness(self, found: _Found, d: int, ell: int) -> Witness:
        P = self.chart_poly(found.chart)
        prec = WITNESS_PRECISION
        n = self.curve.n
        if found.kind == "root":
            if P(found.x0) == 0:
                return Witness(found.chart, found.x0, 0, prec)
            # the lift keeps v(P'(x)) = s, and v(P(x)) >= prec + s > 2 s once prec > s
            s = valuation(P.derivative()(found.x0), ell)
            prec = max(prec, s + 1)
            return Witness(found.chart, hensel_lift(P, found.x0, ell, prec), 0, prec)
        val = P(found.x0)
        v, U = unit_part(val, ell)
        vd, du = unit_part(d, ell)
        s = (v - vd) // n
        # enough digits that v(d y^n - P(x)) > 2 v(n d y^(n-1))
        prec = max(prec, 2 * (valuation(n, ell) + vd + (n - 1) * s) - v + 1)
        mod = ell**prec
        w = U * pow(du, -1, mod) % mod
        r = padic_nth_root_unit(w, ell, self.curve.n, prec)
        total = v + prec
        return Witness(found.chart, found.x0, ell**s * r % ell**total, total)

    # -- public decisions --------------------------------------------------

    def residue_search(self, d: int, ell: int, max_depth: int | None = None) -> tuple[_Found | None, int]:
        key = ("tree", ell, class_key(d, ell, self.curve.n))
        if key in self._cache:
            return self._cache[key]
        if max_depth is None:
            max_depth = 4 * depth_bound(self.curve, d, ell) + self.depth_slack
        found, nodes = self._search_chart("affine", d, ell, max_depth)
        if found is None:
            found, more = self._search_chart("infinity", d, ell, max_depth)
            nodes += more
        self._cache[key] = (found, nodes)
        return found, nodes

    def weil_scan(self, d: int, ell: int) -> _Found | None:
        """Smooth F_l point for l outside the critical set (l odd, l not dividing n d disc lc)."""
        f = self.curve.f
        q = [x % ell for x in f.coeffs]
        roots = roots_mod_ell(f, ell)
        if roots:
            return _Found("root", "affine", roots[0])
        b = _first_power_hit(q, ell, self.curve.n, pow(d, -1, ell), set())
        if b is not None:
            return _Found("class", "affine", b)
        return None

    def solvable_padic(self, d: int, ell: int, max_depth: int | None = None) -> LocalVerdict:
        n = self.curve.n
        critical = ell in self.bad_primes or d % ell == 0
        if not critical:
            if d != 1 and is_nth_power_local(d, ell, n):
                base = self.solvable_padic(1, ell, max_depth)
                found = self._cache[("found1", ell)]
                wit = self.witness(found, d, ell) if found else None
                return LocalVerdict(ell, base.status, Method.POWER_CLASS, wit, base.nodes)
            found = self.weil_scan(d, ell)
            if found is not None:
                if d == 1:
                    self._cache[("found1", ell)] = found
                return LocalVerdict(ell, Status.SOLVABLE, Method.WEIL_HENSEL, self.witness(found, d, ell))
        found, nodes = self.residue_search(d, ell, max_depth)
        if d == 1:
            self._cache[("found1", ell)] = found
        if found is None:
            return LocalVerdict(ell, Status.UNSOLVABLE, Method.RESIDUE_SEARCH, None, nodes)
        return LocalVerdict(ell, Status.SOLVABLE, Method.RESIDUE_SEARCH, self.witness(found, d, ell), nodes)


@lru_cache(maxsize=64)
def solver_for(curve: SuperellipticCurve) -> LocalSolver:
    return LocalSolver(curve)


def _d_of(curve: SuperellipticCurve, d) -> int:
    if isinstance(d, TwistClass):
        return d.d
    return make_twist(curve, d).d


def solvable_padic(curve: SuperellipticCurve, d: TwistClass | int, ell: int, max_depth: int | None = None) -> LocalVerdict:
    return solver_for(curve).solvable_padic(_d_of(curve, d), ell, max_depth)


def everywhere_locally_solvable(curve: SuperellipticCurve, d: TwistClass | int) -> dict:
    """Verdicts at R and at every critical prime; other primes are solvable by Weil + Hensel."""
    dd = _d_of(curve, d)
    out: dict = {REAL: solvable_real(curve, dd)}
    for ell in critical_places(curve, dd).primes:
        out[ell] = solvable_padic(curve, dd, ell)
    return out


def is_els(verdicts: dict) -> bool:
    return all(v.solvable for v in verdicts.values())


def witness_holds(curve: SuperellipticCurve, d: int, ell: int, w: Witness) -> bool:
    """Recheck a p-adic witness: d*y^n = P(x) mod l^precision."""
    P = curve.f if w.chart == "affine" else curve.infinity_poly
    if w.chart == "infinity" and w.x % ell != 0:
        return False
    return (d * w.y**curve.n - P(w.x)) % ell**w.precision == 0
