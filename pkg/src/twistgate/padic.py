"""l-adic primitives: valuations, n-th power classes of Q_l^*, Hensel lifting.

The class of a unit u in U/U^n is decided from u mod l^E with
E = 2*v_l(n) + 1 for odd l and E = 2*v_2(n) + 3 for l = 2.  Hensel's lemma
applied to x^n - u at x = 1 shows 1 + l^E Z_l lies in U^n for either value,
so the residue mod l^E determines the class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import nthroot_mod, primitive_root

from .poly_core import IntPoly, compose_linear, roots_mod_ell


class HenselError(ValueError):
    """Raised when the Hensel criterion v(g(x0)) > 2 v(g'(x0)) fails."""


def valuation(a: int, ell: int) -> int:
    if a == 0:
        raise ValueError("valuation of 0 is infinite")
    a = abs(a)
    v = 0
    while a % ell == 0:
        a //= ell
        v += 1
    return v


def val_or_inf(a: int, ell: int, cap: float = float("inf")):
    return cap if a == 0 else valuation(a, ell)


def unit_part(a: int, ell: int) -> tuple[int, int]:
    """(v, u) with a = ell^v * u and ell not dividing u."""
    v = valuation(a, ell)
    return v, a // ell**v


def class_precision(ell: int, n: int) -> int:
    theta = valuation(n, ell)
    return 2 * theta + 3 if ell == 2 else 2 * theta + 1


@dataclass(frozen=True)
class PadicContext:
    ell: int
    n: int
    working_precision: int = 0
    theta: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", valuation(self.n, self.ell))
        floor = 2 * self.theta + 1
        if self.working_precision == 0:
            object.__setattr__(self, "working_precision", class_precision(self.ell, self.n))
        elif self.working_precision < floor:
            raise ValueError(f"working precision must be at least {floor}")

    @property
    def modulus(self) -> int:
        return self.ell**self.working_precision


@lru_cache(maxsize=None)
def _two_adic_image(n: int, e: int) -> frozenset[int]:
    m = 1 << e
    return frozenset(pow(u, n, m) for u in range(1, m, 2))


def _phi_power(ell: int, e: int) -> int:
    return ell ** (e - 1) * (ell - 1)


def unit_is_nth_power(u: int, ell: int, n: int) -> bool:
    """Is the l-adic unit u an n-th power in Z_l^*?"""
    e = class_precision(ell, n)
    m = ell**e
    if ell == 2:
        return u % m in _two_adic_image(n, e)
    phi = _phi_power(ell, e)
    return pow(u % m, phi // gcd(n, phi), m) == 1


def is_nth_power_local(a, ell: int, n: int) -> bool:
    """Is a (a nonzero integer or Fraction) in Q_l^{*n}?"""
    if isinstance(a, Fraction):
        if a == 0:
            raise ValueError("0 is not in Q_l^*")
        a = a.numerator * a.denominator ** (n - 1)
    if a == 0:
        raise ValueError("0 is not in Q_l^*")
    v, u = unit_part(a, ell)
    if v % n:
        return False
    return unit_is_nth_power(u, ell, n)


def unit_class_key(u: int, ell: int, n: int) -> int:
    """Canonical label of the class of the unit u in Z_l^*/Z_l^{*n}."""
    e = class_precision(ell, n)
    m = ell**e
    if ell == 2:
        return min((u * w) % m for w in _two_adic_image(n, e))
    phi = _phi_power(ell, e)
    return pow(u % m, phi // gcd(n, phi), m)


def class_key(a: int, ell: int, n: int) -> tuple[int, int]:
    """Label of the class of a in Q_l^*/Q_l^{*n}: (v mod n, unit label)."""
    v, u = unit_part(a, ell)
    return v % n, unit_class_key(u, ell, n)


@lru_cache(maxsize=None)
def unit_class_representatives(ell: int, n: int) -> tuple[int, ...]:
    """One positive unit residue mod l^E from each class of Z_l^*/Z_l^{*n}."""
    e = class_precision(ell, n)
    m = ell**e
    if ell == 2:
        seen: dict[int, int] = {}
        for u in range(1, m, 2):
            seen.setdefault(unit_class_key(u, 2, n), u)
        return tuple(sorted(seen.values()))
    phi = _phi_power(ell, e)
    g = gcd(n, phi)
    r = primitive_root(m)
    return tuple(sorted(pow(r, i, m) for i in range(g)))


def hensel_lift(g: IntPoly, x0: int, ell: int, target_precision: int) -> int:
    """Lift x0 to the root of g in Z_l it determines, returned mod l^target_precision.

    Requires v(g(x0)) > 2 v(g'(x0)).  The root is the unique one congruent to x0
    mod l^(v(g'(x0)) + 1).
    """
    dg = g.derivative()
    gx, dx = g(x0), dg(x0)
    if dx == 0:
        raise HenselError("Hensel criterion not met: g'(x0) = 0")
    s = valuation(dx, ell)
    if gx != 0 and valuation(gx, ell) <= 2 * s:
        raise HenselError(
            f"Hensel criterion not met: v(g(x0)) = {valuation(gx, ell)} <= 2*{s}"
        )
    work = ell ** (target_precision + 2 * s + 1)
    x = x0
    for _ in range(4 * target_precision + 64):
        gx = g(x)
        if gx == 0 or valuation(gx, ell) >= target_precision + s:
            return x % ell**target_precision
        dx = dg(x)
        t = gx // ell**s
        u = dx // ell**s
        x = (x - t * pow(u, -1, work)) % work
    raise HenselError("Newton iteration failed to converge")


def nth_power_class_congruence(c: int, ell: int, n: int) -> tuple[int, list[int]]:
    """Residues r mod l^(v(c)+E) such that every d = r mod that modulus has d/c in Q_l^{*n}."""
    if c == 0:
        raise ValueError("c must be nonzero")
    v, u = unit_part(c, ell)
    if v >= n:
        raise ValueError("class representative must have v_l(c) < n")
    e = class_precision(ell, n)
    m = ell**e
    base = ell**v
    target = unit_class_key(u, ell, n)
    residues = [
        base * w
        for w in range(1, m)
        if w % ell and unit_class_key(w, ell, n) == target
    ]
    return base * m, residues


def padic_nth_root_unit(u: int, ell: int, n: int, precision: int) -> int:
    """w with w^n = u mod l^precision, for an l-adic unit u in Z_l^{*n}."""
    if not unit_is_nth_power(u, ell, n):
        raise ValueError(f"{u} is not an {n}-th power in Z_{ell}")
    e = class_precision(ell, n)
    m = ell**e
    if m <= 1 << 16:
        seed = next(w for w in range(1, m) if w % ell and (pow(w, n, m) - u) % m == 0)
    else:
        # e == 1 here: l is large and does not divide n
        seed = int(nthroot_mod(u % ell, n, ell))
    g = IntPoly((-u,) + (0,) * (n - 1) + (1,))
    return hensel_lift(g, seed, ell, max(precision, 1))


def has_root_in_zl(f: IntPoly, ell: int, max_depth: int = 256) -> bool:
    """Does the squarefree polynomial f have a root in Z_l?"""
    # c holds the coefficients of f(a + l^depth z) in z
    stack = [(list(f.coeffs), 0)]
    while stack:
        c, depth = stack.pop()
        if depth > max_depth:
            raise RuntimeError(f"root search in Z_{ell} exceeded depth {max_depth}")
        if c[0] == 0:
            return True
        # c[1] = l^depth f'(a): Hensel needs v(f(a)) > 2 v(f'(a))
        if len(c) > 1 and c[1] != 0 and valuation(c[0], ell) > 2 * (valuation(c[1], ell) - depth):
            return True
        vstar = min(valuation(a, ell) for a in c if a)
        q = IntPoly(tuple((a // ell**vstar) % ell if a else 0 for a in c))
        if q.degree <= 0:
            continue
        for b in roots_mod_ell(q, ell):
            stack.append((compose_linear(c, b, ell), depth + 1))
    return False
