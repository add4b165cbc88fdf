"""Exact polynomial arithmetic over Z and over F_p.

Polynomials are stored densely, lowest degree first.  Everything here is a
pure function of its inputs; ``IntPoly`` values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy import divisors, factorint

# Below this prime size roots mod p are found by scanning all residues.
SCAN_THRESHOLD = 2**16


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, ``coeffs[i]`` is the coefficient of x^i."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = [int(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_high_first(cls, coeffs: Iterable[int]) -> "IntPoly":
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Parse a comma separated, high-degree-first coefficient list."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty coefficient list")
        return cls.from_high_first(int(p) for p in parts)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * a for i, a in enumerate(self.coeffs))[1:])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(other * a for a in self.coeffs))
        return IntPoly(tuple(_mul(list(self.coeffs), list(other.coeffs))))

    __rmul__ = __mul__

    def reversed(self) -> "IntPoly":
        """x^m f(1/x) for m = deg f."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def high_first(self) -> list[int]:
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(a) == 1:
                s = mono
            else:
                s = f"{abs(a)}{'*' if mono else ''}{mono}"
            terms.append(("-" if a < 0 else "+", s))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def compose_linear(coeffs: Sequence[int], a: int, c: int) -> list[int]:
    """Coefficients in z of P(a + c*z)."""
    out: list[int] = []
    for coef in reversed(coeffs):
        # out <- out * (a + c z) + coef
        nxt = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i] += v * a
            nxt[i + 1] += v * c
        nxt[0] += coef
        out = nxt
    while out and out[-1] == 0:
        out.pop()
    return out


def eval_homogeneous(f: IntPoly, r: int, s: int) -> int:
    """s^m * f(r/s) for m = deg f, as an exact integer."""
    if s == 0:
        raise ValueError("eval_homogeneous requires s != 0")
    if gcd(r, s) != 1:
        raise ValueError("eval_homogeneous requires gcd(r, s) = 1")
    m = f.degree
    acc = 0
    spow = 1
    # sum a_j r^j s^(m-j), accumulated from the top coefficient down
    for j in range(m, -1, -1):
        acc += f.coeffs[j] * r**j * spow
        spow *= s
    return acc


# --- resultants and discriminants -------------------------------------------


def _content(c: Sequence[int]) -> int:
    g = 0
    for a in c:
        g = gcd(g, a)
    return g


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Remainder R with lc(b)^(deg a - deg b + 1) a = b q + R."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[i + k] -= lr * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        r = [x * lb**e for x in r]
    return r


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) by the subresultant PRS (Collins/Brown, as in Cohen 3.3.7)."""
    if f.is_zero() or g.is_zero():
        return 0
    A, B = list(f.coeffs), list(g.coeffs)
    if len(A) == 1 and len(B) == 1:
        return 1
    if len(B) == 1:
        return B[0] ** (len(A) - 1)
    if len(A) == 1:
        return A[0] ** (len(B) - 1)
    a, b = _content(A), _content(B)
    if A[-1] < 0:
        a = -a
    if B[-1] < 0:
        b = -b
    A = [x // a for x in A]
    B = [x // b for x in B]
    s = 1
    t = a ** (len(B) - 1) * b ** (len(A) - 1)
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    g_, h = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _pseudo_rem(A, B)
        if not R:
            return 0
        A = B
        denom = g_ * h**delta
        B = [x // denom for x in R]
        g_ = A[-1]
        if delta:
            h = g_**delta // h ** (delta - 1)
        if len(B) - 1 <= 0:
            break
    da = len(A) - 1
    lbB = B[-1]
    if da == 0:
        hh = 1
    else:
        hh = lbB**da // h ** (da - 1)
    return s * t * hh


def discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^(m(m-1)/2) Res(f, f') / lc(f)."""
    m = f.degree
    if m < 1:
        raise ValueError("discriminant of a constant polynomial is undefined")
    if m == 1:
        return 1
    res = resultant(f, f.derivative())
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, f.lc)
    assert r == 0
    return q


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z[x] via the primitive PRS."""
    A, B = list(f.coeffs), list(g.coeffs)
    if not A:
        return IntPoly(tuple(B))
    if not B:
        return IntPoly(tuple(A))
    ca, cb = _content(A), _content(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _pseudo_rem(A, B)
        A = B
        if not R:
            break
        c = _content(R)
        B = [x // c for x in R]
    if A[-1] < 0:
        A = [-x for x in A]
    return IntPoly(tuple(A))


def is_squarefree(f: IntPoly) -> bool:
    if f.degree < 1:
        raise ValueError("is_squarefree needs deg f >= 1")
    return poly_gcd(f, f.derivative()).degree == 0


def rational_roots(f: IntPoly) -> list[Fraction]:
    """All rational roots of f, sorted, by the rational root theorem."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    c = list(f.coeffs)
    roots: set[Fraction] = set()
    if c[0] == 0:
        roots.add(Fraction(0))
        while c and c[0] == 0:
            c.pop(0)
    g = IntPoly(tuple(c))
    if g.degree >= 1:
        for p in divisors(abs(c[0])):
            for q in divisors(abs(c[-1])):
                if gcd(p, q) != 1:
                    continue
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if eval_homogeneous(g, r.numerator, r.denominator) == 0:
                        roots.add(r)
    return sorted(roots)


# --- real roots (Sturm) ----------------------------------------------------


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    r = list(a)
    while r and len(r) >= len(b):
        q = r[-1] / b[-1]
        k = len(r) - len(b)
        for i, y in enumerate(b):
            r[i + k] -= q * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def sturm_sequence(f: IntPoly) -> list[list[Fraction]]:
    seq = [[Fraction(a) for a in f.coeffs], [Fraction(a) for a in f.derivative().coeffs]]
    while len(seq[-1]) > 1:
        r = _frac_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def _sign_changes(values: Iterable) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _eval_frac(c: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def count_real_roots(
    f: IntPoly, lo: Fraction | None = None, hi: Fraction | None = None, seq: list | None = None
) -> int:
    """Number of distinct real roots of squarefree f in (lo, hi]; None means infinite."""
    if seq is None:
        seq = sturm_sequence(f)

    def at(x):
        if x is None:
            return None
        return _sign_changes(_eval_frac(p, x) for p in seq)

    v_lo = at(lo)
    if v_lo is None:
        v_lo = _sign_changes(p[-1] * (-1 if (len(p) - 1) % 2 else 1) for p in seq)
    v_hi = at(hi)
    if v_hi is None:
        v_hi = _sign_changes(p[-1] for p in seq)
    return v_lo - v_hi


def root_bound(f: IntPoly) -> Fraction:
    """Cauchy bound: every complex root has |z| < bound."""
    return 1 + Fraction(max(abs(a) for a in f.coeffs[:-1]), abs(f.lc)) if f.degree > 0 else Fraction(1)


def real_root_intervals(f: IntPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b] each holding exactly one real root of f."""
    B = root_bound(f)
    seq = sturm_sequence(f)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        k = count_real_roots(f, a, b, seq)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    return sorted(out)


# --- arithmetic mod a prime ------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def reduce_mod(f: IntPoly | Sequence[int], p: int) -> list[int]:
    c = f.coeffs if isinstance(f, IntPoly) else f
    return _trim([a % p for a in c])


def _mul_mod(a: list[int], b: list[int], p: int) -> list[int]:
    return _trim([x % p for x in _mul(a, b)])


def _divmod_mod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while r and len(r) >= len(b):
        k = len(r) - len(b)
        t = r[-1] * inv % p
        q[k] = t
        for i, y in enumerate(b):
            r[i + k] = (r[i + k] - t * y) % p
        _trim(r)
    return _trim(q), r


def _rem_mod(a: list[int], b: list[int], p: int) -> list[int]:
    return _divmod_mod(a, b, p)[1]


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _powmod_poly(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _rem_mod(base, mod, p)
    while e:
        if e & 1:
            result = _rem_mod(_mul_mod(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _rem_mod(_mul_mod(base, base, p), mod, p)
    return result


def _sub_mod(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _scan_roots(c: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for a in reversed(c):
        acc = (acc * xs + a) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _split_linear(g: list[int], p: int) -> list[int]:
    """Roots of a monic g mod odd p that is a product of distinct linear factors."""
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [(-g[0]) % p]
    half = (p - 1) // 2
    shift = 0
    while True:
        # (x + shift)^((p-1)/2) - 1 separates residues from non-residues
        h = _powmod_poly([shift % p, 1], half, g, p)
        h = _sub_mod(h, [1], p)
        d = _gcd_mod(g, h, p)
        if 0 < len(d) - 1 < len(g) - 1:
            q, _ = _divmod_mod(g, d, p)
            inv = pow(q[-1], -1, p)
            q = [x * inv % p for x in q]
            return _split_linear(d, p) + _split_linear(q, p)
        shift += 1


def roots_mod_ell(f: IntPoly, ell: int, threshold: int = SCAN_THRESHOLD) -> list[int]:
    """Sorted residues x in [0, ell) with f(x) = 0 mod ell."""
    c = reduce_mod(f, ell)
    if not c:
        return list(range(ell))
    if len(c) == 1:
        return []
    if ell < threshold or ell == 2:
        return _scan_roots(c, ell)
    inv = pow(c[-1], -1, ell)
    c = [a * inv % ell for a in c]
    g = _gcd_mod(c, _sub_mod(_powmod_poly([0, 1], ell, c, ell), [0, 1], ell), ell)
    return sorted(_split_linear(g, ell))


def count_roots_mod_ell(f: IntPoly, ell: int) -> int:
    """Number of distinct roots of f mod ell, via deg gcd(x^ell - x, f)."""
    c = reduce_mod(f, ell)
    if not c:
        return ell
    if len(c) == 1:
        return 0
    inv = pow(c[-1], -1, ell)
    c = [a * inv % ell for a in c]
    g = _gcd_mod(c, _sub_mod(_powmod_poly([0, 1], ell, c, ell), [0, 1], ell), ell)
    return len(g) - 1


def factor_degree_partition_mod_ell(f: IntPoly, ell: int) -> list[int]:
    """Degrees of the irreducible factors of f mod ell (distinct-degree factorization).

    Requires ell not dividing lc(f) * disc(f); the result is sorted ascending.
    """
    if f.lc % ell == 0 or discriminant(f) % ell == 0:
        raise ValueError(f"{ell} divides lc(f)*disc(f); the factor partition is not defined")
    c = reduce_mod(f, ell)
    inv = pow(c[-1], -1, ell)
    c = [a * inv % ell for a in c]
    parts: list[int] = []
    h = [0, 1]
    i = 0
    while len(c) - 1 >= 2 * (i + 1):
        i += 1
        h = _powmod_poly(h, ell, c, ell)
        g = _gcd_mod(c, _sub_mod(h, [0, 1], ell), ell)
        dg = len(g) - 1
        if dg > 0:
            parts.extend([i] * (dg // i))
            c, _ = _divmod_mod(c, g, ell)
            h = _rem_mod(h, c, ell)
    if len(c) - 1 > 0:
        parts.append(len(c) - 1)
    return sorted(parts)


# --- integer helpers -------------------------------------------------------


def integer_nth_root(a: int, n: int) -> tuple[int, bool]:
    """(floor(a^(1/n)), exact?) for a >= 0."""
    if a < 0:
        raise ValueError("integer_nth_root needs a >= 0")
    if a < 2:
        return a, True
    x = 1 << ((a.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x, x**n == a


def signed_nth_root(a: int, n: int) -> int | None:
    """Integer z with z^n = a, or None."""
    if a >= 0:
        z, exact = integer_nth_root(a, n)
        return z if exact else None
    if n % 2 == 0:
        return None
    z, exact = integer_nth_root(-a, n)
    return -z if exact else None


def nth_power_free_part(a: int, n: int) -> tuple[int, int]:
    """Write a = d1 * d2^n with d1 n-th-power-free and d2 > 0."""
    if a == 0:
        raise ValueError("0 has no n-th-power-free part")
    if n < 2:
        raise ValueError("n must be at least 2")
    d1, d2 = (-1 if a < 0 else 1), 1
    for p, e in factorint(abs(a)).items():
        d1 *= p ** (e % n)
        d2 *= p ** (e // n)
    return d1, d2


def prime_factors(a: int) -> list[int]:
    if a == 0:
        raise ValueError("0 has no finite prime factorization")
    return sorted(factorint(abs(a)))


def primes_up_to(bound: int) -> list[int]:
    """Primes p <= bound (sieve of Eratosthenes)."""
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]
