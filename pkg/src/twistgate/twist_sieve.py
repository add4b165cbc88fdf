"""Twist parameters: power-free sieving, split-prime families, admissible congruences.

A split prime p for C is one at which every twist built from such primes
stays locally solvable.  At p itself f has a simple root mod p, which lifts
to an l-adic point (alpha, 0) on any C_d with p | d.  At a critical prime l
of C the class of p in Z_l^*/Z_l^{*n} is required to lie in a subgroup H_l
of unit classes all of whose twists are solvable at l; products of such
primes then have their class in H_l as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

import numpy as np
from sympy.ntheory.modular import crt

from .curve_model import SuperellipticCurve, base_twist_parameter
from .local_solver import LocalSolver, solvable_real, solver_for
from .padic import (
    class_precision,
    has_root_in_zl,
    nth_power_class_congruence,
    unit_class_key,
    unit_class_representatives,
)
from .poly_core import count_roots_mod_ell, integer_nth_root, nth_power_free_part, primes_up_to, roots_mod_ell

__all__ = [
    "AdmissibleCongruence",
    "NonePossible",
    "PowerfreeTable",
    "SplitPrime",
    "SplitPrimeSet",
    "admissible_congruence",
    "class_subgroup",
    "congruence_members",
    "generate_D",
    "powerfree_sieve",
    "primes_up_to",
    "split_prime_set",
]


@dataclass(frozen=True)
class PowerfreeTable:
    X: int
    n: int
    flags: np.ndarray = field(repr=False, compare=False)

    def __contains__(self, k: int) -> bool:
        k = abs(k)
        return 1 <= k <= self.X and bool(self.flags[k])

    @property
    def count(self) -> int:
        return int(self.flags.sum())

    def values(self) -> np.ndarray:
        return np.nonzero(self.flags)[0]


def powerfree_sieve(X: int, n: int) -> PowerfreeTable:
    """Flags for the n-th-power-free integers in [1, X]."""
    if X < 1 or n < 2:
        raise ValueError("need X >= 1 and n >= 2")
    flags = np.ones(X + 1, dtype=bool)
    flags[0] = False
    root, _ = integer_nth_root(X, n)
    for p in primes_up_to(root):
        q = p**n
        flags[q::q] = False
    flags.flags.writeable = False
    return PowerfreeTable(X, n, flags)


# -- subgroups of unit classes ------------------------------------------------------


def _class_mul(a: int, b: int, ell: int, n: int) -> int:
    mod = ell ** class_precision(ell, n)
    return unit_class_key(a * b % mod, ell, n)


def class_subgroup(good: set[int], reps: dict[int, int], ell: int, n: int) -> frozenset[int]:
    """Largest subgroup of Z_l^*/Z_l^{*n} (as class labels) inside the label set good.

    U/U^n has rank at most 2, so every subgroup is generated by two elements.
    Ties in size are broken by the sorted label tuple.
    """
    if unit_class_key(1, ell, n) not in good:
        return frozenset()
    labels = sorted(reps)

    def span(gens):
        seen = {unit_class_key(1, ell, n)}
        frontier = list(seen)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = _class_mul(reps[x], reps[g], ell, n)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    best = span([])
    for size in (1, 2):
        for gens in combinations(labels, size):
            h = span(gens)
            if h <= good and (len(h), sorted(h)) > (len(best), sorted(best)):
                best = h
    return best


def _class_table(solver: LocalSolver, ell: int) -> tuple[dict[int, int], set[int]]:
    """Unit class label -> representative, and the labels k with C_k(Q_l) nonempty."""
    n = solver.curve.n
    reps = {unit_class_key(u, ell, n): u for u in unit_class_representatives(ell, n)}
    good = {k for k, u in reps.items() if solver.solvable_padic(u, ell).solvable}
    return reps, good


# -- split primes -------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitPrime:
    p: int
    roots: tuple[int, ...]
    class_labels: tuple[tuple[int, int], ...]  # (l, label of p in Z_l^*/Z_l^{*n}) per constrained l


@dataclass(frozen=True)
class SplitPrimeSet:
    curve: SuperellipticCurve
    bound: int
    members: tuple[SplitPrime, ...]
    subgroups: dict = field(compare=False)  # l -> frozenset of admissible unit labels
    primes_scanned: int = 0
    splitting_count: int = 0
    certified: bool = True  # False when C itself is not everywhere locally solvable
    strict_size: bool = False

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(m.p for m in self.members)

    @property
    def density(self) -> float:
        """Fraction of primes up to the bound that are members."""
        return len(self.members) / self.primes_scanned if self.primes_scanned else 0.0

    @property
    def splitting_density(self) -> float:
        """Fraction of primes up to the bound at which f splits into distinct linear factors."""
        return self.splitting_count / self.primes_scanned if self.primes_scanned else 0.0

    def certificate_holds(self, member: SplitPrime) -> bool:
        C = self.curve
        p = member.p
        if (C.n * C.lc * C.disc) % p == 0 or p <= C.n:
            return False
        if self.strict_size and p <= 4 * C.genus**2:
            return False
        if sorted(roots_mod_ell(C.f, p)) != list(member.roots) or len(member.roots) != C.m:
            return False
        for ell, label in member.class_labels:
            if p == ell:
                continue
            if unit_class_key(p, ell, C.n) != label or label not in self.subgroups[ell]:
                return False
        return True


def split_prime_set(curve: SuperellipticCurve, bound: int, strict_size: bool = False) -> SplitPrimeSet:
    """Primes p <= bound certified to keep every twist built from them locally solvable.

    Conditions: f has deg f distinct roots mod p, p does not divide n lc disc,
    p > n (and p > 4 g^2 with strict_size), and the class of p at every
    critical prime l of C lies in the subgroup H_l.
    """
    n = curve.n
    solver = solver_for(curve)
    certified = solvable_real(curve, 1).solvable
    subgroups: dict[int, frozenset[int]] = {}
    for ell in solver.bad_primes:
        if has_root_in_zl(curve.f, ell):
            # (alpha, 0) is a point on every twist
            subgroups[ell] = frozenset(unit_class_key(u, ell, n) for u in unit_class_representatives(ell, n))
            continue
        reps, good = _class_table(solver, ell)
        subgroups[ell] = class_subgroup(good, reps, ell, n)
        if not subgroups[ell]:
            certified = False
    constrained = [ell for ell in solver.bad_primes if len(subgroups[ell]) < len(unit_class_representatives(ell, n))]
    bad = curve.n * curve.lc * curve.disc
    min_size = max(n, 4 * curve.genus**2 if strict_size else 0)
    members = []
    scanned = 0
    splitting = 0
    for p in primes_up_to(bound):
        scanned += 1
        if bad % p == 0:
            continue
        if count_roots_mod_ell(curve.f, p) != curve.m:
            continue
        splitting += 1
        if p <= min_size:
            continue
        labels = tuple((ell, unit_class_key(p, ell, n)) for ell in constrained if ell != p)
        if all(lab in subgroups[ell] for ell, lab in labels):
            members.append(SplitPrime(p, tuple(sorted(roots_mod_ell(curve.f, p))), labels))
    return SplitPrimeSet(curve, bound, tuple(members), subgroups, scanned, splitting, certified, strict_size)


def generate_D(S: SplitPrimeSet | list[int], X: int, n: int) -> list[int]:
    """All n-th-power-free products of members of S up to X (positive), sorted."""
    primes = sorted(S.primes if isinstance(S, SplitPrimeSet) else S)
    out: list[int] = []

    def walk(start: int, value: int) -> None:
        for i in range(start, len(primes)):
            p = primes[i]
            v = value
            for _ in range(n - 1):
                v *= p
                if v > X:
                    break
                out.append(v)
                walk(i + 1, v)
            if value * p > X:
                break

    walk(0, 1)
    return sorted(out)


# -- admissible congruences ---------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleCongruence:
    """d = a mod N (a a unit mod N), plus a sign condition for even n (0 = either sign)."""

    a: int
    N: int
    sign: int = 0
    classes: tuple[tuple[int, int], ...] = ()  # (l, representative of the class imposed at l)

    def admits(self, d: int) -> bool:
        if self.sign and d * self.sign < 0:
            return False
        return (d - self.a) % self.N == 0


@dataclass(frozen=True)
class NonePossible:
    reason: str


def _real_sign(curve: SuperellipticCurve) -> int:
    if curve.n % 2 == 1 or solvable_real(curve, -1).solvable and solvable_real(curve, 1).solvable:
        return 0
    return 1 if solvable_real(curve, 1).solvable else -1


def admissible_congruence(curve: SuperellipticCurve) -> AdmissibleCongruence | NonePossible:
    """A unit residue class a mod N whose members d have C_d solvable at every critical l of C.

    Only primes l where f has no root in Z_l are constrained (a root gives the
    point (alpha, 0) on every twist).  At each such l the class of f(c) is tried
    first, c the base evaluation point, then the trivial class, then the
    remaining unit classes.  At primes dividing d outside the critical set a
    simple root of f mod l is still needed; that is automatic for weakly
    intersective f.
    """
    n = curve.n
    solver = solver_for(curve)
    c, d1 = base_twist_parameter(curve)
    fc = curve.f(c)
    residues: list[int] = []
    moduli: list[int] = []
    chosen = []
    for ell in solver.bad_primes:
        if has_root_in_zl(curve.f, ell):
            continue
        reps = list(unit_class_representatives(ell, n))
        preferred = []
        if fc % ell:
            preferred.append(fc % ell ** class_precision(ell, n))
        preferred.append(1)
        order = preferred + [u for u in reps if u not in preferred]
        pick = None
        for u in order:
            if solver.solvable_padic(u, ell).solvable:
                pick = u
                break
        if pick is None:
            return NonePossible(f"no unit class of d gives a point over Q_{ell}")
        mod, res = nth_power_class_congruence(pick, ell, n)
        residues.append(min(res))
        moduli.append(mod)
        chosen.append((ell, pick))
    sign = _real_sign(curve)
    if sign and not (solvable_real(curve, sign).solvable):
        return NonePossible("no sign of d gives a real point")
    if not moduli:
        return AdmissibleCongruence(1, 1, sign, ())
    a, N = crt(moduli, residues)
    a, N = int(a), int(N)
    assert gcd(a, N) == 1
    return AdmissibleCongruence(a if a else N, N, sign, tuple(chosen))


def congruence_members(cong: AdmissibleCongruence, n: int, count: int, start: int = 1) -> list[int]:
    """The first count n-th-power-free d = a mod N (with the required sign), by |d|."""
    out = []
    k = 0
    while len(out) < count:
        d = cong.a + k * cong.N if cong.sign >= 0 else cong.a - (k + 1) * cong.N
        k += 1
        if d == 0 or abs(d) < start:
            continue
        if nth_power_free_part(d, n)[0] == d:
            out.append(d)
    return out
