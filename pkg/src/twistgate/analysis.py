"""Classification of twists, density statistics, and the unconditional y^(2N) family."""

from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from .curve_model import (
    InfinityStatus,
    SuperellipticCurve,
    TriState,
    build_curve,
    genus_formula,
    rational_fixed_points,
    theorem1_degree_gate,
)
from .global_search import RationalPoint, granville_data, search_points, trivial_points
from .local_solver import critical_places, everywhere_locally_solvable
from .poly_core import IntPoly, count_roots_mod_ell, discriminant, primes_up_to
from .twist_sieve import AdmissibleCongruence, admissible_congruence, powerfree_sieve, split_prime_set


class InternalConsistencyError(AssertionError):
    """A candidate violation was produced for a curve with a rational fixed point."""


class StatusKind(str, enum.Enum):
    TRIVIAL = "TrivialPoint"
    OBSTRUCTION = "LocalObstruction"
    FOUND = "PointFound"
    CANDIDATE = "CandidateViolation"


class Guarantee(str, enum.Enum):
    FALTINGS = "Faltings"
    USER_RANK = "UserAssertedFiniteRank"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class TwistStatus:
    d: int
    status: StatusKind
    places: tuple[str, ...] = ()  # obstructed places for LocalObstruction
    point: RationalPoint | None = None
    height_searched: int = 0
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def locally_solvable(self) -> bool:
        return self.status is not StatusKind.OBSTRUCTION


def classify_one(curve: SuperellipticCurve, d: int, H: int) -> TwistStatus:
    t0 = time.perf_counter()
    triv = trivial_points(curve, d)
    if triv:
        return TwistStatus(d, StatusKind.TRIVIAL, point=triv[0], timings={"total": time.perf_counter() - t0})
    verdicts = everywhere_locally_solvable(curve, d)
    t1 = time.perf_counter()
    bad = tuple(str(p) for p, v in verdicts.items() if not v.solvable)
    if bad:
        return TwistStatus(d, StatusKind.OBSTRUCTION, places=bad, timings={"local": t1 - t0})
    pt = search_points(curve, d, H)
    t2 = time.perf_counter()
    timings = {"local": t1 - t0, "search": t2 - t1}
    if pt is not None:
        return TwistStatus(d, StatusKind.FOUND, point=pt, height_searched=H, timings=timings)
    return TwistStatus(d, StatusKind.CANDIDATE, height_searched=H, timings=timings)


def canonical_twists(curve: SuperellipticCurve, X: int) -> list[int]:
    """n-th-power-free d with 1 <= |d| <= X; positive only for odd n.  Ordered by |d|, positive first."""
    table = powerfree_sieve(X, curve.n)
    out: list[int] = []
    for k in table.values().tolist():
        out.append(k)
        if curve.n % 2 == 0:
            out.append(-k)
    return out


def _classify_chunk(args) -> list[TwistStatus]:
    n, coeffs, ds, H = args
    curve = build_curve(n, IntPoly(tuple(coeffs)))
    return [classify_one(curve, d, H) for d in ds]


# -- densities -------------------------------------------------------------------


@dataclass(frozen=True)
class DensityProfile:
    prime_bound: int
    primes_scanned: int
    delta_root: float
    exceptions: tuple[int, ...]
    weakly_intersective: bool  # sampled verdict: exceptions all divide lc * disc

    @property
    def label(self) -> str:
        return f"sampled over primes <= {self.prime_bound}"


def density_profile(f: IntPoly, prime_bound: int) -> DensityProfile:
    bad = f.lc * discriminant(f)
    primes = primes_up_to(prime_bound)
    exceptions = tuple(p for p in primes if count_roots_mod_ell(f, p) == 0)
    delta = 1 - len(exceptions) / len(primes) if primes else 0.0
    weak = all(bad % p == 0 for p in exceptions)
    return DensityProfile(prime_bound, len(primes), delta, exceptions, weak)


def fit_gamma(checkpoints: list[int], counts: list[int]) -> float | None:
    """Least squares gamma in log N(X) = a + log X - gamma log log X."""
    pts = [(x, c) for x, c in zip(checkpoints, counts) if c > 0 and x >= 3]
    if len(pts) < 3:
        return None
    xs = np.array([math.log(math.log(x)) for x, _ in pts])
    ys = np.array([math.log(c) - math.log(x) for x, c in pts])
    if np.ptp(xs) == 0:
        return None
    slope, _ = np.polyfit(xs, ys, 1)
    return float(-slope)


def _checkpoints(X: int, count: int = 12) -> list[int]:
    lo = min(10, X)
    return sorted({int(round(v)) for v in np.geomspace(lo, X, count)})


# -- the report ---------------------------------------------------------------------


@dataclass
class ClassificationReport:
    curve: dict
    X: int
    H: int
    twists: list[TwistStatus]
    counts: dict
    densities: dict
    granville: dict
    congruence: dict | None
    weakly_intersective: bool
    interpretation: dict
    cumulative: dict  # {"X": [...], "els": [...], "violations": [...]}
    stats: dict = field(default_factory=dict)
    count_multiplier: int = 1  # 2 for odd n: d and -d give isomorphic twists

    @property
    def candidate_violations(self) -> list[TwistStatus]:
        return [t for t in self.twists if t.status is StatusKind.CANDIDATE]


def classify_twists(
    curve: SuperellipticCurve,
    X: int,
    H: int,
    jobs: int = 1,
    prime_bound: int = 10_000,
    split_bound: int | None = None,
    epsilon: Fraction | int = 0,
) -> ClassificationReport:
    if X < 1 or H < 1:
        raise ValueError("X and H must be at least 1")
    fixed = rational_fixed_points(curve)
    ds = canonical_twists(curve, X)
    if jobs > 1 and len(ds) > 1:
        chunks = [ds[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_classify_chunk, [(curve.n, curve.f.coeffs, c, H) for c in chunks]))
        by_d = {t.d: t for part in parts for t in part}
        twists = [by_d[d] for d in ds]
    else:
        twists = [classify_one(curve, d, H) for d in ds]

    counts = {k.value: 0 for k in StatusKind}
    for t in twists:
        counts[t.status.value] += 1

    if fixed.condition_i_holds is TriState.NO and counts[StatusKind.CANDIDATE.value]:
        raise InternalConsistencyError(
            "candidate violation reported although the curve has a rational fixed point"
        )

    prof = density_profile(curve.f, prime_bound)
    S = split_prime_set(curve, split_bound or max(X, 100))
    cps = _checkpoints(X)
    els = [sum(1 for t in twists if abs(t.d) <= x and t.locally_solvable) for x in cps]
    viol = [sum(1 for t in twists if abs(t.d) <= x and t.status is StatusKind.CANDIDATE) for x in cps]
    gamma_raw = fit_gamma(cps, els)
    gamma_fit = None if gamma_raw is None else min(1.0, max(0.0, gamma_raw))
    densities = {
        "delta_root": prof.delta_root,
        "delta_split": S.density,
        "delta_splitting_field": S.splitting_density,
        "gamma_paper": 1.0 - S.density,
        "gamma_fit": gamma_fit,
        "gamma_fit_raw": gamma_raw,
        "prime_bound": prime_bound,
        "split_bound": S.bound,
        "exceptions": list(prof.exceptions[:50]),
        "exception_count": len(prof.exceptions),
    }
    gd = granville_data(curve, epsilon)
    granville = {
        "k": gd.k,
        "i": gd.i,
        "exponent": str(gd.exponent),
        "count_exponent": None if gd.count_exponent is None else str(gd.count_exponent),
        "epsilon": str(gd.epsilon),
        "gate_holds": gd.gate_holds,
    }
    cong = admissible_congruence(curve)
    congruence = (
        {"a": cong.a, "N": cong.N, "sign": cong.sign}
        if isinstance(cong, AdmissibleCongruence)
        else {"a": None, "N": None, "reason": cong.reason}
    )
    gate = theorem1_degree_gate(curve)
    strict_gate = curve.m * (curve.n - 1) > 4 * curve.n - 2
    if fixed.condition_i_holds is TriState.UNKNOWN:
        prediction = "Unknown"
    elif fixed.condition_i_holds is TriState.NO:
        prediction = "NoViolations"
    elif gate:
        prediction = "ManyViolations (conditional on abc)"
    else:
        prediction = "OutsideDegreeRange"
    interpretation = {
        "condition_i": fixed.condition_i_holds.value,
        "infinity_status": fixed.infinity_status.value,
        "degree_gate": gate,
        "degree_gate_strict": strict_gate,
        "prediction": prediction,
        "consistent": True,
    }
    if fixed.infinity_status is InfinityStatus.INDETERMINATE:
        interpretation["note"] = "1 < gcd(n, deg f) < n: rationality above infinity depends on d; not decided for C"
    obstructions: dict[str, int] = {}
    for t in twists:
        for p in t.places:
            obstructions[p] = obstructions.get(p, 0) + 1
    critical = critical_places(curve, 1).primes
    stats = {
        "twists": len(twists),
        "critical_primes": list(critical),
        "obstructions_by_place": obstructions,
        # critical primes (from the computable superset) that never obstructed a twist
        "critical_primes_unused": [p for p in critical if str(p) not in obstructions],
    }
    return ClassificationReport(
        curve={
            "n": curve.n,
            "f": list(curve.f.high_first()),
            "genus": curve.genus,
            "condition_i": fixed.condition_i_holds.value,
            "degree_gate": gate,
        },
        X=X,
        H=H,
        twists=twists,
        counts=counts,
        densities=densities,
        granville=granville,
        congruence=congruence,
        weakly_intersective=prof.weakly_intersective,
        interpretation=interpretation,
        cumulative={"X": cps, "els": els, "violations": viol},
        stats=stats,
        count_multiplier=2 if curve.n % 2 else 1,
    )


# -- unconditional family ----------------------------------------------------------


@dataclass
class UnconditionalFamily:
    n: int
    f: tuple[int, ...]  # high degree first
    N: int | None
    quotient_genus: int | None
    guarantee: Guarantee
    reason: str
    split_primes: tuple[int, ...] = ()
    twists: list[TwistStatus] = field(default_factory=list)
    verified: bool = False  # every emitted d re-checked everywhere locally solvable

    @property
    def emitted(self) -> list[int]:
        return [t.d for t in self.twists]


def unconditional_family(
    curve: SuperellipticCurve, X: int, assert_finite_rank: bool = False, height: int = 10
) -> UnconditionalFamily:
    """Twists d = p^2 (p a certified split prime, p^2 <= X) of y^(2N) = f(x), N > 1.

    All but finitely many of them have no rational point when y^N = f(x)
    has finitely many rational points; which ones cannot be said, so each d
    is labelled by a bounded search only.
    """
    n = curve.n
    f = tuple(curve.f.high_first())
    if n % 2 or n // 2 <= 1:
        return UnconditionalFamily(n, f, None, None, Guarantee.NOT_APPLICABLE, "needs n = 2N with N > 1")
    N = n // 2
    fixed = rational_fixed_points(curve)
    if fixed.condition_i_holds is TriState.NO:
        return UnconditionalFamily(
            n, f, N, None, Guarantee.NOT_APPLICABLE, "tau has a rational fixed point; every twist keeps it"
        )
    g = genus_formula(N, curve.m)
    qg = int(g) if g.denominator == 1 and g >= 0 else None
    if qg is not None and qg >= 2:
        guarantee, reason = Guarantee.FALTINGS, f"y^{N} = f(x) has genus {qg}"
    elif qg == 1 and assert_finite_rank:
        guarantee, reason = Guarantee.USER_RANK, f"user asserts y^{N} = f(x) has finite Mordell-Weil group"
    else:
        return UnconditionalFamily(
            n, f, N, qg, Guarantee.NOT_APPLICABLE, f"y^{N} = f(x) has genus {qg}; finiteness not known"
        )
    S = split_prime_set(curve, isqrt(X))
    members = [m for m in S.members if S.certificate_holds(m)]
    twists = []
    verified = S.certified
    for m in members:
        d = m.p**2
        verdicts = everywhere_locally_solvable(curve, d)
        ok = all(v.solvable for v in verdicts.values())
        verified = verified and ok
        if not ok:
            bad = tuple(str(p) for p, v in verdicts.items() if not v.solvable)
            twists.append(TwistStatus(d, StatusKind.OBSTRUCTION, places=bad))
            continue
        triv = trivial_points(curve, d)
        pt = triv[0] if triv else search_points(curve, d, height)
        if pt is None:
            twists.append(TwistStatus(d, StatusKind.CANDIDATE, height_searched=height))
        else:
            kind = StatusKind.TRIVIAL if pt.trivial else StatusKind.FOUND
            twists.append(TwistStatus(d, kind, point=pt, height_searched=height))
    if not S.certified:
        reason += "; C is not everywhere locally solvable, split primes carry no guarantee"
    return UnconditionalFamily(n, f, N, qg, guarantee, reason, tuple(m.p for m in members), twists, verified)


__all__ = [
    "ClassificationReport",
    "DensityProfile",
    "Guarantee",
    "InternalConsistencyError",
    "StatusKind",
    "TwistStatus",
    "UnconditionalFamily",
    "canonical_twists",
    "classify_one",
    "classify_twists",
    "density_profile",
    "fit_gamma",
    "unconditional_family",
]
