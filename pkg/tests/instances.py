"""Random (curve, d, l) instances for the local-solver comparisons."""

import random

from oracles import vl
from twistgate.curve_model import InvalidCurveError, build_curve, make_twist
from twistgate.poly_core import IntPoly

PRIMES = (2, 3, 5, 7, 11, 13)
D_CHOICES = [x for x in range(-30, 31) if x]


def oracle_depth(curve, d, ell):
    """v(disc) + v(lc) + 2 v(n) + v(d) + 2."""
    return (
        vl(abs(curve.disc), ell) + vl(abs(curve.lc), ell) + 2 * vl(curve.n, ell) + vl(abs(d), ell) + 2
    )


def local_instances(count, seed=0):
    """Yield (curve, coeffs low-first, d, l): n in {2,3,4}, 3 <= deg <= 6, |coeffs| <= 10, |d| <= 30."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.choice([2, 3, 4])
        m = rng.randint(3, 6)
        c = [rng.randint(-10, 10) for _ in range(m + 1)]
        if c[-1] == 0:
            continue
        try:
            curve = build_curve(n, IntPoly(tuple(c)))
        except InvalidCurveError:
            continue
        d = make_twist(curve, rng.choice(D_CHOICES)).d
        made += 1
        yield curve, c, d, rng.choice(PRIMES)
