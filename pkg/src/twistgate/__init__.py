"""Twists d*y^n = f(x) of superelliptic curves: local solvability, point search, classification."""

from .curve_model import (
    InfinityStatus,
    InvalidCurveError,
    SuperellipticCurve,
    TriState,
    TwistClass,
    build_curve,
    make_twist,
    rational_fixed_points,
    theorem1_degree_gate,
)
from .local_solver import (
    LocalVerdict,
    Method,
    Status,
    critical_places,
    everywhere_locally_solvable,
    solvable_padic,
    solvable_real,
)
from .poly_core import IntPoly

__version__ = "0.1.0"
