"""Analytic solvers for the eight single-fold origami operations.

Every operation is solved exactly (closed form, quadratic or cubic in the
parabola-tangent parameter), checked against a brute-force oracle, and made
scriptable through the small ``.fold`` construction language.
"""
from .folds import (
    O1,
    O2,
    O3,
    O4,
    O5,
    O6,
    O7,
    O8,
    OPERATIONS,
    ConditionNote,
    Existence,
    InvalidInstance,
    SolutionSet,
    existence_condition,
    solve,
    verify,
)
from .geometry import DEFAULT_TOL, GeometryError, Line, Point, Tolerances, normalize_line, reflect_line, reflect_point
from .oracle import OracleConfig, brute_force_solve, compare

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "O1",
    "O2",
    "O3",
    "O4",
    "O5",
    "O6",
    "O7",
    "O8",
    "OPERATIONS",
    "ConditionNote",
    "Existence",
    "GeometryError",
    "InvalidInstance",
    "Line",
    "OracleConfig",
    "Point",
    "SolutionSet",
    "Tolerances",
    "brute_force_solve",
    "compare",
    "existence_condition",
    "normalize_line",
    "reflect_line",
    "reflect_point",
    "solve",
    "verify",
]
