"""Seeded random operation instances away from degenerate configurations."""
from __future__ import annotations

import math

import numpy as np

from .folds import O1, O2, O3, O4, O5, O6, O7, O8, OPERATIONS, OpInstance, o7_polynomial
from .geometry import (
    Line,
    Point,
    Similarity,
    apply_similarity,
    apply_similarity_line,
    canonical_frame,
    cross,
    distance_parallel_lines,
    distance_point_line,
    distance_point_point,
    normalize_line,
)

BOX = 10.0
MARGIN = 1e-3


def random_point(rng: np.random.Generator, box: float = BOX) -> Point:
    x, y = rng.uniform(-box, box, size=2)
    return Point(float(x), float(y))


def random_line(rng: np.random.Generator, box: float = BOX) -> Line:
    """Line through two uniform points of the box."""
    while True:
        p, q = random_point(rng, box), random_point(rng, box)
        if distance_point_point(p, q) > MARGIN:
            dx, dy = q.x - p.x, q.y - p.y
            return normalize_line(dy, -dx, dx * p.y - dy * p.x)


def parallel_to(m: Line, rng: np.random.Generator, box: float = BOX) -> Line:
    """A line with exactly m's normal, offset so it still crosses the box."""
    return Line(m.a, m.b, float(rng.uniform(-box, box)))


def random_similarity(rng: np.random.Generator) -> Similarity:
    return Similarity(
        float(rng.uniform(-math.pi, math.pi)),
        float(math.exp(rng.uniform(-1.0, 1.0))),
        (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5))),
    )


def _far(value: float) -> bool:
    return abs(value) > MARGIN


def _quadratic_drops(P: Point, m: Line, Q: Point, n: Line) -> bool:
    # With m parallel to n the cubic loses its t**3 term; a near-zero t**2 term
    # sends one fold line off towards infinity.
    frame = canonical_frame(P, m)
    coeffs = o7_polynomial(apply_similarity(frame, Q), apply_similarity_line(frame, n))
    return abs(coeffs[1]) <= MARGIN * max(abs(c) for c in coeffs[1:])


def _candidate(op: str, rng: np.random.Generator, parallel: bool) -> OpInstance | None:
    P, Q = random_point(rng), random_point(rng)
    m = random_line(rng)
    n = parallel_to(m, rng) if parallel else random_line(rng)
    if op in ("O1", "O4"):
        return type_for(op)(P, Q) if _far(distance_point_point(P, Q)) else None
    if op == "O2":
        if parallel:
            return O2(m, n) if _far(m.c - n.c) else None
        return O2(m, n) if _far(cross(m, n)) else None
    if op == "O3":
        return O3(m)
    if op == "O5":
        return O5(P, m)
    if not _far(distance_point_line(P, m)):
        return None
    if op == "O6":
        gap = distance_point_point(P, Q) - distance_point_line(Q, m)
        return O6(P, m, Q) if _far(gap) else None
    if op == "O7":
        if not _far(distance_point_line(Q, n)):
            return None
        if parallel:
            gap = distance_point_point(P, Q) - distance_parallel_lines(m, n)
            if not _far(gap) or _quadratic_drops(P, m, Q, n):
                return None
            return O7(P, m, Q, n)
        return O7(P, m, Q, n) if _far(cross(m, n)) else None
    if op == "O8":
        if parallel:
            return O8(P, m, n)
        return O8(P, m, n) if _far(cross(m, n)) else None
    raise KeyError(op)


def type_for(op: str):
    return OPERATIONS[op]


def random_instance(op: str, rng: np.random.Generator, parallel: bool | None = None) -> OpInstance:
    """Draw one instance; for O2/O7/O8 a coin flip picks the parallel branch unless given."""
    if op not in OPERATIONS:
        raise KeyError(op)
    while True:
        par = bool(rng.integers(2)) if parallel is None else parallel
        if op not in ("O2", "O7", "O8"):
            par = False
        inst = _candidate(op, rng, par)
        if inst is not None:
            return inst
