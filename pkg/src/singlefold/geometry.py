"""Planar primitives: points, unit-normal lines, reflections and similarities.

Lines are stored as ``a*x + b*y + c = 0`` with ``a**2 + b**2 == 1`` and a
canonical sign (``a > 0``, or ``a == 0`` and ``b > 0``), so two descriptions
of the same line end up with the same coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class NonFiniteValue(GeometryError):
    pass


class DegenerateLine(GeometryError):
    pass


class NotParallel(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class PointOnLine(GeometryError):
    pass


@dataclass(frozen=True)
class Tolerances:
    eps_incidence: float = 1e-9
    eps_parallel: float = 1e-12
    eps_root_dedup: float = 1e-7
    eps_sign: float = 1e-12

    def __post_init__(self):
        for name in ("eps_incidence", "eps_parallel", "eps_root_dedup", "eps_sign"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"tolerance {name} must be positive and finite, got {value!r}")


DEFAULT_TOL = Tolerances()


def _finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteValue(f"non-finite value {v!r}")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        _finite(self.x, self.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Line:
    """Canonical line; build through :func:`normalize_line`, not directly."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        _finite(self.a, self.b, self.c)

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    @property
    def normal(self) -> tuple[float, float]:
        return self.a, self.b

    @property
    def direction(self) -> tuple[float, float]:
        return -self.b, self.a

    def foot(self) -> Point:
        """Point of the line closest to the origin."""
        return Point(-self.c * self.a, -self.c * self.b)

    def signed_distance(self, p: Point) -> float:
        return self.a * p.x + self.b * p.y + self.c

    def angle(self) -> float:
        """Direction angle in [0, pi), used to order solution sets."""
        theta = math.atan2(-self.a, self.b)
        if theta < 0.0:
            theta += math.pi
        if theta >= math.pi:
            theta -= math.pi
        return theta


def normalize_line(a: float, b: float, c: float, tol: Tolerances = DEFAULT_TOL) -> Line:
    _finite(a, b, c)
    norm = math.hypot(a, b)
    if norm <= tol.eps_sign:
        raise DegenerateLine(f"line coefficients ({a}, {b}, {c}) have no direction")
    a, b, c = a / norm, b / norm, c / norm
    if a < -tol.eps_sign or (abs(a) <= tol.eps_sign and b < 0):
        a, b, c = -a, -b, -c
    # adding 0.0 turns -0.0 into 0.0
    return Line(a + 0.0, b + 0.0, c + 0.0)


def line_through(p: Point, q: Point, tol: Tolerances = DEFAULT_TOL) -> Line:
    dx, dy = q.x - p.x, q.y - p.y
    if math.hypot(dx, dy) <= tol.eps_incidence:
        raise DegenerateLine("line through coincident points")
    return normalize_line(dy, -dx, dx * p.y - dy * p.x, tol)


def lines_equal(m: Line, n: Line, tol: Tolerances = DEFAULT_TOL) -> bool:
    return line_distance(m, n) <= tol.eps_incidence


def line_distance(m: Line, n: Line) -> float:
    """Max coefficient delta, taken over both sign conventions."""
    same = max(abs(m.a - n.a), abs(m.b - n.b), abs(m.c - n.c))
    flipped = max(abs(m.a + n.a), abs(m.b + n.b), abs(m.c + n.c))
    return min(same, flipped)


def on_line(p: Point, m: Line, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(m.signed_distance(p)) <= tol.eps_incidence


def reflect_point(p: Point, chi: Line, tol: Tolerances = DEFAULT_TOL) -> Point:
    s = chi.signed_distance(p)
    if abs(s) <= tol.eps_incidence:
        return p
    return Point(p.x - 2.0 * s * chi.a, p.y - 2.0 * s * chi.b)


def reflect_line(m: Line, chi: Line, tol: Tolerances = DEFAULT_TOL) -> Line:
    p = m.foot()
    dx, dy = m.direction
    q = Point(p.x + dx, p.y + dy)
    # exact formula on both points keeps the image line consistent
    p2 = Point(p.x - 2.0 * chi.signed_distance(p) * chi.a, p.y - 2.0 * chi.signed_distance(p) * chi.b)
    q2 = Point(q.x - 2.0 * chi.signed_distance(q) * chi.a, q.y - 2.0 * chi.signed_distance(q) * chi.b)
    return line_through(p2, q2, tol)


def distance_point_point(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def distance_point_line(p: Point, m: Line) -> float:
    return abs(m.signed_distance(p))


def cross(m: Line, n: Line) -> float:
    return m.a * n.b - m.b * n.a


def lines_parallel(m: Line, n: Line, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(cross(m, n)) <= tol.eps_parallel


def distance_parallel_lines(m: Line, n: Line, tol: Tolerances = DEFAULT_TOL) -> float:
    if not lines_parallel(m, n, tol):
        raise NotParallel(f"{m} and {n} are not parallel")
    if m.a * n.a + m.b * n.b < 0:
        return abs(m.c + n.c)
    return abs(m.c - n.c)


def intersect(m: Line, n: Line, tol: Tolerances = DEFAULT_TOL) -> Point:
    det = cross(m, n)
    if abs(det) <= tol.eps_parallel:
        raise ParallelLines(f"{m} and {n} do not intersect")
    x = (m.b * n.c - n.b * m.c) / det
    y = (n.a * m.c - m.a * n.c) / det
    return Point(x, y)


def perpendicular_through(p: Point, m: Line, tol: Tolerances = DEFAULT_TOL) -> Line:
    dx, dy = m.direction
    return normalize_line(dx, dy, -(dx * p.x + dy * p.y), tol)


def line_angle(m: Line, n: Line) -> float:
    """Unoriented angle between two lines, in [0, pi/2]."""
    dot = abs(m.a * n.a + m.b * n.b)
    return math.atan2(abs(cross(m, n)), dot)


@dataclass(frozen=True)
class Similarity:
    """``p -> scale * R(rotation) p + translation``."""

    rotation: float = 0.0
    scale: float = 1.0
    translation: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        _finite(self.rotation, self.scale, *self.translation)
        if not self.scale > 0:
            raise GeometryError(f"similarity scale must be positive, got {self.scale}")


IDENTITY = Similarity()


def apply_similarity(s: Similarity, p: Point) -> Point:
    cs, sn = math.cos(s.rotation), math.sin(s.rotation)
    tx, ty = s.translation
    return Point(s.scale * (cs * p.x - sn * p.y) + tx, s.scale * (sn * p.x + cs * p.y) + ty)


def apply_similarity_line(s: Similarity, m: Line, tol: Tolerances = DEFAULT_TOL) -> Line:
    cs, sn = math.cos(s.rotation), math.sin(s.rotation)
    na, nb = cs * m.a - sn * m.b, sn * m.a + cs * m.b
    tx, ty = s.translation
    return normalize_line(na, nb, s.scale * m.c - (na * tx + nb * ty), tol)


def invert_similarity(s: Similarity) -> Similarity:
    cs, sn = math.cos(-s.rotation), math.sin(-s.rotation)
    tx, ty = s.translation
    inv = 1.0 / s.scale
    return Similarity(-s.rotation, inv, (-inv * (cs * tx - sn * ty), -inv * (sn * tx + cs * ty)))


def compose_similarity(outer: Similarity, inner: Similarity) -> Similarity:
    """The similarity applying ``inner`` first, then ``outer``."""
    t = apply_similarity(outer, Point(*inner.translation))
    return Similarity(outer.rotation + inner.rotation, outer.scale * inner.scale, (t.x, t.y))


def canonical_frame(p: Point, m: Line, tol: Tolerances = DEFAULT_TOL) -> Similarity:
    """Similarity sending ``p`` to (0, 1) and ``m`` to the line y = -1."""
    sigma = m.signed_distance(p)
    if abs(sigma) <= tol.eps_incidence:
        raise PointOnLine(f"{p} lies on {m}")
    na, nb = (m.a, m.b) if sigma > 0 else (-m.a, -m.b)
    rotation = math.pi / 2 - math.atan2(nb, na)
    # exact angle for the already-aligned case
    if na == 0.0 and nb == 1.0:
        rotation = 0.0
    scale = 2.0 / abs(sigma)
    cs, sn = math.cos(rotation), math.sin(rotation)
    rx, ry = cs * p.x - sn * p.y, sn * p.x + cs * p.y
    return Similarity(rotation, scale, (-scale * rx + 0.0, 1.0 - scale * ry))
