"""Incidence constraints and the eight elementary single-fold operations.

Every operation carrying a "point onto line" constraint is solved in the
frame where the point sits at (0, 1) and the line is y = -1.  There the fold
lines placing the point on the line are the tangents

    y = (t/2) * (x - t/2)

of the parabola y = x**2 / 4, and each operation reduces to a polynomial in
the tangent parameter ``t``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from .geometry import (
    DEFAULT_TOL,
    GeometryError,
    Line,
    Point,
    Similarity,
    Tolerances,
    apply_similarity,
    apply_similarity_line,
    canonical_frame,
    distance_parallel_lines,
    distance_point_line,
    distance_point_point,
    invert_similarity,
    line_through,
    lines_equal,
    lines_parallel,
    normalize_line,
    on_line,
    perpendicular_through,
    reflect_line,
    reflect_point,
)
from .roots import RealRoots, solve_cubic, solve_quadratic


class InvalidInstance(GeometryError):
    """Operands violate the preconditions of an incidence or operation."""


# --------------------------------------------------------------------------
# incidences


@dataclass(frozen=True)
class I1:
    """F(P) = Q, with P != Q."""

    P: Point
    Q: Point

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        if distance_point_point(self.P, self.Q) <= tol.eps_incidence:
            raise InvalidInstance("I1 requires P != Q")

    def __post_init__(self):
        self.validate()


@dataclass(frozen=True)
class I2:
    """F(m) = n, with m != n."""

    m: Line
    n: Line

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        if lines_equal(self.m, self.n, tol):
            raise InvalidInstance("I2 requires m != n")

    def __post_init__(self):
        self.validate()


@dataclass(frozen=True)
class I3:
    """F(P) on m, with P not on m."""

    P: Point
    m: Line

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        if on_line(self.P, self.m, tol):
            raise InvalidInstance("I3 requires P not on m")

    def __post_init__(self):
        self.validate()


@dataclass(frozen=True)
class I4:
    """F(P) = P."""

    P: Point

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        pass


@dataclass(frozen=True)
class I5:
    """F(m) = m, with the fold crossing m (half of m onto the other half)."""

    m: Line

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        pass


@dataclass(frozen=True)
class I6:
    """F(m) = m pointwise: the fold is m itself."""

    m: Line

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        pass


Incidence = Union[I1, I2, I3, I4, I5, I6]

_CODIMENSION = {I1: 2, I2: 2, I3: 1, I4: 1, I5: 1, I6: 2}


def codimension(inc: Incidence) -> int:
    """Fold-line degrees of freedom consumed by an incidence."""
    return _CODIMENSION[type(inc)]


def incidence_holds(inc: Incidence, chi: Line, tol: Tolerances = DEFAULT_TOL) -> bool:
    eps = tol.eps_incidence
    if isinstance(inc, I1):
        return distance_point_point(reflect_point(inc.P, chi, tol), inc.Q) <= eps
    if isinstance(inc, I2):
        return lines_equal(reflect_line(inc.m, chi, tol), inc.n, tol)
    if isinstance(inc, I3):
        return distance_point_line(reflect_point(inc.P, chi, tol), inc.m) <= eps
    if isinstance(inc, I4):
        return distance_point_line(inc.P, chi) <= eps
    if isinstance(inc, I5):
        # perpendicular lines are never equal, so the pointwise case is excluded
        return abs(chi.a * inc.m.a + chi.b * inc.m.b) <= eps
    if isinstance(inc, I6):
        return lines_equal(chi, inc.m, tol)
    raise TypeError(f"not an incidence: {inc!r}")


# --------------------------------------------------------------------------
# operations


class _Op:
    name = ""
    operands: tuple[str, ...] = ()

    def __post_init__(self):
        self.validate()

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        for inc in self.incidences():
            inc.validate(tol)

    def incidences(self) -> tuple[Incidence, ...]:
        raise NotImplementedError

    def args(self) -> tuple:
        return tuple(getattr(self, k) for k in self.operands)

    def map(self, s: Similarity, tol: Tolerances = DEFAULT_TOL):
        """The same instance with every operand moved by ``s``."""
        moved = []
        for value in self.args():
            if isinstance(value, Point):
                moved.append(apply_similarity(s, value))
            else:
                moved.append(apply_similarity_line(s, value, tol))
        return type(self)(*moved)


@dataclass(frozen=True)
class O1(_Op):
    P: Point
    Q: Point
    name = "O1"
    operands = ("P", "Q")

    def incidences(self):
        return (I1(self.P, self.Q),)


@dataclass(frozen=True)
class O2(_Op):
    m: Line
    n: Line
    name = "O2"
    operands = ("m", "n")

    def incidences(self):
        return (I2(self.m, self.n),)


@dataclass(frozen=True)
class O3(_Op):
    m: Line
    name = "O3"
    operands = ("m",)

    def incidences(self):
        return (I6(self.m),)


@dataclass(frozen=True)
class O4(_Op):
    P: Point
    Q: Point
    name = "O4"
    operands = ("P", "Q")

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        if distance_point_point(self.P, self.Q) <= tol.eps_incidence:
            raise InvalidInstance("O4 requires P != Q")

    def incidences(self):
        return (I4(self.P), I4(self.Q))


@dataclass(frozen=True)
class O5(_Op):
    P: Point
    m: Line
    name = "O5"
    operands = ("P", "m")

    def incidences(self):
        return (I4(self.P), I5(self.m))


@dataclass(frozen=True)
class O6(_Op):
    P: Point
    m: Line
    Q: Point
    name = "O6"
    operands = ("P", "m", "Q")

    def incidences(self):
        return (I3(self.P, self.m), I4(self.Q))


@dataclass(frozen=True)
class O7(_Op):
    P: Point
    m: Line
    Q: Point
    n: Line
    name = "O7"
    operands = ("P", "m", "Q", "n")

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        super().validate(tol)
        if distance_point_point(self.P, self.Q) <= tol.eps_incidence and lines_equal(self.m, self.n, tol):
            raise InvalidInstance("O7 requires P != Q or m != n")

    def incidences(self):
        return (I3(self.P, self.m), I3(self.Q, self.n))


@dataclass(frozen=True)
class O8(_Op):
    P: Point
    m: Line
    n: Line
    name = "O8"
    operands = ("P", "m", "n")

    def incidences(self):
        return (I3(self.P, self.m), I5(self.n))


OpInstance = Union[O1, O2, O3, O4, O5, O6, O7, O8]

OPERATIONS: dict[str, type] = {cls.name: cls for cls in (O1, O2, O3, O4, O5, O6, O7, O8)}

# Table of admissible solution counts
MAX_SOLUTIONS = {"O1": 1, "O2": 2, "O3": 1, "O4": 1, "O5": 1, "O6": 2, "O7": 3, "O8": 1}


# --------------------------------------------------------------------------
# solutions


class ConditionNote(enum.Enum):
    NONE = "none"
    POINT_INSIDE_PARABOLA = "PointInsideParabola"
    THEOREM_ONE_VIOLATED = "TheoremOneViolated"
    PARALLEL_DIRECTRIX_TARGET = "ParallelDirectrixTarget"


@dataclass(frozen=True)
class SolutionSet:
    fold_lines: tuple[Line, ...] = ()
    multiplicities: tuple[int, ...] = ()
    condition_note: ConditionNote = ConditionNote.NONE

    def __post_init__(self):
        if len(self.fold_lines) != len(self.multiplicities):
            raise ValueError("fold_lines and multiplicities differ in length")
        if len(self.fold_lines) > 3:
            raise ValueError("at most three fold lines")

    def __len__(self):
        return len(self.fold_lines)

    def __iter__(self):
        return iter(self.fold_lines)


def order_key(line: Line) -> tuple[float, float]:
    return line.angle(), line.c


def _collect(lines, mults, tol: Tolerances, note=ConditionNote.NONE) -> SolutionSet:
    """Deduplicate (summing multiplicities) and sort deterministically."""
    kept: list[list] = []
    for line, k in zip(lines, mults):
        for entry in kept:
            if lines_equal(entry[0], line, tol):
                entry[1] += k
                break
        else:
            kept.append([line, k])
    kept.sort(key=lambda e: order_key(e[0]))
    return SolutionSet(tuple(e[0] for e in kept), tuple(e[1] for e in kept), note)


@dataclass(frozen=True)
class Parabola:
    focus: Point
    directrix: Line

    def __post_init__(self):
        if on_line(self.focus, self.directrix):
            raise InvalidInstance("parabola focus lies on its directrix")

    def frame(self, tol: Tolerances = DEFAULT_TOL) -> Similarity:
        return canonical_frame(self.focus, self.directrix, tol)


def fold_line_from_t(t: float, tol: Tolerances = DEFAULT_TOL) -> Line:
    """Canonical-frame fold line tangent to y = x**2/4 at (t, t**2/4)."""
    return normalize_line(0.5 * t, -1.0, -0.25 * t * t, tol)


def tangent_at(psi: Parabola, t: float, tol: Tolerances = DEFAULT_TOL) -> Line:
    back = invert_similarity(psi.frame(tol))
    return apply_similarity_line(back, fold_line_from_t(t, tol), tol)


def _tangents(frame: Similarity, roots: RealRoots, tol: Tolerances) -> tuple[list[Line], list[int]]:
    back = invert_similarity(frame)
    lines = [apply_similarity_line(back, fold_line_from_t(t, tol), tol) for t in roots.roots]
    return lines, list(roots.multiplicities)


def o7_polynomial(Q: Point, n: Line) -> tuple[float, float, float, float]:
    """Cubic in t whose roots place Q on n; Q and n in the canonical frame.

    Substitutes the reflection of Q across the tangent at t into
    ``a*x + b*y + c = 0`` and multiplies through by (t**2 + 4).
    """
    a, b, c = n.a, n.b, n.c
    k = a * Q.x + b * Q.y + c
    return (
        a,
        k - 2.0 * a * Q.x - 2.0 * b,
        4.0 * (a * Q.y + b * Q.x),
        4.0 * k - 8.0 * b * Q.y,
    )


def _solve_o6(inst: O6, tol: Tolerances) -> SolutionSet:
    frame = canonical_frame(inst.P, inst.m, tol)
    q = apply_similarity(frame, inst.Q)
    # Q on the parabola is decided in the caller's units, where rounding of
    # the frame change cannot split the double root.
    gap = distance_point_point(inst.P, inst.Q) - distance_point_line(inst.Q, inst.m)
    if abs(gap) <= tol.eps_incidence:
        roots = RealRoots((q.x + 0.0,), (2,))
    elif gap < 0.0:
        roots = RealRoots()
    else:
        roots = solve_quadratic(1.0, -2.0 * q.x, 4.0 * q.y, tol)
    if not roots.roots:
        return SolutionSet(condition_note=ConditionNote.POINT_INSIDE_PARABOLA)
    return _collect(*_tangents(frame, roots, tol), tol)


def _solve_o7(inst: O7, tol: Tolerances) -> SolutionSet:
    frame = canonical_frame(inst.P, inst.m, tol)
    q = apply_similarity(frame, inst.Q)
    n = apply_similarity_line(frame, inst.n, tol)
    if lines_parallel(inst.m, inst.n, tol):
        gap = distance_parallel_lines(inst.m, inst.n, tol)
        reach = distance_point_point(inst.P, inst.Q)
        if reach < gap - tol.eps_incidence:
            return SolutionSet(condition_note=ConditionNote.THEOREM_ONE_VIOLATED)
        # n is horizontal in the frame; drop the rounding residue of its x-part
        n = Line(0.0, 1.0, n.c if n.b > 0 else -n.c)
        _, c2, c1, c0 = o7_polynomial(q, n)
        roots = solve_quadratic(c2, c1, c0, tol)
        if not roots.roots and c2 != 0.0:
            # boundary case within eps_incidence: the double root of the touching tangent
            roots = RealRoots((-c1 / (2.0 * c2) + 0.0,), (2,))
    else:
        roots = solve_cubic(*o7_polynomial(q, n), tol)
    return _collect(*_tangents(frame, roots, tol), tol)


def _solve_o8(inst: O8, tol: Tolerances) -> SolutionSet:
    if lines_parallel(inst.m, inst.n, tol):
        return SolutionSet(condition_note=ConditionNote.PARALLEL_DIRECTRIX_TARGET)
    frame = canonical_frame(inst.P, inst.m, tol)
    n = apply_similarity_line(frame, inst.n, tol)
    # the tangent's normal (t/2, -1) must be orthogonal to n's normal (a, b)
    t = 2.0 * n.b / n.a
    return _collect(*_tangents(frame, RealRoots((t,), (1,)), tol), tol)


def _solve_o2(inst: O2, tol: Tolerances) -> SolutionSet:
    m, n = inst.m, inst.n
    if m.a * n.a + m.b * n.b < 0:
        n = Line(-n.a, -n.b, -n.c)
    if lines_parallel(m, n, tol):
        mid = normalize_line(m.a + n.a, m.b + n.b, m.c + n.c, tol)
        return _collect([mid], [1], tol)
    lines = [
        normalize_line(m.a + n.a, m.b + n.b, m.c + n.c, tol),
        normalize_line(m.a - n.a, m.b - n.b, m.c - n.c, tol),
    ]
    return _collect(lines, [1, 1], tol)


def solve(inst: OpInstance, tol: Tolerances = DEFAULT_TOL) -> SolutionSet:
    """All fold lines satisfying the instance, deduplicated and ordered."""
    inst.validate(tol)
    if isinstance(inst, O1):
        mx, my = 0.5 * (inst.P.x + inst.Q.x), 0.5 * (inst.P.y + inst.Q.y)
        dx, dy = inst.Q.x - inst.P.x, inst.Q.y - inst.P.y
        return _collect([normalize_line(dx, dy, -(dx * mx + dy * my), tol)], [1], tol)
    if isinstance(inst, O2):
        return _solve_o2(inst, tol)
    if isinstance(inst, O3):
        return _collect([inst.m], [1], tol)
    if isinstance(inst, O4):
        return _collect([line_through(inst.P, inst.Q, tol)], [1], tol)
    if isinstance(inst, O5):
        return _collect([perpendicular_through(inst.P, inst.m, tol)], [1], tol)
    if isinstance(inst, O6):
        return _solve_o6(inst, tol)
    if isinstance(inst, O7):
        return _solve_o7(inst, tol)
    if isinstance(inst, O8):
        return _solve_o8(inst, tol)
    raise TypeError(f"not an operation instance: {inst!r}")


def verify(inst: OpInstance, chi: Line, tol: Tolerances = DEFAULT_TOL) -> bool:
    return all(incidence_holds(inc, chi, tol) for inc in inst.incidences())


class Existence(enum.Enum):
    ALWAYS_SOLVABLE = "AlwaysSolvable"
    SOLVABLE = "Solvable"
    NOT_SOLVABLE = "NotSolvable"


def existence_condition(inst: OpInstance, tol: Tolerances = DEFAULT_TOL) -> Existence:
    if isinstance(inst, (O1, O2, O3, O4, O5)):
        return Existence.ALWAYS_SOLVABLE
    if isinstance(inst, O6):
        ok = distance_point_point(inst.P, inst.Q) >= distance_point_line(inst.Q, inst.m) - tol.eps_incidence
    elif isinstance(inst, O7):
        gap = distance_parallel_lines(inst.m, inst.n, tol) if lines_parallel(inst.m, inst.n, tol) else 0.0
        ok = distance_point_point(inst.P, inst.Q) >= gap - tol.eps_incidence
    elif isinstance(inst, O8):
        ok = not lines_parallel(inst.m, inst.n, tol)
    else:
        raise TypeError(f"not an operation instance: {inst!r}")
    return Existence.SOLVABLE if ok else Existence.NOT_SOLVABLE


CONDITION_TEXT = {
    "O6": "requires dist(P, Q) >= dist(Q, m)",
    "O7": "requires dist(P, Q) >= dist(m, n)",
    "O8": "requires m not parallel to n",
}


def condition_text(inst: OpInstance, tol: Tolerances = DEFAULT_TOL) -> str:
    verdict = existence_condition(inst, tol)
    if verdict is Existence.ALWAYS_SOLVABLE:
        return "always solvable"
    if verdict is Existence.SOLVABLE:
        return "solvable"
    return CONDITION_TEXT[inst.name]
