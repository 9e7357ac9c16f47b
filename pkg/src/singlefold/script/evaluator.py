"""Straight-line evaluation of construction scripts."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union

from ..folds import OPERATIONS, InvalidInstance, solve
from ..geometry import (
    DEFAULT_TOL,
    GeometryError,
    Line,
    Point,
    Tolerances,
    distance_parallel_lines,
    distance_point_line,
    distance_point_point,
    intersect,
    line_angle,
    line_through,
    lines_parallel,
    normalize_line,
    reflect_line,
    reflect_point,
)
from .lexer import ScriptError
from .nodes import (
    Assert,
    Coeffs,
    Coords,
    FoldDecl,
    Intersect,
    LineDecl,
    PointDecl,
    Print,
    Program,
    ReflectLine,
    ReflectPoint,
    Statement,
    Through,
)
from .parser import format_number, format_statement

Value = Union[Point, Line]


class ScriptRuntimeError(ScriptError):
    def __init__(self, index: int, loc: tuple[int, int], reason: str):
        super().__init__(loc[0], loc[1], f"statement {index}: {reason}")
        self.index = index
        self.reason = reason


class AssertionFailure(ScriptRuntimeError):
    def __init__(self, index: int, loc: tuple[int, int], kind: str, measured: float, expected: float, tol: float):
        super().__init__(
            index,
            loc,
            f"{kind} assertion failed: measured {measured!r}, expected {expected!r} within {tol!r}",
        )
        self.measured = measured
        self.expected = expected
        self.tol = tol


@dataclass(frozen=True)
class TraceEntry:
    index: int
    statement: Statement
    value: Value | float | None

    def render(self) -> str:
        return f"[{self.index}] {format_statement(self.statement)} -> {describe(self.value)}"


@dataclass(frozen=True)
class Environment:
    bindings: Mapping[str, Value] = field(default_factory=dict)
    trace: tuple[TraceEntry, ...] = ()
    folds: frozenset[str] = frozenset()
    printed: tuple[str, ...] = ()

    def __getitem__(self, name: str) -> Value:
        return self.bindings[name]


def describe(value) -> str:
    if isinstance(value, Point):
        return f"point({format_number(value.x)}, {format_number(value.y)})"
    if isinstance(value, Line):
        return f"line({format_number(value.a)}, {format_number(value.b)}, {format_number(value.c)})"
    if isinstance(value, float):
        return format_number(value)
    return "ok"


_OPERAND_KINDS = {
    "O1": (Point, Point),
    "O2": (Line, Line),
    "O3": (Line,),
    "O4": (Point, Point),
    "O5": (Point, Line),
    "O6": (Point, Line, Point),
    "O7": (Point, Line, Point, Line),
    "O8": (Point, Line, Line),
}


def _kind_name(kind) -> str:
    return "point" if kind is Point else "line"


class _Evaluator:
    def __init__(self, tol: Tolerances):
        self.tol = tol
        self.bindings: dict[str, Value] = {}
        self.trace: list[TraceEntry] = []
        self.folds: set[str] = set()
        self.printed: list[str] = []
        self.index = 0
        self.loc = (1, 1)

    def error(self, reason: str):
        raise ScriptRuntimeError(self.index, self.loc, reason)

    def lookup(self, name: str, kind=None) -> Value:
        if name not in self.bindings:
            self.error(f"unknown name {name!r}")
        value = self.bindings[name]
        if kind is not None and not isinstance(value, kind):
            self.error(f"{name!r} is a {_kind_name(type(value))}, expected a {_kind_name(kind)}")
        return value

    def bind(self, name: str, value: Value) -> None:
        if name in self.bindings:
            self.error(f"{name!r} is already bound")
        self.bindings[name] = value

    def run(self, prog: Program) -> Environment:
        for index, stmt in enumerate(prog.statements, start=1):
            self.index, self.loc = index, stmt.loc
            try:
                value = self.execute(stmt)
            except GeometryError as exc:
                self.error(str(exc))
            self.trace.append(TraceEntry(index, stmt, value))
        return Environment(
            MappingProxyType(dict(self.bindings)),
            tuple(self.trace),
            frozenset(self.folds),
            tuple(self.printed),
        )

    def execute(self, stmt: Statement):
        tol = self.tol
        if isinstance(stmt, PointDecl):
            src = stmt.source
            if isinstance(src, Coords):
                value = Point(src.x, src.y)
            elif isinstance(src, Intersect):
                value = intersect(self.lookup(src.first, Line), self.lookup(src.second, Line), tol)
            else:
                value = reflect_point(self.lookup(src.point, Point), self.lookup(src.fold, Line), tol)
            self.bind(stmt.name, value)
            return value
        if isinstance(stmt, LineDecl):
            src = stmt.source
            if isinstance(src, Coeffs):
                value = normalize_line(src.a, src.b, src.c, tol)
            elif isinstance(src, Through):
                value = line_through(self.lookup(src.first, Point), self.lookup(src.second, Point), tol)
            else:
                value = reflect_line(self.lookup(src.line, Line), self.lookup(src.fold, Line), tol)
            self.bind(stmt.name, value)
            return value
        if isinstance(stmt, FoldDecl):
            return self.fold(stmt)
        if isinstance(stmt, Assert):
            return self.check(stmt)
        if isinstance(stmt, Print):
            value = self.lookup(stmt.name)
            self.printed.append(f"{stmt.name} = {describe(value)}")
            return value
        raise TypeError(f"not a statement: {stmt!r}")

    def fold(self, stmt: FoldDecl) -> Line:
        kinds = _OPERAND_KINDS[stmt.op]
        if len(stmt.args) != len(kinds):
            self.error(f"{stmt.op} takes {len(kinds)} operands, got {len(stmt.args)}")
        args = [self.lookup(name, kind) for name, kind in zip(stmt.args, kinds)]
        try:
            inst = OPERATIONS[stmt.op](*args)
            inst.validate(self.tol)
        except InvalidInstance as exc:
            self.error(f"{stmt.op}: {exc}")
        solutions = solve(inst, self.tol)
        count = len(solutions)
        if count == 0:
            self.error(f"{stmt.op} returned 0 solutions ({solutions.condition_note.value}); select out of range")
        if stmt.select is None:
            if count > 1:
                self.error(f"{stmt.op} has {count} solutions; choose one with 'select'")
            index = 1
        else:
            index = stmt.select
        if index > count:
            self.error(f"select {index} out of range: {stmt.op} has {count} solution(s)")
        line = solutions.fold_lines[index - 1]
        self.bind(stmt.name, line)
        self.folds.add(stmt.name)
        return line

    def check(self, stmt: Assert) -> float:
        first = self.lookup(stmt.operands[0])
        second = self.lookup(stmt.operands[1])
        if stmt.kind == "OnLine":
            if isinstance(first, Line) and isinstance(second, Point):
                first, second = second, first
            if not (isinstance(first, Point) and isinstance(second, Line)):
                self.error("assert_on needs a point and a line")
            measured = distance_point_line(first, second)
        elif stmt.kind == "PointDist":
            measured = self.distance(first, second)
        elif stmt.kind == "LineAngle":
            if not (isinstance(first, Line) and isinstance(second, Line)):
                self.error("assert_angle needs two lines")
            measured = line_angle(first, second)
        else:
            if not (isinstance(first, Line) and isinstance(second, Line)):
                self.error("assert_parallel needs two lines")
            measured = abs(first.a * second.b - first.b * second.a)
        if not abs(measured - stmt.expected) <= stmt.tol:
            raise AssertionFailure(self.index, self.loc, stmt.kind, measured, stmt.expected, stmt.tol)
        return measured

    def distance(self, first: Value, second: Value) -> float:
        if isinstance(first, Point) and isinstance(second, Point):
            return distance_point_point(first, second)
        if isinstance(first, Point):
            return distance_point_line(first, second)
        if isinstance(second, Point):
            return distance_point_line(second, first)
        if not lines_parallel(first, second, self.tol):
            self.error("assert_dist between lines needs parallel lines")
        return distance_parallel_lines(first, second, self.tol)


def evaluate(prog: Program, tol: Tolerances = DEFAULT_TOL) -> Environment:
    """Run every statement in order; raises on the first failing statement."""
    return _Evaluator(tol).run(prog)
