"""Syntax tree of a construction script.

Source locations ride along on every statement but are excluded from
equality, so a reformatted and reparsed program compares equal to the
original.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

OP_NAMES = ("O1", "O2", "O3", "O4", "O5", "O6", "O7", "O8")


@dataclass(frozen=True)
class Coords:
    x: float
    y: float


@dataclass(frozen=True)
class Intersect:
    first: str
    second: str


@dataclass(frozen=True)
class ReflectPoint:
    point: str
    fold: str


@dataclass(frozen=True)
class Coeffs:
    a: float
    b: float
    c: float


@dataclass(frozen=True)
class Through:
    first: str
    second: str


@dataclass(frozen=True)
class ReflectLine:
    line: str
    fold: str


Loc = tuple[int, int]


@dataclass(frozen=True)
class PointDecl:
    name: str
    source: Union[Coords, Intersect, ReflectPoint]
    loc: Loc = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class LineDecl:
    name: str
    source: Union[Coeffs, Through, ReflectLine]
    loc: Loc = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class FoldDecl:
    name: str
    op: str
    args: tuple[str, ...]
    select: int | None = None
    loc: Loc = field(default=(1, 1), compare=False)


ASSERT_KINDS = {
    "assert_on": "OnLine",
    "assert_dist": "PointDist",
    "assert_angle": "LineAngle",
    "assert_parallel": "Parallel",
}
KIND_KEYWORDS = {v: k for k, v in ASSERT_KINDS.items()}


@dataclass(frozen=True)
class Assert:
    """``expected`` is fixed at 0 for OnLine and Parallel."""

    kind: str
    operands: tuple[str, str]
    expected: float
    tol: float
    loc: Loc = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Print:
    name: str
    loc: Loc = field(default=(1, 1), compare=False)


Statement = Union[PointDecl, LineDecl, FoldDecl, Assert, Print]


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...] = ()

    def __len__(self):
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)
