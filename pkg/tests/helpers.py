"""Shared generators and fixture tables for the test suite."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from singlefold.script.nodes import (
    OP_NAMES,
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
    Through,
)
from singlefold.script.lexer import KEYWORDS

FIXTURES = Path(__file__).parent / "fixtures"

# fixture name -> solution count (each oracle-checked when the fixture was made)
COUNT_FIXTURES = {
    "o1_one": 1,
    "o2_crossing": 2,
    "o2_parallel": 1,
    "o3_one": 1,
    "o4_one": 1,
    "o5_one": 1,
    "o5_on_line": 1,
    "o6_inside": 0,
    "o6_on_parabola": 1,
    "o6_outside": 2,
    "o7_gap_too_wide": 0,
    "o7_cube_root": 1,
    "o7_parallel_two": 2,
    "o7_three": 3,
    "o8_parallel": 0,
    "o8_crossing": 1,
}


def load_request(name: str) -> dict:
    return json.loads((FIXTURES / f"{name}.json").read_text())


# malformed scripts: (source, error class name, line, column)
MALFORMED = [
    ("line @", "LexError", 1, 6),
    ("point P = (0, 1)\npoint Q = (1, $)", "LexError", 2, 15),
    ("point P = (1.5e, 2)", "LexError", 1, 15),
    ("point P = (0 1)", "ParseError", 1, 14),
    ("fold f = O9(P)", "ParseError", 1, 10),
    ("fold f = O1(P, Q) select 0", "ParseError", 1, 26),
    ("fold f = O1(P, Q) select 1.5", "ParseError", 1, 26),
    ("line m = coeffs(1, 2)", "ParseError", 1, 21),
    ("# header\n\n  print(x", "ParseError", 3, 10),
    ("assert_dist(P, Q, 1)", "ParseError", 1, 20),
    ("point = (0, 0)", "ParseError", 1, 7),
    ("P = (0, 0)", "ParseError", 1, 1),
    ("point P = (0, 0)\nline m = through(P)", "ParseError", 2, 19),
    ("point select = (0, 0)", "ParseError", 1, 7),
    ("point P = (1e999, 0)", "ParseError", 1, 12),
]


_NAME_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _name(rng: np.random.Generator) -> str:
    while True:
        size = int(rng.integers(1, 5))
        text = "".join(_NAME_CHARS[int(i)] for i in rng.integers(0, len(_NAME_CHARS), size))
        if rng.random() < 0.2:
            text += "_" + str(int(rng.integers(0, 10)))
        if rng.random() < 0.1:
            text += "'"
        if text not in KEYWORDS:
            return text


def _number(rng: np.random.Generator) -> float:
    pick = rng.random()
    if pick < 0.3:
        return float(rng.integers(-20, 21))
    if pick < 0.4:
        return -0.0
    if pick < 0.8:
        return float(rng.uniform(-100, 100))
    return float(rng.uniform(-1, 1) * 10.0 ** rng.integers(-300, 300))


def random_program(rng: np.random.Generator, max_statements: int = 12) -> Program:
    """Syntactically valid program; names need not be bound."""
    statements = []
    for _ in range(int(rng.integers(0, max_statements + 1))):
        kind = int(rng.integers(0, 5))
        n = lambda: _name(rng)  # noqa: E731
        if kind == 0:
            src = [Coords(_number(rng), _number(rng)), Intersect(n(), n()), ReflectPoint(n(), n())][int(rng.integers(0, 3))]
            statements.append(PointDecl(n(), src))
        elif kind == 1:
            src = [Coeffs(_number(rng), _number(rng), _number(rng)), Through(n(), n()), ReflectLine(n(), n())][
                int(rng.integers(0, 3))
            ]
            statements.append(LineDecl(n(), src))
        elif kind == 2:
            args = tuple(n() for _ in range(int(rng.integers(1, 5))))
            select = None if rng.random() < 0.5 else int(rng.integers(1, 4))
            statements.append(FoldDecl(n(), OP_NAMES[int(rng.integers(0, 8))], args, select))
        elif kind == 3:
            akind = ["OnLine", "PointDist", "LineAngle", "Parallel"][int(rng.integers(0, 4))]
            expected = _number(rng) if akind in ("PointDist", "LineAngle") else 0.0
            statements.append(Assert(akind, (n(), n()), expected, abs(_number(rng))))
        else:
            statements.append(Print(n()))
    return Program(tuple(statements))


def same_program(a: Program, b: Program) -> bool:
    """Structural equality that also distinguishes -0.0 from 0.0."""
    if a != b:
        return False
    return repr(_signs(a)) == repr(_signs(b))


def _signs(prog: Program):
    out = []
    for stmt in prog:
        for value in _floats(stmt):
            out.append(math.copysign(1.0, value))
    return out


def _floats(obj):
    if isinstance(obj, float):
        yield obj
    elif hasattr(obj, "__dataclass_fields__"):
        for name in obj.__dataclass_fields__:
            if name != "loc":
                yield from _floats(getattr(obj, name))
    elif isinstance(obj, tuple):
        for item in obj:
            yield from _floats(item)
