"""Access to the shipped ``.fold`` constructions."""
from __future__ import annotations

import math
from importlib import resources
from pathlib import Path

from .script.parser import format_number

_TRISECT_TEMPLATE = """\
# Trisecting the angle between the x-axis and L with one O7 fold.
# The fold sends O onto y = 1 and (0, 2) onto L; the image of O
# then sits at one third of the angle.
point O = (0, 0)
line base = coeffs(0, 1, 0)
line L = coeffs({a}, {b}, 0)
line m = coeffs(0, 1, -1)
point Q = (0, 2)
fold f = O7(O, m, Q, L) select 2
point A = reflect(O, f)
line t = through(O, A)
assert_on(A, m, 1e-9)
assert_angle(t, base, {third}, 1e-9)
print(t)
"""

TRISECT_DEFAULT_DEGREES = 60.0


def construction_dir() -> Path:
    return Path(str(resources.files("singlefold") / "constructions"))


def construction_names() -> list[str]:
    return sorted(p.stem for p in construction_dir().glob("*.fold"))


def construction_path(name: str) -> Path:
    path = construction_dir() / f"{name}.fold"
    if not path.is_file():
        raise FileNotFoundError(f"no shipped construction named {name!r}")
    return path


def read_construction(name: str) -> str:
    return construction_path(name).read_text(encoding="utf-8")


def trisection_source(degrees: float) -> str:
    """Trisection script for the angle between the x-axis and a line through the origin.

    The fold selection was checked against the brute-force oracle for 15, 30,
    60 and 85 degrees; the construction holds on (0, 90).
    """
    if not 0.0 < degrees < 90.0:
        raise ValueError("trisection fixture covers angles strictly between 0 and 90 degrees")
    theta = math.radians(degrees)
    return _TRISECT_TEMPLATE.format(
        a=format_number(math.sin(theta)),
        b=format_number(-math.cos(theta)),
        third=format_number(theta / 3.0),
    )
