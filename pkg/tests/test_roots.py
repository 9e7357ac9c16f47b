import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singlefold.roots import IdenticallyZero, RealRoots, horner, solve_cubic, solve_linear, solve_quadratic


def test_quadratic_examples():
    r = solve_quadratic(1, -4, 4)
    assert r.roots == pytest.approx((2.0,)) and r.multiplicities == (2,)
    r = solve_quadratic(1, -5, -4)
    root41 = math.sqrt(41)
    assert r.roots == pytest.approx(((5 - root41) / 2, (5 + root41) / 2), abs=1e-12)
    assert r.multiplicities == (1, 1)
    r = solve_quadratic(0, 2, -4)
    assert r.roots == (2.0,) and r.multiplicities == (1,)
    assert solve_quadratic(1, 0, 1).roots == ()


def test_cubic_examples():
    r = solve_cubic(1, 0, 0, -2)
    assert r.multiplicities == (1,)
    assert r.roots[0] ** 3 == pytest.approx(2.0, abs=1e-14)
    r = solve_cubic(1, -6, 11, -6)
    assert r.roots == pytest.approx((1.0, 2.0, 3.0), abs=1e-12)
    r = solve_cubic(1, -3, 3, -1)
    assert r.roots == pytest.approx((1.0,), abs=1e-9) and r.multiplicities == (3,)


def test_cubic_double_root_and_simple_root():
    # (t - 1)^2 (t + 2) = t^3 - 3t + 2
    r = solve_cubic(1, 0, -3, 2)
    assert r.roots == pytest.approx((-2.0, 1.0), abs=1e-9)
    assert r.multiplicities == (1, 2)


def test_degree_drop_falls_back():
    assert solve_cubic(0, 1, -5, -4).roots == solve_quadratic(1, -5, -4).roots
    assert solve_cubic(1e-300, 0, 2, -4).roots == pytest.approx((2.0,))


def test_identically_zero():
    with pytest.raises(IdenticallyZero):
        solve_quadratic(0, 0, 0)
    with pytest.raises(IdenticallyZero):
        solve_cubic(0, 0, 0, 0)
    assert solve_linear(0, 1).roots == ()


def test_real_roots_validation():
    with pytest.raises(ValueError):
        RealRoots((2.0, 1.0), (1, 1))
    with pytest.raises(ValueError):
        RealRoots((1.0,), (0,))


def test_horner():
    assert horner((1, -6, 11, -6), 2.0) == 0.0
    assert horner((2, 3), 4.0) == 11.0


finite = st.floats(-50, 50, allow_nan=False)


@settings(max_examples=300)
@given(finite, finite, finite)
def test_cubic_from_known_roots(r1, r2, r3):
    roots = sorted((r1, r2, r3))
    if min(b - a for a, b in zip(roots, roots[1:])) < 1e-2:
        return
    coeffs = np.poly(roots)
    got = solve_cubic(*coeffs)
    assert got.multiplicities == (1, 1, 1)
    assert got.roots == pytest.approx(roots, abs=1e-7 * max(1.0, max(map(abs, roots))))


@settings(max_examples=300)
@given(finite, finite, finite, finite)
def test_cubic_roots_are_roots(c3, c2, c1, c0):
    if abs(c3) < 1e-3:
        return
    got = solve_cubic(c3, c2, c1, c0)
    assert 1 <= sum(got.multiplicities) <= 3
    scale = max(abs(c3), abs(c2), abs(c1), abs(c0))
    for t in got.roots:
        mag = sum(abs(c) * abs(t) ** k for c, k in zip((c3, c2, c1, c0), (3, 2, 1, 0)))
        assert abs(horner((c3, c2, c1, c0), t)) <= 1e-9 * max(mag, scale)
