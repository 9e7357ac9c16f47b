import math

import numpy as np
import pytest

from singlefold.folds import MAX_SOLUTIONS, O1, O2, O6, O7, OPERATIONS, SolutionSet, fold_line_from_t, solve
from singlefold.geometry import Line, Point, line_distance, normalize_line
from singlefold.oracle import OracleConfig, OracleResult, brute_force_solve, compare, residual
from singlefold.sampling import random_instance

L = normalize_line


def test_residual_examples():
    inst = O1(Point(0, 0), Point(2, 0))
    assert residual(inst, L(1, 0, -1)) <= 1e-20
    assert residual(inst, L(1, 0, 0)) == pytest.approx(4.0)


def test_o1_brute_force_finds_bisector():
    got = brute_force_solve(O1(Point(0, 0), Point(2, 0)))
    assert got.count == 1
    assert line_distance(got.lines[0], L(1, 0, -1)) <= 1e-6


def test_o6_brute_force_matches_quadratic_roots():
    got = brute_force_solve(O6(Point(0, 1), L(0, 1, 1), Point(2.5, -1)))
    root41 = math.sqrt(41)
    expected = [fold_line_from_t((5 - root41) / 2), fold_line_from_t((5 + root41) / 2)]
    assert got.count == 2
    for line in expected:
        assert min(line_distance(line, g) for g in got.lines) <= 1e-6


def test_parallel_gap_wider_than_points_has_no_oracle_lines():
    assert brute_force_solve(O7(Point(0, 1), L(0, 1, 1), Point(0, 0), L(0, 1, 3))).count == 0


def test_parallel_bisector_is_not_doubled_at_infinity():
    got = brute_force_solve(O2(L(0, 1, 0), L(0, 1, -2)))
    assert got.count == 1


def test_compare_identical_sets():
    inst = O6(Point(0, 1), L(0, 1, 1), Point(3, 1))
    s = solve(inst)
    report = compare(s, OracleResult(s.fold_lines, (0.0,) * len(s)))
    assert report.ok and report.max_distance == 0.0
    assert not report.unmatched_analytic and not report.unmatched_brute


def test_compare_double_root_counts_once():
    inst = O6(Point(0, 1), L(0, 1, 1), Point(2, 1))
    s = solve(inst)
    assert s.multiplicities == (2,)
    report = compare(s, brute_force_solve(inst))
    assert report.ok and report.analytic_count == report.brute_count == 1


def test_compare_flags_perturbed_solution():
    inst = O6(Point(0, 1), L(0, 1, 1), Point(3, 1))
    s = solve(inst)
    bent = Line(s.fold_lines[0].a, s.fold_lines[0].b, s.fold_lines[0].c + 1e-3)
    report = compare(SolutionSet((bent,) + s.fold_lines[1:], s.multiplicities), brute_force_solve(inst), 1e-6)
    assert not report.ok
    assert report.lines()[-1] == "MISMATCH"


def test_compare_flags_missing_root():
    inst = O7(Point(0, 1), L(0, 1, 1), Point(-3, -3), L(1, 2, 2))
    s = solve(inst)
    dropped = SolutionSet(s.fold_lines[1:], s.multiplicities[1:])
    report = compare(dropped, brute_force_solve(inst))
    assert report.count_mismatch and not report.ok


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(theta_samples=1)
    with pytest.raises(ValueError):
        OracleConfig(residual_accept=0.0)


@pytest.mark.parametrize("op", list(OPERATIONS))
def test_oracle_agrees_on_a_small_sample(op):
    rng = np.random.default_rng(100 + int(op[1:]))
    for _ in range(40):
        inst = random_instance(op, rng)
        brute = brute_force_solve(inst)
        assert brute.count <= MAX_SOLUTIONS[op]
        report = compare(solve(inst), brute)
        assert report.ok, "\n".join(report.lines())
