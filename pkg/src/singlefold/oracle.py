"""Brute-force fold solver used to cross-check the analytic one.

Fold lines are parameterized as ``x*cos(theta) + y*sin(theta) + d = 0`` and
the summed squared incidence violation is scanned over a (theta, d) grid.
Grid local minima are refined by Levenberg-Marquardt iterations.

Each violation component is affine in ``d`` (a reflection moves points by an
amount linear in the offset), so on a grid row the residual is a convex
quadratic in ``d``.  Its discrete minimizer is the grid point nearest the
vertex, which lets the scan find every 2-D grid local minimum while only
evaluating a handful of cells per row.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .folds import MAX_SOLUTIONS, I1, I2, I3, I4, I5, I6, OpInstance, SolutionSet, order_key
from .geometry import Line, Point, line_distance, normalize_line


@dataclass(frozen=True)
class OracleConfig:
    theta_samples: int = 720
    offset_range: float | None = None  # default: 4 x instance coordinate magnitude
    offset_samples: int = 800
    refine_iters: int = 60
    residual_accept: float = 1e-10
    dedup: float = 1e-6
    # parallel operands have residual -> 0 as the fold recedes to infinity
    far_limit: float = 1000.0  # x offset_range

    def __post_init__(self):
        if min(self.theta_samples, self.offset_samples, self.refine_iters) < 2:
            raise ValueError("oracle sample counts must be >= 2")
        if not self.residual_accept > 0:
            raise ValueError("residual_accept must be positive")


@dataclass(frozen=True)
class OracleResult:
    lines: tuple[Line, ...] = ()
    residuals: tuple[float, ...] = ()

    @property
    def count(self) -> int:
        return len(self.lines)


def instance_scale(inst: OpInstance) -> float:
    """Largest coordinate magnitude among operands (points, line offsets), at least 1."""
    mag = 1.0
    for value in inst.args():
        if isinstance(value, Point):
            mag = max(mag, abs(value.x), abs(value.y))
        else:
            mag = max(mag, abs(value.c))
    return mag


# ---------------------------------------------------------------------------
# residual components, vectorized over arrays of (ca, sa, d) = (cos, sin, offset)


def _compile(inst: OpInstance, scale: float):
    """Residual components as a function of (cos, sin, d); works on floats and arrays.

    Each component is ``sum_k w_k * s_k + const`` where ``s_k`` are signed
    distances of fixed points to the fold line; collected as coefficient rows
    ``(px, py, w_dist, wx, wy, const)`` meaning
    ``w_dist * s + wx * Fx + wy * Fy + const`` with F the reflection of (px, py).
    """
    rows: list[tuple] = []
    perp: list[tuple[float, float]] = []
    for inc in inst.incidences():
        if isinstance(inc, I1):
            rows.append((inc.P.x, inc.P.y, 0.0, 1.0, 0.0, -inc.Q.x))
            rows.append((inc.P.x, inc.P.y, 0.0, 0.0, 1.0, -inc.Q.y))
        elif isinstance(inc, I2):
            # two points of m, `scale` apart, must land on n
            p = inc.m.foot()
            ux, uy = inc.m.direction
            for k in (0.0, scale):
                rows.append((p.x + k * ux, p.y + k * uy, 0.0, inc.n.a, inc.n.b, inc.n.c))
        elif isinstance(inc, I3):
            rows.append((inc.P.x, inc.P.y, 0.0, inc.m.a, inc.m.b, inc.m.c))
        elif isinstance(inc, I4):
            rows.append((inc.P.x, inc.P.y, 1.0, 0.0, 0.0, 0.0))
        elif isinstance(inc, I5):
            perp.append((scale * inc.m.a, scale * inc.m.b))
        elif isinstance(inc, I6):
            p = inc.m.foot()
            ux, uy = inc.m.direction
            for k in (0.0, scale):
                rows.append((p.x + k * ux, p.y + k * uy, 1.0, 0.0, 0.0, 0.0))

    def components(ca, sa, d):
        out = []
        for px, py, wd, wx, wy, const in rows:
            sd = ca * px + sa * py + d
            if wd:
                out.append(sd)
            else:
                out.append(wx * (px - 2.0 * sd * ca) + wy * (py - 2.0 * sd * sa) + const)
        for ma, mb in perp:
            out.append(ca * ma + sa * mb + 0.0 * d)
        return out

    return components


def residual(inst: OpInstance, chi: Line) -> float:
    """Summed squared violation of the instance's incidences by ``chi``."""
    comps = _compile(inst, instance_scale(inst))
    return float(sum(c * c for c in comps(chi.a, chi.b, chi.c)))


# ---------------------------------------------------------------------------
# scan + refine


def _project(components, theta: float):
    """Components at the best offset for this theta, and that offset."""
    ca, sa = math.cos(theta), math.sin(theta)
    u = components(ca, sa, 0.0)
    v = [b - a for a, b in zip(u, components(ca, sa, 1.0))]
    vv = sum(x * x for x in v)
    d = -sum(a * b for a, b in zip(u, v)) / vv if vv > 0 else 0.0
    return [a + b * d for a, b in zip(u, v)], d


def _refine(components, theta: float, iters: int):
    """Damped Gauss-Newton in theta with the offset eliminated exactly.

    Every component is affine in d, so for fixed theta the optimal offset is
    a linear least-squares solve; only theta is iterated.
    """
    h = 1e-7
    lam = 1e-3
    r, d = _project(components, theta)
    cost = sum(x * x for x in r)
    for _ in range(iters):
        if cost < 1e-30:
            break
        rp, _ = _project(components, theta + h)
        rm, _ = _project(components, theta - h)
        j = [(a - b) / (2 * h) for a, b in zip(rp, rm)]
        jj = sum(x * x for x in j)
        g = sum(x * y for x, y in zip(j, r))
        if jj == 0.0:
            break
        improved = False
        for _ in range(20):
            step = -g / (jj * (1.0 + lam))
            nr, nd = _project(components, theta + step)
            ncost = sum(x * x for x in nr)
            if ncost < cost:
                theta, r, d, cost = theta + step, nr, nd, ncost
                lam = max(lam / 3, 1e-12)
                improved = True
                break
            lam *= 10
        if not improved or abs(step) < 1e-17:
            break
    return theta, d, cost


def _same_line(m: Line, n: Line, tol: float) -> bool:
    """Coefficient match with the offset compared relative to its size."""
    if m.a * n.a + m.b * n.b < 0:
        n = Line(-n.a, -n.b, -n.c)
    return (
        abs(m.a - n.a) <= tol
        and abs(m.b - n.b) <= tol
        and abs(m.c - n.c) <= tol * max(1.0, abs(m.c), abs(n.c))
    )


def brute_force_solve(inst: OpInstance, cfg: OracleConfig | None = None) -> OracleResult:
    cfg = cfg or OracleConfig()
    scale = instance_scale(inst)
    R = cfg.offset_range if cfg.offset_range is not None else 4.0 * scale
    nt, nd = cfg.theta_samples, cfg.offset_samples
    thetas = np.arange(nt) * (math.pi / nt)
    ca, sa = np.cos(thetas), np.sin(thetas)
    offsets = np.linspace(-R, R, nd)
    step_d = offsets[1] - offsets[0]

    # residual per row as A d^2 + B d + C, from components at d = 0 and d = 1
    components = _compile(inst, scale)
    u = np.array([np.broadcast_to(c, thetas.shape) for c in components(ca, sa, 0.0)])
    v = np.array([np.broadcast_to(c, thetas.shape) for c in components(ca, sa, 1.0)]) - u
    A = (v * v).sum(axis=0)
    B = 2.0 * (u * v).sum(axis=0)
    C = (u * u).sum(axis=0)

    with np.errstate(divide="ignore", invalid="ignore"):
        vertex = np.where(A > 0, -B / (2.0 * A), 0.0)
    jstar = np.clip(np.rint((vertex + R) / step_d), 0, nd - 1).astype(int)

    def value(rows, cols):
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        # theta wraps at pi, where the same line reappears with d negated
        wrapped = (rows >= nt) | (rows < 0)
        cols = np.where(wrapped, nd - 1 - cols, cols)
        rows = rows % nt
        valid = (cols >= 0) & (cols < nd)
        dd = offsets[np.clip(cols, 0, nd - 1)]
        val = A[rows] * dd * dd + B[rows] * dd + C[rows]
        return np.where(valid, val, np.inf)

    rows = np.arange(nt)
    # nearest-to-vertex can lose a near tie to rounding; take the best of three
    near = np.stack([jstar - 1, jstar, jstar + 1])
    near_vals = np.stack([value(rows, j) for j in near])
    jstar = near[np.argmin(near_vals, axis=0), rows]
    center = value(rows, jstar)
    is_min = np.ones(nt, dtype=bool)
    for di in (-1, 1):
        for dj in (-1, 0, 1):
            is_min &= center <= value(rows + di, jstar + dj)
    is_min &= center <= value(rows, jstar - 1)
    is_min &= center <= value(rows, jstar + 1)

    # a true solution inside a grid cell leaves at most this much on the grid
    ncomp = u.shape[0]
    coarse = 16.0 * ncomp * (scale * (math.pi / nt) * (3 * scale + R) + step_d) ** 2
    starts = [(center[i], float(offsets[jstar[i]]), i) for i in np.flatnonzero(is_min) if center[i] <= coarse]

    # Second pass on the same theta rows with d free: the exact row minimum.
    # Catches basins the d grid is too coarse for and lines beyond the range.
    with np.errstate(divide="ignore", invalid="ignore"):
        profile = np.where(A > 0, C - B * B / (4.0 * A), C)
    prev, nxt = np.roll(profile, 1), np.roll(profile, -1)
    for i in np.flatnonzero((profile <= prev) & (profile <= nxt)):
        starts.append((profile[i], float(vertex[i]), i))
    starts.sort()

    accepted: list[tuple[float, Line]] = []
    seen: set[int] = set()
    for _, _, i in starts:
        if i in seen:
            continue
        seen.add(i)
        theta, d, cost = _refine(components, float(thetas[i]), cfg.refine_iters)
        if cost > cfg.residual_accept or abs(d) > cfg.far_limit * R:
            continue
        line = normalize_line(math.cos(theta), math.sin(theta), d)
        accepted.append((residual(inst, line), line))

    # best first, so each cluster of copies keeps its most accurate member
    accepted.sort(key=lambda e: e[0])
    found: list[tuple[Line, float]] = []
    for res, line in accepted:
        if not any(_same_line(line, other, cfg.dedup) for other, _ in found):
            found.append((line, res))
    found.sort(key=lambda e: order_key(e[0]))
    return OracleResult(tuple(l for l, _ in found), tuple(r for _, r in found))


# ---------------------------------------------------------------------------


@dataclass
class Comparison:
    analytic_count: int
    brute_count: int
    matched: list[tuple[int, int, float]] = field(default_factory=list)
    unmatched_analytic: list[int] = field(default_factory=list)
    unmatched_brute: list[int] = field(default_factory=list)
    max_distance: float = 0.0
    tol: float = 1e-6

    @property
    def count_mismatch(self) -> bool:
        return self.analytic_count != self.brute_count

    @property
    def ok(self) -> bool:
        return not (self.count_mismatch or self.unmatched_analytic or self.unmatched_brute) and self.max_distance <= self.tol

    def lines(self) -> list[str]:
        out = [f"analytic count {self.analytic_count}, oracle count {self.brute_count}"]
        for i, j, dist in self.matched:
            out.append(f"matched analytic[{i}] ~ oracle[{j}] at distance {dist:.3e}")
        for i in self.unmatched_analytic:
            out.append(f"unmatched analytic[{i}]")
        for j in self.unmatched_brute:
            out.append(f"unmatched oracle[{j}]")
        out.append(f"max matched distance {self.max_distance:.3e} (tol {self.tol:.1e})")
        out.append("OK" if self.ok else "MISMATCH")
        return out


def compare(analytic: SolutionSet, brute: OracleResult, tol: float = 1e-6) -> Comparison:
    """Greedy nearest-line matching between analytic and brute-force solutions."""
    a_lines = list(analytic.fold_lines)
    b_lines = list(brute.lines)
    pairs = sorted(
        (line_distance(a, b), i, j) for i, a in enumerate(a_lines) for j, b in enumerate(b_lines)
    )
    used_a: set[int] = set()
    used_b: set[int] = set()
    report = Comparison(len(a_lines), len(b_lines), tol=tol)
    for dist, i, j in pairs:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        report.matched.append((i, j, dist))
        report.max_distance = max(report.max_distance, dist)
    report.matched.sort()
    report.unmatched_analytic = [i for i in range(len(a_lines)) if i not in used_a]
    report.unmatched_brute = [j for j in range(len(b_lines)) if j not in used_b]
    return report


def max_solutions(inst: OpInstance) -> int:
    return MAX_SOLUTIONS[inst.name]
