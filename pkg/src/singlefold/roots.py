"""Real roots of polynomials of degree <= 3, with multiplicities.

Cubics are solved by bracketing: the critical points split the real line
into monotone pieces, each piece holds at most one simple root, found by
bisection and then polished with Newton steps on the original coefficients.
A critical point where the polynomial (nearly) vanishes is a repeated root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import DEFAULT_TOL, Tolerances


class IdenticallyZero(ArithmeticError):
    """All polynomial coefficients vanish; every t is a root."""


@dataclass(frozen=True)
class RealRoots:
    roots: tuple[float, ...] = ()
    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.roots) != len(self.multiplicities):
            raise ValueError("roots and multiplicities differ in length")
        if any(b <= a for a, b in zip(self.roots, self.roots[1:])):
            raise ValueError(f"roots not strictly ascending: {self.roots}")
        if any(k < 1 for k in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    def __len__(self):
        return len(self.roots)


def horner(coeffs: tuple[float, ...], t: float) -> float:
    """Evaluate a polynomial given highest-degree coefficient first."""
    acc = 0.0
    for c in coeffs:
        acc = acc * t + c
    return acc


def _magnitude(coeffs, t: float) -> float:
    acc = 0.0
    at = abs(t)
    for c in coeffs:
        acc = acc * at + abs(c)
    return acc


def _derivative(coeffs):
    n = len(coeffs) - 1
    return tuple(c * (n - i) for i, c in enumerate(coeffs[:-1]))


def _polish(coeffs, t: float, steps: int = 4) -> float:
    """A few damped Newton steps; a step is kept only if it lowers |p|."""
    deriv = _derivative(coeffs)
    best, best_val = t, abs(horner(coeffs, t))
    for _ in range(steps):
        if best_val == 0.0:
            break
        d = horner(deriv, best)
        if d == 0.0:
            break
        step = horner(coeffs, best) / d
        for damping in (1.0, 0.5, 0.25):
            cand = best - damping * step
            val = abs(horner(coeffs, cand))
            if val < best_val:
                best, best_val = cand, val
                break
        else:
            break
    return best


def _bisect(coeffs, lo: float, hi: float) -> float:
    flo = horner(coeffs, lo)
    if flo == 0.0:
        return lo
    if horner(coeffs, hi) == 0.0:
        return hi
    for _ in range(2200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = horner(coeffs, mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _merge(pairs, tol: Tolerances) -> RealRoots:
    """Sort (root, multiplicity) pairs and merge roots closer than eps_root_dedup."""
    pairs = sorted(pairs)
    merged: list[list[float]] = []
    for r, k in pairs:
        if merged:
            last = merged[-1]
            if abs(r - last[0]) <= tol.eps_root_dedup * max(1.0, abs(r), abs(last[0])):
                total = last[1] + k
                last[0] = (last[0] * last[1] + r * k) / total
                last[1] = total
                continue
        merged.append([r, k])
    return RealRoots(tuple(r for r, _ in merged), tuple(int(k) for _, k in merged))


def _leading_vanishes(coeffs, tol: Tolerances) -> bool:
    scale = max(abs(c) for c in coeffs)
    return abs(coeffs[0]) <= tol.eps_sign * scale


def solve_linear(c1: float, c0: float) -> RealRoots:
    if c1 == 0.0:
        if c0 == 0.0:
            raise IdenticallyZero("0 = 0")
        return RealRoots()
    return RealRoots((-c0 / c1 + 0.0,), (1,))


def solve_quadratic(c2: float, c1: float, c0: float, tol: Tolerances = DEFAULT_TOL) -> RealRoots:
    coeffs = (c2, c1, c0)
    if not any(coeffs):
        raise IdenticallyZero("all coefficients vanish")
    if _leading_vanishes(coeffs, tol):
        return solve_linear(c1, c0)
    mid = -c1 / (2.0 * c2)
    disc = c1 * c1 - 4.0 * c2 * c0
    # roots closer than the dedup tolerance count as one double root
    merge = (tol.eps_root_dedup * abs(c2) * max(1.0, abs(mid))) ** 2
    if abs(disc) <= merge:
        return RealRoots((_polish(coeffs, mid) + 0.0,), (2,))
    if disc < 0.0:
        return RealRoots()
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    r1 = q / c2
    r2 = c0 / q if q != 0.0 else -r1
    pairs = [(_polish(coeffs, r1) + 0.0, 1), (_polish(coeffs, r2) + 0.0, 1)]
    return _merge(pairs, tol)


def solve_cubic(c3: float, c2: float, c1: float, c0: float, tol: Tolerances = DEFAULT_TOL) -> RealRoots:
    coeffs = (c3, c2, c1, c0)
    if not any(coeffs):
        raise IdenticallyZero("all coefficients vanish")
    if _leading_vanishes(coeffs, tol):
        return solve_quadratic(c2, c1, c0, tol)

    crit = solve_quadratic(3.0 * c3, 2.0 * c2, c1, tol)
    second = _derivative(_derivative(coeffs))
    repeated: list[tuple[float, int, float]] = []
    for c, k in zip(crit.roots, crit.multiplicities):
        width = tol.eps_root_dedup * max(1.0, abs(c))
        # two roots closer than `width` straddle c with |p(c)| below this
        threshold = 0.5 * abs(horner(second, c)) * (0.5 * width) ** 2
        if k == 2:
            threshold = max(threshold, abs(c3) * width ** 3)
        threshold = max(threshold, 8 * 2.0 ** -52 * _magnitude(coeffs, c))
        if abs(horner(coeffs, c)) <= threshold:
            repeated.append((_polish(coeffs, c), k + 1, width))

    bound = 1.0 + max(abs(c / c3) for c in coeffs[1:])
    edges = [-bound, *crit.roots, bound]
    pairs = [(c, k) for c, k, _ in repeated]
    for j in range(len(edges) - 1):
        lo, hi = edges[j], edges[j + 1]
        flo, fhi = horner(coeffs, lo), horner(coeffs, hi)
        if flo == 0.0 and j > 0:
            continue  # already the upper end of the previous interval
        if (flo < 0.0) == (fhi < 0.0) and fhi != 0.0:
            continue
        r = _polish(coeffs, _bisect(coeffs, lo, hi))
        # simple roots next to a repeated one are the same root seen twice
        if any(abs(r - c) <= width for c, _, width in repeated):
            continue
        pairs.append((r, 1))
    return _merge([(r + 0.0, k) for r, k in pairs], tol)
