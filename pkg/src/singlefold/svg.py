"""Deterministic SVG diagrams of points, lines, parabolas and folds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping
from xml.sax.saxutils import escape, quoteattr

from .folds import OpInstance, SolutionSet
from .geometry import (
    DEFAULT_TOL,
    Line,
    Point,
    Tolerances,
    apply_similarity,
    canonical_frame,
    invert_similarity,
    normalize_line,
)

PARABOLA_SEGMENTS = 128
WIDTH = 640.0
MARGIN_FRACTION = 0.10
_MIN_SPAN = 1.0


class EmptyScene(ValueError):
    pass


@dataclass(frozen=True)
class Parabola:
    focus: Point
    directrix: Line


@dataclass(frozen=True)
class Scene:
    points: tuple[tuple[str, Point], ...] = ()
    lines: tuple[tuple[str, Line], ...] = ()
    folds: tuple[tuple[str, Line], ...] = ()
    parabolas: tuple[tuple[str, Parabola], ...] = ()

    def is_empty(self) -> bool:
        return not (self.points or self.lines or self.folds or self.parabolas)


@dataclass(frozen=True)
class Viewport:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    def contains(self, p: Point) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def corners(self) -> tuple[Point, ...]:
        return (
            Point(self.xmin, self.ymin),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
            Point(self.xmin, self.ymax),
        )


def _anchors(scene: Scene) -> list[Point]:
    # Lines contribute their foot from the origin so a line-only scene still frames something.
    pts = [p for _, p in scene.points]
    pts += [ln.foot() for _, ln in scene.lines + scene.folds]
    for _, par in scene.parabolas:
        pts.append(par.focus)
        pts.append(par.directrix.foot())
    return pts


def viewport(scene: Scene) -> Viewport:
    """Bounding box of the finite scene elements grown by 10% on each side."""
    if scene.is_empty():
        raise EmptyScene("nothing to draw")
    pts = _anchors(scene)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, _MIN_SPAN)
    # Square up so both axes share one scale.
    cx, cy = (x0 + x1) / 2.0, (y0 + y1) / 2.0
    half = span / 2.0 * (1.0 + 2.0 * MARGIN_FRACTION)
    return Viewport(cx - half, cy - half, cx + half, cy + half)


def clip_line(line: Line, box: Viewport) -> tuple[Point, Point] | None:
    """Segment of an infinite line inside the box, or None if it misses."""
    foot = line.foot()
    dx, dy = line.direction
    lo, hi = -math.inf, math.inf
    for origin, step, low, high in ((foot.x, dx, box.xmin, box.xmax), (foot.y, dy, box.ymin, box.ymax)):
        if abs(step) < 1e-15:
            if not low <= origin <= high:
                return None
            continue
        t0, t1 = (low - origin) / step, (high - origin) / step
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(lo, t0), min(hi, t1)
    if lo > hi:
        return None
    return Point(foot.x + lo * dx, foot.y + lo * dy), Point(foot.x + hi * dx, foot.y + hi * dy)


def parabola_samples(par: Parabola, box: Viewport, segments: int = PARABOLA_SEGMENTS) -> list[Point]:
    """``segments + 1`` points of the parabola spanning the viewport's canonical x-range."""
    frame = canonical_frame(par.focus, par.directrix)
    back = invert_similarity(frame)
    xs = [apply_similarity(frame, c).x for c in box.corners()]
    u0, u1 = min(xs), max(xs)
    out = []
    for k in range(segments + 1):
        u = u0 + (u1 - u0) * k / segments
        out.append(apply_similarity(back, Point(u, u * u / 4.0)))
    return out


def _fmt(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class _Canvas:
    def __init__(self, box: Viewport):
        self.box = box
        self.scale = WIDTH / box.width
        self.height = box.height * self.scale

    def xy(self, p: Point) -> tuple[str, str]:
        return _fmt((p.x - self.box.xmin) * self.scale), _fmt((self.box.ymax - p.y) * self.scale)


_STYLE = (
    ".given{stroke:#222;stroke-width:1.5;fill:none}"
    ".fold{stroke:#c0392b;stroke-width:1.5;stroke-dasharray:8 4;fill:none}"
    ".parabola{stroke:#2471a3;stroke-width:1.2;fill:none}"
    ".point{fill:#111}"
    ".label{font-family:sans-serif;font-size:13px;fill:#111}"
)


def render_svg(scene: Scene) -> str:
    """SVG 1.1 text; identical scenes give identical bytes."""
    box = viewport(scene)
    cv = _Canvas(box)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(WIDTH)}" '
        f'height="{_fmt(cv.height)}" viewBox="0 0 {_fmt(WIDTH)} {_fmt(cv.height)}">',
        f"<style>{_STYLE}</style>",
        f'<rect x="0" y="0" width="{_fmt(WIDTH)}" height="{_fmt(cv.height)}" fill="#fff"/>',
    ]
    for name, par in scene.parabolas:
        coords = " ".join(",".join(cv.xy(p)) for p in parabola_samples(par, box))
        out.append(f'<polyline class="parabola" data-name={quoteattr(name)} points="{coords}"/>')
    for cls, items in (("given", scene.lines), ("fold", scene.folds)):
        for name, line in items:
            seg = clip_line(line, box)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = cv.xy(seg[0]), cv.xy(seg[1])
            out.append(f'<line class="{cls}" data-name={quoteattr(name)} x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
            lx, ly = cv.xy(Point(seg[0].x + 0.1 * (seg[1].x - seg[0].x), seg[0].y + 0.1 * (seg[1].y - seg[0].y)))
            out.append(f'<text class="label" x="{lx}" y="{ly}">{escape(name)}</text>')
    for name, p in scene.points:
        cx, cy = cv.xy(p)
        out.append(f'<circle class="point" cx="{cx}" cy="{cy}" r="3.5"/>')
        lx, ly = cv.xy(p)
        out.append(f'<text class="label" x="{_fmt(float(lx) + 6)}" y="{_fmt(float(ly) - 6)}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# scene builders -----------------------------------------------------------------


def scene_for_solutions(inst: OpInstance, solutions: SolutionSet) -> Scene:
    points, lines = [], []
    for name, value in zip(inst.operands, inst.args()):
        (points if isinstance(value, Point) else lines).append((name, value))
    parabolas = []
    if inst.name in ("O6", "O7", "O8"):
        parabolas.append(("parabola(P, m)", Parabola(inst.P, inst.m)))
    if inst.name == "O7":
        parabolas.append(("parabola(Q, n)", Parabola(inst.Q, inst.n)))
    folds = [(f"fold {k}", line) for k, line in enumerate(solutions.fold_lines, start=1)]
    return Scene(tuple(points), tuple(lines), tuple(folds), tuple(parabolas))


def scene_for_environment(bindings: Mapping[str, Point | Line], folds: Iterable[str] = ()) -> Scene:
    fold_names = set(folds)
    points = tuple((k, v) for k, v in bindings.items() if isinstance(v, Point))
    lines = tuple((k, v) for k, v in bindings.items() if isinstance(v, Line) and k not in fold_names)
    fold_lines = tuple((k, v) for k, v in bindings.items() if isinstance(v, Line) and k in fold_names)
    return Scene(points, lines, fold_lines)


def _point(value, where: str) -> Point:
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ValueError(f"{where}: expected [x, y]")
    return Point(float(value[0]), float(value[1]))


def _line(value, where: str, tol: Tolerances) -> Line:
    if not (isinstance(value, (list, tuple)) and len(value) == 3):
        raise ValueError(f"{where}: expected [a, b, c]")
    return normalize_line(float(value[0]), float(value[1]), float(value[2]), tol)


def scene_from_json(data: Mapping, tol: Tolerances = DEFAULT_TOL) -> Scene:
    """Scene from ``{"points": {...}, "lines": {...}, "folds": {...}, "parabolas": {...}}``.

    A parabola is ``{"focus": [x, y], "directrix": [a, b, c]}``.
    """
    if not isinstance(data, Mapping):
        raise ValueError("scene must be a JSON object")
    unknown = set(data) - {"points", "lines", "folds", "parabolas"}
    if unknown:
        raise ValueError(f"unknown scene keys: {', '.join(sorted(unknown))}")

    def section(key):
        value = data.get(key, {})
        if not isinstance(value, Mapping):
            raise ValueError(f"{key}: expected an object")
        return value.items()

    points = tuple((k, _point(v, f"points.{k}")) for k, v in section("points"))
    lines = tuple((k, _line(v, f"lines.{k}", tol)) for k, v in section("lines"))
    folds = tuple((k, _line(v, f"folds.{k}", tol)) for k, v in section("folds"))
    parabolas = []
    for k, v in section("parabolas"):
        if not isinstance(v, Mapping) or set(v) != {"focus", "directrix"}:
            raise ValueError(f"parabolas.{k}: expected focus and directrix")
        parabolas.append(
            (k, Parabola(_point(v["focus"], f"parabolas.{k}.focus"), _line(v["directrix"], f"parabolas.{k}.directrix", tol)))
        )
    return Scene(points, lines, folds, tuple(parabolas))
