"""Command-line front end: ``solve``, ``run``, ``oracle`` and ``render``."""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Mapping, TextIO

from .folds import OPERATIONS, OpInstance, SolutionSet, condition_text, solve
from .geometry import DEFAULT_TOL, GeometryError, Line, Point, Tolerances, normalize_line
from .oracle import OracleConfig, brute_force_solve, compare
from .script import AssertionFailure, LexError, ParseError, ScriptRuntimeError, evaluate, parse, tokenize
from .svg import EmptyScene, render_svg, scene_for_environment, scene_for_solutions, scene_from_json

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3
EXIT_ASSERTION = 4

TOL_ENV = "FOLD_TOL"


class RequestError(ValueError):
    """Malformed input; reported on stderr with exit status 2."""


# tolerances ---------------------------------------------------------------------


def _positive(text: str, where: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise RequestError(f"{where}: not a number: {text!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise RequestError(f"{where}: must be positive and finite, got {text!r}")
    return value


def resolve_tolerances(flag: float | None, overrides: Mapping[str, Any] | None = None) -> Tolerances:
    """default < FOLD_TOL < request overrides < --tol, for eps_incidence."""
    fields = {}
    env = os.environ.get(TOL_ENV)
    if env and flag is None:
        fields["eps_incidence"] = _positive(env, TOL_ENV)
    if overrides:
        known = {f.name for f in dataclasses.fields(Tolerances)}
        for key, value in overrides.items():
            if key not in known:
                raise RequestError(f"unknown tolerance {key!r}")
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise RequestError(f"tolerance {key!r} must be a number")
            fields[key] = _positive(value, f"tolerance {key}")
    if flag is not None:
        fields["eps_incidence"] = _positive(flag, "--tol")
    return dataclasses.replace(DEFAULT_TOL, **fields)


# requests -----------------------------------------------------------------------


def _pair(value, where: str) -> Point:
    if not (isinstance(value, list) and len(value) == 2 and all(_is_number(v) for v in value)):
        raise RequestError(f"{where}: expected [x, y]")
    return Point(float(value[0]), float(value[1]))


def _triple(value, where: str, tol: Tolerances) -> Line:
    if not (isinstance(value, list) and len(value) == 3 and all(_is_number(v) for v in value)):
        raise RequestError(f"{where}: expected [a, b, c]")
    return normalize_line(float(value[0]), float(value[1]), float(value[2]), tol)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def parse_request(data: Any, flag_tol: float | None = None) -> tuple[OpInstance, Tolerances]:
    """Build an operation instance from a SolveRequest JSON value.

    ``{"op": "O6", "points": {"P": [0, 1], "Q": [3, 1]}, "lines": {"m": [0, 1, 1]}}``
    with an optional ``"tolerances"`` object.
    """
    if not isinstance(data, dict):
        raise RequestError("request must be a JSON object")
    unknown = set(data) - {"op", "points", "lines", "tolerances"}
    if unknown:
        raise RequestError(f"unknown request keys: {', '.join(sorted(unknown))}")
    op = data.get("op")
    if op not in OPERATIONS:
        raise RequestError(f"unknown op {op!r}; expected one of {', '.join(OPERATIONS)}")
    overrides = data.get("tolerances")
    if overrides is not None and not isinstance(overrides, dict):
        raise RequestError("tolerances must be an object")
    tol = resolve_tolerances(flag_tol, overrides)
    points = data.get("points", {})
    lines = data.get("lines", {})
    if not isinstance(points, dict) or not isinstance(lines, dict):
        raise RequestError("points and lines must be objects")
    cls = OPERATIONS[op]
    args = []
    for name in cls.operands:
        is_point = name in ("P", "Q")
        table = points if is_point else lines
        if name not in table:
            kind = "point" if is_point else "line"
            raise RequestError(f"{op} needs {kind} {name!r}")
        try:
            args.append(_pair(table[name], f"points.{name}") if is_point else _triple(table[name], f"lines.{name}", tol))
        except GeometryError as exc:
            raise RequestError(f"{name}: {exc}") from None
    extra = (set(points) | set(lines)) - set(cls.operands)
    if extra:
        raise RequestError(f"{op} does not take {', '.join(sorted(extra))}")
    try:
        inst = cls(*args)
        inst.validate(tol)
    except GeometryError as exc:
        raise RequestError(f"{op}: {exc}") from None
    return inst, tol


def _num(v: float):
    # integral values print as JSON integers; everything else keeps repr precision
    v = v + 0.0
    if v.is_integer() and abs(v) < 2.0**53:
        return int(v)
    return v


def solve_response(inst: OpInstance, solutions: SolutionSet, tol: Tolerances) -> dict:
    return {
        "solutions": [[_num(ln.a), _num(ln.b), _num(ln.c)] for ln in solutions.fold_lines],
        "count": len(solutions),
        "multiplicities": list(solutions.multiplicities),
        "condition": condition_text(inst, tol),
        "op": inst.name,
    }


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def _load_json(source: str, stdin: TextIO) -> Any:
    try:
        text = stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise RequestError(f"cannot read {source}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise RequestError(f"malformed JSON in {source}: {exc}") from None


def _write_svg(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# commands -----------------------------------------------------------------------


def cmd_solve(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    inst, tol = parse_request(_load_json(args.json, stdin), args.tol)
    solutions = solve(inst, tol)
    out.write(dumps(solve_response(inst, solutions, tol)) + "\n")
    if args.svg:
        _write_svg(args.svg, render_svg(scene_for_solutions(inst, solutions)))
    return EXIT_OK


def cmd_run(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    path = args.script
    try:
        source = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        err.write(f"{path}: cannot read script: {getattr(exc, 'strerror', None) or exc}\n")
        return EXIT_USAGE
    try:
        tol = resolve_tolerances(args.tol)
        prog = parse(tokenize(source))
    except (LexError, ParseError) as exc:
        err.write(f"{path}:{exc}\n")
        return EXIT_USAGE
    try:
        env = evaluate(prog, tol)
    except AssertionFailure as exc:
        err.write(f"{path}:{exc}\n")
        return EXIT_ASSERTION
    except ScriptRuntimeError as exc:
        err.write(f"{path}:{exc}\n")
        return EXIT_RUNTIME
    if args.trace:
        for entry in env.trace:
            out.write(entry.render() + "\n")
    else:
        for line in env.printed:
            out.write(line + "\n")
    if args.svg:
        _write_svg(args.svg, render_svg(scene_for_environment(env.bindings, env.folds)))
    return EXIT_OK


def _oracle_config(args) -> OracleConfig:
    fields = {
        name: getattr(args, name)
        for name in ("theta_samples", "offset_range", "offset_samples", "refine_iters", "residual_accept", "dedup", "far_limit")
        if getattr(args, name) is not None
    }
    try:
        return OracleConfig(**fields)
    except ValueError as exc:
        raise RequestError(str(exc)) from None


def cmd_oracle(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    inst, tol = parse_request(_load_json(args.json, stdin), args.tol)
    cfg = _oracle_config(args)
    report = compare(solve(inst, tol), brute_force_solve(inst, cfg), args.match_tol)
    for line in report.lines():
        out.write(line + "\n")
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_render(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    data = _load_json(args.scene, stdin)
    try:
        scene = scene_from_json(data, resolve_tolerances(args.tol))
        text = render_svg(scene)
    except (ValueError, EmptyScene) as exc:
        raise RequestError(str(exc)) from None
    if args.output:
        _write_svg(args.output, text)
    else:
        out.write(text)
    return EXIT_OK


# argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singlefold", description="Single-fold origami operations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_tol(p):
        p.add_argument("--tol", type=float, default=None, help=f"eps_incidence (overrides ${TOL_ENV})")
        return p

    p = with_tol(sub.add_parser("solve", help="solve one operation instance from JSON"))
    p.add_argument("--json", required=True, metavar="FILE", help="request file, or - for stdin")
    p.add_argument("--svg", metavar="PATH", help="also write a diagram")
    p.set_defaults(handler=cmd_solve)

    p = with_tol(sub.add_parser("run", help="evaluate a .fold construction script"))
    p.add_argument("script")
    p.add_argument("--trace", action="store_true", help="print every statement with its value")
    p.add_argument("--svg", metavar="PATH", help="draw the final bindings")
    p.set_defaults(handler=cmd_run)

    p = with_tol(sub.add_parser("oracle", help="compare the analytic solver with the brute-force oracle"))
    p.add_argument("--json", required=True, metavar="FILE", help="request file, or - for stdin")
    p.add_argument("--theta-samples", type=int)
    p.add_argument("--offset-range", type=float)
    p.add_argument("--offset-samples", type=int)
    p.add_argument("--refine-iters", type=int)
    p.add_argument("--residual-accept", type=float)
    p.add_argument("--dedup", type=float)
    p.add_argument("--far-limit", type=float)
    p.add_argument("--match-tol", type=float, default=1e-6, help="max line distance for a match")
    p.set_defaults(handler=cmd_oracle)

    p = with_tol(sub.add_parser("render", help="render a JSON scene to SVG"))
    p.add_argument("scene", help="scene file, or - for stdin")
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(handler=cmd_render)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args, out, err, stdin)
    except RequestError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - last-resort exit status 1
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
