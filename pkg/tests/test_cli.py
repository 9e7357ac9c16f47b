import io
import json
import subprocess
import sys

import pytest

from singlefold import cli
from singlefold.folds import SolutionSet
from singlefold.library import construction_path, trisection_source

from .helpers import COUNT_FIXTURES, FIXTURES, load_request


def run(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out=out, err=err, stdin=io.StringIO(stdin_text))
    return code, out.getvalue(), err.getvalue()


def solve_json(request, *extra):
    code, out, err = run(["solve", "--json", "-", *extra], json.dumps(request))
    return code, (json.loads(out) if out else None), err


def test_solve_o1():
    code, resp, _ = solve_json(load_request("o1_one"))
    assert code == 0
    assert resp["solutions"] == [[1, 0, -1]] and resp["count"] == 1
    assert resp["op"] == "O1" and resp["multiplicities"] == [1]


def test_solve_output_is_single_line_json():
    code, out, _ = run(["solve", "--json", str(FIXTURES / "o7_three.json")])
    assert code == 0 and out.count("\n") == 1 and " " not in out.replace("always solvable", "")


def test_solve_o8_parallel_is_success():
    code, resp, _ = solve_json(load_request("o8_parallel"))
    assert code == 0
    assert resp == {
        "solutions": [],
        "count": 0,
        "multiplicities": [],
        "condition": "requires m not parallel to n",
        "op": "O8",
    }


def test_solve_o6_on_parabola():
    code, resp, _ = solve_json(load_request("o6_on_parabola"))
    assert code == 0 and resp["count"] == 1 and resp["multiplicities"] == [2]


@pytest.mark.parametrize("name, count", sorted(COUNT_FIXTURES.items()))
def test_response_round_trips(name, count):
    code, out, _ = run(["solve", "--json", str(FIXTURES / f"{name}.json")])
    resp = json.loads(out)
    assert code == 0 and resp["count"] == count == len(resp["solutions"])
    assert json.loads(cli.dumps(resp)) == resp
    for a, b, c in resp["solutions"]:
        assert a * a + b * b == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        json.dumps([1, 2]),
        json.dumps({"op": "O9"}),
        json.dumps({"op": "O6", "points": {"P": [0, 1]}, "lines": {"m": [0, 1, 1]}}),
        json.dumps({"op": "O1", "points": {"P": [0, 0], "Q": [0, 0]}}),
        json.dumps({"op": "O1", "points": {"P": [0, 0], "Q": [1, "x"]}}),
        json.dumps({"op": "O3", "lines": {"m": [0, 0, 1]}}),
        json.dumps({"op": "O1", "points": {"P": [0, 0], "Q": [1, 0], "R": [2, 2]}}),
        json.dumps({"op": "O1", "points": {"P": [0, 0], "Q": [1, 0]}, "tolerances": {"eps_bogus": 1}}),
    ],
)
def test_malformed_requests_exit_2(payload):
    code, out, err = run(["solve", "--json", "-"], payload)
    assert code == 2 and out == "" and err.startswith("error:")


def test_missing_request_file_exits_2(tmp_path):
    code, _, err = run(["solve", "--json", str(tmp_path / "none.json")])
    assert code == 2 and "cannot read" in err


def test_internal_error_exits_1(monkeypatch):
    def boom(*_):
        raise RuntimeError("kaput")

    monkeypatch.setattr(cli, "solve", boom)
    code, _, err = solve_json(load_request("o1_one"))
    assert code == 1 and "kaput" in err


def test_tolerance_precedence(monkeypatch):
    near = {"op": "O6", "points": {"P": [0, 1e-6], "Q": [3, 1]}, "lines": {"m": [0, 1, 0]}}
    assert solve_json(near)[0] == 0
    monkeypatch.setenv("FOLD_TOL", "1e-3")
    assert solve_json(near)[0] == 2
    assert solve_json(near, "--tol", "1e-9")[0] == 0
    monkeypatch.setenv("FOLD_TOL", "banana")
    assert solve_json(near)[0] == 2
    assert solve_json(near, "--tol", "1e-9")[0] == 0
    monkeypatch.delenv("FOLD_TOL")
    assert cli.resolve_tolerances(1e-5, {"eps_parallel": 1e-8}).eps_parallel == 1e-8


def test_solve_writes_svg(tmp_path):
    target = tmp_path / "o6.svg"
    code, _, _ = run(["solve", "--json", str(FIXTURES / "o6_outside.json"), "--svg", str(target)])
    assert code == 0
    assert target.read_text() == (FIXTURES / "o6_outside.svg").read_text()


def test_run_trisection():
    code, out, _ = run(["run", str(construction_path("trisect"))])
    assert code == 0 and out.startswith("t = line(")


@pytest.mark.parametrize("degrees", [15, 30, 60, 85])
def test_run_trisection_fixtures(tmp_path, degrees):
    script = tmp_path / f"trisect_{degrees}.fold"
    script.write_text(trisection_source(degrees))
    code, out, err = run(["run", str(script), "--trace"])
    assert code == 0, err
    assert len(out.splitlines()) == 11


def test_run_exit_codes(tmp_path):
    assert run(["run", str(tmp_path / "missing.fold")])[0] == 2
    bad = tmp_path / "bad.fold"
    bad.write_text("line @")
    code, _, err = run(["run", str(bad)])
    assert code == 2 and "1:6" in err
    bad.write_text("fold f = O9(P)")
    assert run(["run", str(bad)])[0] == 2
    bad.write_text("point P = (0, 1)\nline m = coeffs(0, 1, 1)\npoint Q = (3, 1)\nfold f = O6(P, m, Q) select 3\n")
    code, _, err = run(["run", str(bad)])
    assert code == 3 and "statement 4" in err
    bad.write_text("point P = (0, 0)\npoint Q = (1, 0)\nassert_dist(P, Q, 2, 0.5)\n")
    code, _, err = run(["run", str(bad)])
    assert code == 4 and "measured 1" in err


def test_run_svg(tmp_path):
    target = tmp_path / "cube.svg"
    assert run(["run", str(construction_path("cube_root")), "--svg", str(target)])[0] == 0
    assert 'class="fold"' in target.read_text()


def test_oracle_on_fixtures():
    code, out, _ = run(["oracle", "--json", str(FIXTURES / "o7_three.json")])
    assert code == 0
    assert out.count("matched analytic") == 3 and out.rstrip().endswith("OK")


def test_oracle_detects_dropped_root(monkeypatch):
    real = cli.solve

    def drop_first(inst, tol):
        s = real(inst, tol)
        return SolutionSet(s.fold_lines[1:], s.multiplicities[1:])

    monkeypatch.setattr(cli, "solve", drop_first)
    code, out, _ = run(["oracle", "--json", str(FIXTURES / "o6_outside.json")])
    assert code != 0 and "MISMATCH" in out


def test_oracle_grid_flags():
    code, out, _ = run(["oracle", "--json", str(FIXTURES / "o1_one.json"), "--theta-samples", "360", "--offset-samples", "200"])
    assert code == 0
    assert run(["oracle", "--json", str(FIXTURES / "o1_one.json"), "--theta-samples", "1"])[0] == 2


def test_render(tmp_path):
    scene = tmp_path / "scene.json"
    scene.write_text(json.dumps({"points": {"O": [0, 0]}}))
    code, out, _ = run(["render", str(scene)])
    assert code == 0 and out.count("<circle") == 1
    scene.write_text("{}")
    assert run(["render", str(scene)])[0] == 2
    target = tmp_path / "out.svg"
    scene.write_text(json.dumps({"lines": {"m": [1, 1, 0]}}))
    assert run(["render", str(scene), "-o", str(target)])[0] == 0 and target.exists()


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["solve"])[0] == 2


def test_cli_output_is_deterministic():
    first = run(["solve", "--json", str(FIXTURES / "o7_three.json")])
    assert first == run(["solve", "--json", str(FIXTURES / "o7_three.json")])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "singlefold", "solve", "--json", "-"],
        input=json.dumps(load_request("o1_one")),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 1
