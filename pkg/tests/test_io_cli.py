import csv
import json
import math

import numpy as np
import pytest

from hardy_mf import cli
from hardy_mf.config import RunConfig
from hardy_mf.errors import DomainError
from hardy_mf.greens import green_fast
from hardy_mf.io import (
    BRANCH_COLUMNS,
    format_number,
    read_branch,
    read_solution,
    write_branch,
    write_report,
    write_solution,
)


# ----------------------------------------------------------------- formats

def test_format_number_round_trips():
    for x in (0.1, 1 / 3, 1e-300, -2.5e17, math.pi):
        assert float(format_number(x)) == x
    assert format_number(float("nan")) == "NaN"
    assert format_number(float("-inf")) == "-Infinity"


def test_solution_json_round_trip_is_bit_exact(sol30, tmp_path):
    path = tmp_path / "s.json"
    write_solution(sol30, path)
    back = read_solution(path)
    for name in ("mesh", "u", "du"):
        assert np.array_equal(getattr(back, name), getattr(sol30, name))
    assert (back.lam, back.c, back.mass, back.defect) == (sol30.lam, sol30.c, sol30.mass, sol30.defect)
    assert json.loads(path.read_text())["lambda"] == sol30.lam


def test_branch_csv_round_trip(tmp_path):
    from hardy_mf.continuation import trace_branch

    b = trace_branch(30.0, 31.0, 3, keep_solutions=False)
    path = tmp_path / "b.csv"
    write_branch(b, path)
    with open(path, newline="") as fh:
        assert tuple(next(csv.reader(fh))) == BRANCH_COLUMNS
    back = read_branch(path)
    for name in ("c", "lam", "mass", "r_lambda", "defect", "pohozaev_residual", "energy"):
        assert np.array_equal(back.column(name), b.column(name))


def test_report_serialises_numpy_and_tuples(tmp_path):
    path = tmp_path / "r.json"
    write_report({"a": np.float64(1.5), "w": (1.0, 2.0), "n": np.int64(3)}, path)
    assert json.loads(path.read_text()) == {"a": 1.5, "w": [1.0, 2.0], "n": 3}


# ----------------------------------------------------------------- configuration

def test_config_from_json(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"tol": 1e-12, "quadrature": {"rel_tol": 1e-12}, "c_window": [6, 50]}))
    cfg = RunConfig.from_json(path)
    assert cfg.tol == 1e-12 and cfg.c_window == (6.0, 50.0)
    assert cfg.quadrature.rel_tol == 1e-12


@pytest.mark.parametrize(
    "payload",
    ['{"bogus": 1}', '{"tol": -1}', '{"match_delta": 0.5}', '{"c_window": [5, 2]}', "[1, 2]", "{not json",
     '{"tol": "small"}'],
)
def test_config_rejects_bad_input(tmp_path, payload):
    path = tmp_path / "cfg.json"
    path.write_text(payload)
    with pytest.raises(DomainError):
        RunConfig.from_json(path)


# ----------------------------------------------------------------- command line

@pytest.fixture(scope="module")
def solved_file(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "sol.json"
    assert cli.main(["solve", "--lambda", "1e-8", "--out", str(out)]) == cli.EXIT_OK
    return out


def test_cli_solve_lambda(solved_file):
    sol = read_solution(solved_file)
    assert sol.lam == 1e-8
    assert abs(sol.mass - 8 * math.pi) < 0.05 * 8 * math.pi


def test_cli_solve_c(tmp_path):
    out = tmp_path / "c.json"
    assert cli.main(["solve", "--c", "30", "--out", str(out)]) == cli.EXIT_OK
    assert read_solution(out).c == 30.0


def test_cli_verify(solved_file, tmp_path):
    rep = tmp_path / "rep.json"
    assert cli.main(["verify", "--solution", str(solved_file), "--report", str(rep)]) == cli.EXIT_OK
    data = json.loads(rep.read_text())
    assert data["passed"] and data["checks"]["defect"]["passed"]


def test_cli_verify_detects_tampering(solved_file, tmp_path):
    data = json.loads(solved_file.read_text())
    k = len(data["u"]) // 2
    data["u"][k] += 0.01
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    rep = tmp_path / "rep.json"
    assert cli.main(["verify", "--solution", str(bad), "--report", str(rep)]) == cli.EXIT_VERIFY_FAILED
    assert not json.loads(rep.read_text())["passed"]


def test_cli_no_solution(tmp_path):
    assert cli.main(["solve", "--lambda", "10", "--out", str(tmp_path / "x.json")]) == cli.EXIT_NO_SOLUTION
    assert not (tmp_path / "x.json").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--c", "-1"],
        ["solve", "--lambda", "-1"],
        ["solve"],
        ["solve", "--lambda", "1e-8", "--c", "30"],
        ["trace", "--c-min", "30", "--c-max", "40", "--steps", "1"],
        ["trace", "--c-min", "40", "--c-max", "30", "--steps", "5"],
        ["verify", "--solution", "/nonexistent/file.json"],
        ["green", "--rho-min", "2", "--rho-max", "1"],
        ["bogus"],
        [],
        ["solve", "--lambda", "1e-8", "--match-delta", "0.5"],
    ],
)
def test_cli_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(argv) == cli.EXIT_USAGE


def test_cli_bad_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"unknown_key": 1}')
    assert cli.main(["--config", str(cfg), "green", "--out", str(tmp_path / "g.csv")]) == cli.EXIT_USAGE


def test_cli_green_table(tmp_path):
    out = tmp_path / "g.csv"
    assert cli.main(["green", "--rho-min", "1e-3", "--rho-max", "20", "--points", "50", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 50
    assert max(float(r["relative_difference"]) for r in rows) <= 1e-10
    for r in rows:
        assert float(r["green_fast"]) == pytest.approx(green_fast(float(r["rho"])), rel=1e-15)


def test_cli_green_stdout(capsys):
    assert cli.main(["green", "--points", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("rho,green_fast") and len(lines) == 4


def test_cli_trace(tmp_path, capsys):
    out = tmp_path / "b.csv"
    argv = ["trace", "--c-min", "35", "--c-max", "45", "--steps", "6", "--out", str(out)]
    assert cli.main(argv) == cli.EXIT_OK
    assert len(read_branch(out)) == 6
    assert "slope=" in capsys.readouterr().out


def test_cli_global_options_after_subcommand(tmp_path):
    out = tmp_path / "s.json"
    argv = ["solve", "--c", "30", "--tol", "1e-12", "--match-delta", "5e-4", "--out", str(out)]
    assert cli.main(argv) == cli.EXIT_OK
    assert read_solution(out).match_delta == 5e-4


def test_cli_report(tmp_path):
    out = tmp_path / "r.json"
    argv = ["report", "--c-min", "30", "--c-max", "50", "--steps", "9", "--out", str(out)]
    assert cli.main(argv) == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert data["passed"] and "fit_slope" in data["checks"]


def test_cli_report_too_short(tmp_path):
    argv = ["report", "--c-min", "20", "--c-max", "30", "--steps", "3", "--out", str(tmp_path / "r.json")]
    assert cli.main(argv) == cli.EXIT_USAGE
