"""Command-line front end.

Exit codes: 0 success, 1 invalid usage or input, 2 no solution (or too many
failed branch points), 3 verification failed.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import CheckTolerances, verify_solution
from .config import RunConfig
from .continuation import fit_asymptote, solve_point, trace_branch
from .errors import BranchFailureError, DomainError, HardyMFError, NoSignChangeError
from .greens import (
    ASYMPTOTE_INTERCEPT,
    REGULAR_PART_AT_ORIGIN,
    green_fast,
    phi,
    regular_part,
)
from .io import format_number, read_solution, write_branch, write_report, write_solution
from .radial.shooting import solve_given_c, solve_given_lambda
from .report import branch_report

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_USAGE", "EXIT_NO_SOLUTION", "EXIT_VERIFY_FAILED"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTION = 2
EXIT_VERIFY_FAILED = 3

log = logging.getLogger("hardy_mf")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected two numbers 'a,b', got {text!r}") from exc
    return a, b


def _global_options(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--tol", type=float, default=default, help="integrator tolerance")
    parser.add_argument("--match-delta", type=float, default=default, help="boundary matching offset")
    parser.add_argument("--jobs", type=int, default=default, help="worker processes for tracing")
    parser.add_argument("--config", default=default, help="JSON file with RunConfig fields")
    parser.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hardy-mf", description="Radial solutions of -Delta u - u/(1-|x|^2)^2 = lam e^u on the unit disc.")
    p.add_argument("--version", action="version", version=__version__)
    _global_options(p, suppress=False)
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="compute one solution")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam", type=float, help="solve for this lambda")
    g.add_argument("--c", type=float, help="solve for this central value")
    s.add_argument("--c-window", type=_pair, help="c search window a,b (with --lambda)")
    s.add_argument("--lambda-bracket", type=_pair, help="lambda bracket a,b (with --c)")
    s.add_argument("--out", help="output JSON file")

    t = sub.add_parser("trace", parents=[common], help="trace the blow-up branch")
    t.add_argument("--c-min", type=float, required=True)
    t.add_argument("--c-max", type=float, required=True)
    t.add_argument("--steps", type=int, required=True)
    t.add_argument("--c-threshold", type=float, default=35.0, help="tail start for the asymptotic fit")
    t.add_argument("--out", help="output CSV file")

    v = sub.add_parser("verify", parents=[common], help="run the verification suite on a solution")
    v.add_argument("--solution", required=True)
    v.add_argument("--report", help="output JSON report")

    gr = sub.add_parser("green", parents=[common], help="tabulate the Green's function")
    gr.add_argument("--rho-min", type=float, default=1e-3)
    gr.add_argument("--rho-max", type=float, default=20.0)
    gr.add_argument("--points", type=int, default=50)
    gr.add_argument("--out", help="output CSV file (default: standard output)")

    r = sub.add_parser("report", parents=[common], help="trace a branch and check the convergence laws")
    r.add_argument("--c-min", type=float, default=20.0)
    r.add_argument("--c-max", type=float, default=60.0)
    r.add_argument("--steps", type=int, default=80)
    r.add_argument("--out", help="output JSON report")
    return p


def _config(args) -> RunConfig:
    cfg = RunConfig.from_json(args.config) if getattr(args, "config", None) else RunConfig()
    updates = {}
    if getattr(args, "tol", None) is not None:
        updates["tol"] = args.tol
    if getattr(args, "match_delta", None) is not None:
        updates["match_delta"] = args.match_delta
    if getattr(args, "jobs", None) is not None:
        updates["jobs"] = args.jobs
    return replace(cfg, **updates) if updates else cfg


def _summary(sol) -> str:
    return (
        f"lambda={format_number(sol.lam)} c={format_number(sol.c)} "
        f"mass={format_number(sol.mass)} defect={sol.defect:.3e}"
    )


def cmd_solve(args, cfg: RunConfig) -> int:
    out = Path(args.out or cfg.solution_out)
    if args.c is not None:
        if not args.c > 0:
            raise UsageError("--c must be positive (solutions are positive, so u(0) > 0)")
        try:
            if args.lambda_bracket:
                sol = solve_given_c(args.c, args.lambda_bracket, cfg.tol, cfg.match_delta, cfg.mesh_spacing)
            else:
                sol = solve_point(args.c, None, 10.0, cfg.tol, cfg.match_delta, cfg.mesh_spacing).solution
        except (NoSignChangeError, HardyMFError) as exc:
            if isinstance(exc, DomainError):
                raise UsageError(str(exc)) from exc
            print(f"no solution: {exc}", file=sys.stderr)
            return EXIT_NO_SOLUTION
        sols = [sol]
    else:
        if not args.lam > 0:
            raise UsageError("--lambda must be positive")
        window = args.c_window or cfg.c_window
        sols = solve_given_lambda(
            args.lam, window, cfg.mass_window, cfg.n_scan, cfg.tol, cfg.match_delta, cfg.mesh_spacing
        )
        if not sols:
            print(f"no admissible solution for lambda={args.lam:g} with c in {window}", file=sys.stderr)
            return EXIT_NO_SOLUTION
    for k, sol in enumerate(sols):
        path = out if k == 0 else out.with_name(f"{out.stem}_{k}{out.suffix}")
        write_solution(sol, path)
        print(_summary(sol) + f" -> {path}")
    return EXIT_OK


def cmd_trace(args, cfg: RunConfig) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not (0 < args.c_min < args.c_max):
        raise UsageError("need 0 < --c-min < --c-max")
    mode = "parallel" if cfg.jobs > 1 else "sequential"
    try:
        branch = trace_branch(
            args.c_min, args.c_max, args.steps, mode, cfg.jobs,
            cfg.tol, cfg.match_delta, cfg.mesh_spacing, keep_solutions=False,
        )
    except BranchFailureError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NO_SOLUTION
    out = Path(args.out or cfg.branch_out)
    write_branch(branch, out)
    print(f"{len(branch)} points -> {out}")
    try:
        slope, intercept, resid = fit_asymptote(branch, args.c_threshold)
        print(
            f"fit c >= {args.c_threshold:g}: slope={slope:.6f} intercept={intercept:.6f} "
            f"max_residual={resid:.3e} (expected slope -2, intercept {ASYMPTOTE_INTERCEPT:.6f})"
        )
    except HardyMFError as exc:
        print(f"fit skipped: {exc}")
    return EXIT_OK


def _print_report(rep) -> None:
    for name, chk in rep.checks.items():
        status = "PASS" if chk.passed else "FAIL"
        print(f"{status} {name}: value={chk.value:.6g} tolerance={chk.tolerance:.6g}")


def cmd_verify(args, cfg: RunConfig) -> int:
    try:
        sol = read_solution(args.solution)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read solution {args.solution!r}: {exc}") from exc
    rep = verify_solution(sol, CheckTolerances(defect=cfg.defect_tol, mass_window=cfg.mass_window))
    rep.config["run"] = cfg.to_dict()
    write_report(rep.to_dict(), args.report or cfg.report_out)
    _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_VERIFY_FAILED


def cmd_green(args, cfg: RunConfig) -> int:
    if not (0 < args.rho_min < args.rho_max) or args.points < 2:
        raise UsageError("need 0 < --rho-min < --rho-max and --points >= 2")
    rho = np.geomspace(args.rho_min, args.rho_max, args.points)
    header = ["rho", "green_fast", "green_quadrature", "relative_difference", "radius", "regular_part"]
    rows = []
    for x in rho:
        fast = green_fast(x)
        quad = phi(0.5, math.sinh(0.5 * x) ** 2, cfg.quadrature)
        radius = math.tanh(0.5 * x)
        reg = regular_part((radius, 0.0)) if radius < 1.0 else math.nan
        rows.append([x, fast, quad, abs(fast - quad) / quad, radius, reg])
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([format_number(v) for v in row])
    finally:
        if args.out:
            fh.close()
    if args.out:
        print(
            f"{len(rows)} rows -> {args.out}; max relative difference "
            f"{max(r[3] for r in rows):.3e}; C(0) = {REGULAR_PART_AT_ORIGIN:.10f}"
        )
    return EXIT_OK


def cmd_report(args, cfg: RunConfig) -> int:
    if args.steps < 2 or not (0 < args.c_min < args.c_max):
        raise UsageError("need 0 < --c-min < --c-max and --steps >= 2")
    mode = "parallel" if cfg.jobs > 1 else "sequential"
    try:
        branch = trace_branch(args.c_min, args.c_max, args.steps, mode, cfg.jobs,
                              cfg.tol, cfg.match_delta, cfg.mesh_spacing)
    except BranchFailureError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NO_SOLUTION
    try:
        rep = branch_report(branch)
    except HardyMFError as exc:
        raise UsageError(f"branch too short for the report: {exc}") from exc
    write_report(rep.to_dict(), args.out or cfg.report_out)
    _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    "solve": cmd_solve,
    "trace": cmd_trace,
    "verify": cmd_verify,
    "green": cmd_green,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
