"""Tracing the blow-up branch ``c -> lam(c)``.

The branch is parametrised by the central value ``c``: on the concentrating
branch ``lam(c)`` is single valued and follows ``c = A - 2 log(lam) + o(1)``,
so each new point is found by bracketing ``lam`` near the prediction
``lam_prev * exp(-(c - c_prev) / 2)``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import energy_onofri, pohozaev_residual
from .errors import BranchFailureError, DomainError, HardyMFError, InsufficientPointsError
from .greens import ASYMPTOTE_INTERCEPT
from .radial.shooting import (
    DEFAULT_DELTA,
    DEFAULT_MESH_SPACING,
    DEFAULT_TOL,
    boundary_defect,
    solve_given_c,
)
from .radial.solution import RadialSolution

__all__ = ["BranchPoint", "Branch", "trace_branch", "fit_asymptote", "solve_point", "MAX_FAILURE_FRACTION"]

log = logging.getLogger(__name__)

MAX_FAILURE_FRACTION = 0.10
POHOZAEV_RADII = (0.25, 0.5, 0.75)


@dataclass
class BranchPoint:
    """One solution on the branch with its derived diagnostics."""

    lam: float
    c: float
    mass: float
    r_lambda: float
    defect: float
    pohozaev_residual: float
    energy: float
    evaluations: int = 0
    solution: RadialSolution | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_solution(cls, sol: RadialSolution) -> "BranchPoint":
        poho = max(pohozaev_residual(sol, r) for r in POHOZAEV_RADII if r <= sol.r_match)
        return cls(
            lam=sol.lam,
            c=sol.c,
            mass=sol.mass,
            r_lambda=sol.r_lambda,
            defect=sol.defect,
            pohozaev_residual=poho,
            energy=energy_onofri(sol).quad_energy,
            evaluations=sol.evaluations,
            solution=sol,
        )


@dataclass
class Branch:
    """Branch points ordered by increasing ``c``, plus the solver settings used."""

    points: list[BranchPoint]
    settings: dict = field(default_factory=dict)
    failures: list[tuple[float, str]] = field(default_factory=list)

    def __post_init__(self):
        self.points.sort(key=lambda p: p.c)

    def __len__(self):
        return len(self.points)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points])

    def at(self, c: float) -> BranchPoint:
        """The point whose ``c`` is closest to the argument."""
        return min(self.points, key=lambda p: abs(p.c - c))


def _asymptotic_lambda(c: float) -> float:
    return math.exp(0.5 * (ASYMPTOTE_INTERCEPT - c))


def _bracket(c, guess, factor, delta, tol, max_widen=8):
    """Grow ``[guess / factor, guess * factor]`` until ``beta(c, .)`` changes sign."""
    lo, hi = guess / factor, guess * factor
    b_lo = boundary_defect(c, lo, delta, tol).beta
    b_hi = boundary_defect(c, hi, delta, tol).beta
    evals = 2
    for _ in range(max_widen):
        if b_lo * b_hi <= 0:
            return (lo, hi), evals
        factor = factor**2
        # move the endpoint on the side the root must lie
        if abs(b_lo) < abs(b_hi):
            lo = guess / factor
            b_lo = boundary_defect(c, lo, delta, tol).beta
        else:
            hi = guess * factor
            b_hi = boundary_defect(c, hi, delta, tol).beta
        evals += 1
    if b_lo * b_hi <= 0:
        return (lo, hi), evals
    raise HardyMFError(f"no sign change of beta(c={c}, .) near lam={guess:.6g}")


def solve_point(
    c: float,
    guess: float | None = None,
    factor: float = 10.0,
    tol: float = DEFAULT_TOL,
    delta: float = DEFAULT_DELTA,
    mesh_spacing: float = DEFAULT_MESH_SPACING,
) -> BranchPoint:
    """Solve for ``lam(c)`` starting from a multiplicative bracket around ``guess``."""
    if guess is None:
        guess = _asymptotic_lambda(c)
    bracket, evals = _bracket(c, guess, factor, delta, tol)
    sol = solve_given_c(c, bracket, tol, delta, mesh_spacing)
    sol.evaluations += evals
    return BranchPoint.from_solution(sol)


def _independent(args):
    c, tol, delta, mesh_spacing = args
    try:
        return solve_point(c, None, 10.0, tol, delta, mesh_spacing)
    except (HardyMFError, ArithmeticError, ValueError) as exc:
        return exc


def trace_branch(
    c_min: float,
    c_max: float,
    n: int,
    mode: str = "sequential",
    jobs: int = 1,
    tol: float = DEFAULT_TOL,
    delta: float = DEFAULT_DELTA,
    mesh_spacing: float = DEFAULT_MESH_SPACING,
    keep_solutions: bool = True,
) -> Branch:
    """Solve on ``n`` equispaced values of ``c`` in ``[c_min, c_max]``.

    ``mode="sequential"`` warm-starts each point from its predecessor;
    ``mode="parallel"`` solves every point independently from the asymptotic
    prediction, on ``jobs`` worker processes.  Failed points are logged and
    skipped; more than 10% failures raise :class:`BranchFailureError`.
    """
    if not (0.0 < c_min < c_max):
        raise DomainError(f"need 0 < c_min < c_max, got {c_min}, {c_max}")
    if int(n) < 2:
        raise DomainError(f"need at least 2 points, got {n}")
    if mode not in ("sequential", "parallel"):
        raise DomainError(f"unknown mode {mode!r}")
    grid = np.linspace(c_min, c_max, int(n))
    points: list[BranchPoint] = []
    failures: list[tuple[float, str]] = []

    if mode == "parallel":
        tasks = [(float(c), tol, delta, mesh_spacing) for c in grid]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_independent, tasks))
        else:
            results = [_independent(t) for t in tasks]
        for c, res in zip(grid, results):
            if isinstance(res, Exception):
                failures.append((float(c), str(res)))
            else:
                points.append(res)
    else:
        prev: BranchPoint | None = None
        for c in grid:
            c = float(c)
            if prev is None:
                guess, factor = _asymptotic_lambda(c), 10.0
            else:
                guess, factor = prev.lam * math.exp(-0.5 * (c - prev.c)), 1.02
            try:
                pt = solve_point(c, guess, factor, tol, delta, mesh_spacing)
            except (HardyMFError, ArithmeticError, ValueError) as exc:
                log.warning("branch point c=%.6g failed: %s", c, exc)
                failures.append((c, str(exc)))
                continue
            points.append(pt)
            prev = pt

    for c, msg in failures:
        log.warning("branch point c=%.6g skipped: %s", c, msg)
    if len(failures) > MAX_FAILURE_FRACTION * len(grid):
        raise BranchFailureError(f"{len(failures)} of {len(grid)} branch points failed")
    if not keep_solutions:
        for p in points:
            p.solution = None
    settings = {
        "c_min": c_min, "c_max": c_max, "n": int(n), "mode": mode,
        "tol": tol, "match_delta": delta, "mesh_spacing": mesh_spacing,
    }
    return Branch(points, settings, failures)


def fit_asymptote(branch: Branch, c_threshold: float = 35.0) -> tuple[float, float, float]:
    """Least-squares line ``c = slope log(lam) + intercept`` over points with ``c >= c_threshold``.

    Returns ``(slope, intercept, max |residual|)``.
    """
    tail = [p for p in branch.points if p.c >= c_threshold]
    if len(tail) < 5:
        raise InsufficientPointsError(f"{len(tail)} points with c >= {c_threshold}; need 5")
    x = np.log([p.lam for p in tail])
    y = np.array([p.c for p in tail])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(intercept), float(np.max(np.abs(resid)))
