"""Branch-level diagnostics: the convergence laws checked along a traced branch."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .analysis import (
    EIGHT_PI,
    VerificationReport,
    decay_envelope,
    outer_error,
    pohozaev_P_residual,
    profile_error,
)
from .continuation import Branch, fit_asymptote
from .errors import DomainError
from .greens import ASYMPTOTE_INTERCEPT

__all__ = ["BranchThresholds", "branch_report", "strictly_decreasing"]


@dataclass(frozen=True)
class BranchThresholds:
    """Parameters of :func:`branch_report`.

    ``identity_tol`` bounds exact identities; the other tolerances are
    empirical and come from the convergence study of the traced branch.
    """

    fit_c_threshold: float = 35.0
    slope_tol: float = 0.02
    intercept_tol: float = 0.05
    mass_c_min: float = 40.0
    mass_rel_tol: float = 0.05
    monotone_from: float = 35.0
    profile_R: float = 10.0
    deepest_tol: float = 0.05
    envelope_c_range: tuple[float, float] = (30.0, 60.0)
    envelope_spread: float = 0.5
    identity_tol: float = 1e-6
    scale_c_min: float = 30.0
    scale_final: float = 1e-6
    max_evaluations: int = 30


def strictly_decreasing(values) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(v.size >= 2 and np.all(np.diff(v) < 0))


def _tail_from(branch: Branch, c0: float):
    """Points from the first grid value at or beyond ``c0`` onward."""
    return [p for p in branch.points if p.c >= c0 - 1e-9]


def branch_report(branch: Branch, t: BranchThresholds = BranchThresholds()) -> VerificationReport:
    """Evaluate the branch-level laws; requires points that carry their solutions."""
    if not branch.points or any(p.solution is None for p in branch.points):
        raise DomainError("branch_report needs branch points with attached solutions")
    deepest = branch.points[-1]
    rep = VerificationReport(
        deepest.lam,
        deepest.c,
        config={**asdict(t), **branch.settings},
    )
    c = branch.column("c")
    lam = branch.column("lam")

    slope, intercept, resid = fit_asymptote(branch, t.fit_c_threshold)
    rep.add("fit_slope", abs(slope + 2.0), t.slope_tol)
    rep.add("fit_intercept", abs(intercept - ASYMPTOTE_INTERCEPT), t.intercept_tol)
    rep.add("lambda_decreasing", float(np.max(np.diff(lam))), 0.0, passed=strictly_decreasing(lam))

    mass_err = np.abs(branch.column("mass") - EIGHT_PI)
    deep = c >= t.mass_c_min - 1e-9
    rep.add("mass_within_5pct", float(np.max(mass_err[deep]) / EIGHT_PI), t.mass_rel_tol)
    at40 = branch.at(t.mass_c_min)
    rep.add(
        "mass_improves",
        abs(deepest.mass - EIGHT_PI),
        abs(at40.mass - EIGHT_PI),
        passed=abs(deepest.mass - EIGHT_PI) < abs(at40.mass - EIGHT_PI),
    )

    tail = _tail_from(branch, t.monotone_from)
    prof = [profile_error(p.solution, t.profile_R) for p in tail]
    outer = [outer_error(p.solution, 0.1, 0.9) for p in tail]
    rep.add("profile_decreasing", float(np.max(np.diff(prof))), 0.0, passed=strictly_decreasing(prof))
    rep.add("profile_deepest", prof[-1], t.deepest_tol)
    rep.add("outer_decreasing", float(np.max(np.diff(outer))), 0.0, passed=strictly_decreasing(outer))
    rep.add("outer_deepest", outer[-1], t.deepest_tol)

    lo, hi = t.envelope_c_range
    env = [decay_envelope(p.solution, 1.0, 5.0) for p in branch.points if lo - 1e-9 <= p.c <= hi + 1e-9]
    rep.add("envelope_spread", float(np.ptp(env)) if env else math.nan, t.envelope_spread)

    rep.add("pohozaev_max", float(np.max(branch.column("pohozaev_residual"))), t.identity_tol)
    rep.add(
        "pohozaev_P_max",
        max(pohozaev_P_residual(p.solution, b) for p in branch.points for b in (1.0, 5.0, 20.0)),
        t.identity_tol,
    )

    scale = branch.column("r_lambda") ** 2 * c
    sel = scale[c >= t.scale_c_min - 1e-9]
    rep.add("scale_decreasing", float(np.max(np.diff(sel))) if sel.size > 1 else math.nan, 0.0,
            passed=strictly_decreasing(sel))
    rep.add("scale_final", float(scale[-1]), t.scale_final)
    rep.add(
        "warm_start_evaluations",
        float(max((p.evaluations for p in branch.points[1:]), default=0)),
        t.max_evaluations,
    )
    return rep
