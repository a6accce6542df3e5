"""Shooting for radial solutions of ``-Delta u - u/(1-|x|^2)^2 = lam e^u``.

A radial solution is determined by ``(c, lam)`` with ``c = u(0)``.  Starting
from the centre series, the equation is integrated out to ``r = 1 - delta``
and the state there is split into the two boundary branches.  The solution
is admissible when the log branch vanishes, ``beta(c, lam) = 0``; shooting
root-finds that condition in ``lam`` (fixed ``c``) or in ``c`` (fixed ``lam``).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ..errors import DomainError, IntegrationError, NoSignChangeError
from .frobenius import BoundaryFrame, fit_frame
from .hermite import QuinticHermite
from .integrator import STATUS_MAXSTEPS, STATUS_OK, STATUS_OVERFLOW, dopri_path
from .solution import RadialSolution, disc_integral, hardy_weight, taylor_coefficients

__all__ = [
    "RadialPath",
    "taylor_start",
    "start_radius",
    "integrate",
    "boundary_defect",
    "build_solution",
    "solve_given_c",
    "solve_given_lambda",
    "DEFAULT_TOL",
    "DEFAULT_DELTA",
    "DEFAULT_MESH_SPACING",
    "OVERFLOW_GUARD",
]

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-13
DEFAULT_DELTA = 1e-3
DEFAULT_MESH_SPACING = 2e-3
OVERFLOW_GUARD = 1e300
_MAX_STEPS = 500_000


def _scale_radius(c: float, lam: float) -> float:
    if lam <= 0:
        return math.inf
    return 2.0 * math.sqrt(2.0) * math.exp(-0.5 * (math.log(lam) + c))


def start_radius(c: float, lam: float) -> float:
    """Largest admissible starting radius ``1e-3 min(1, r_scale)``."""
    return 1e-3 * min(1.0, _scale_radius(c, lam))


def taylor_start(c: float, lam: float, r0: float) -> tuple[float, float]:
    """``(u(r0), u'(r0))`` from the regular-centre series through ``r^4``."""
    if lam < 0:
        raise DomainError("lam must be non-negative")
    if not (0.0 < r0 <= start_radius(c, lam) * (1 + 1e-12)):
        raise DomainError(f"r0={r0} violates 0 < r0 <= 1e-3 min(1, r_scale)")
    a2, a4 = taylor_coefficients(c, lam)
    r2 = r0 * r0
    return c + a2 * r2 + a4 * r2 * r2, 2.0 * a2 * r0 + 4.0 * a4 * r2 * r0


def _check_params(c: float, lam: float):
    if not (math.isfinite(c) and math.isfinite(lam)) or lam < 0:
        raise DomainError(f"invalid parameters c={c}, lam={lam}")
    if lam > 0 and math.log(lam) + c > math.log(OVERFLOW_GUARD):
        raise DomainError(f"lam e^c exceeds {OVERFLOW_GUARD:g} (c={c}, lam={lam})")


@dataclass
class RadialPath:
    """Accepted integrator states ``(r, u, u')`` of one shot."""

    c: float
    lam: float
    tau: np.ndarray
    u: np.ndarray
    p: np.ndarray

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.tau)

    @property
    def du(self) -> np.ndarray:
        return self.p / self.r

    def resample(self, r_new):
        """``(u, u')`` at new radii inside the path, by quintic Hermite in ``tau``.

        ``u`` and ``p = r u'`` are interpolated separately, each with its
        first two ``tau``-derivatives taken from the equation.  Near the
        centre ``p`` is many orders of magnitude smaller than ``u``, so
        differentiating the ``u`` interpolant would leave rounding noise of
        size ``eps * c / step`` in ``u'``.
        """
        r = self.r
        r2 = r * r
        w = hardy_weight(r)
        f = self.lam * np.exp(self.u)
        dp = -r2 * (w * self.u + f)
        # d/dtau of r^2 w = 2 r^2 w (1 + r^2) / (1 - r^2)
        dw = 4.0 * r2 * w / ((1.0 - r) * (1.0 + r))
        ddp = 2.0 * dp - r2 * (w * self.p + dw * self.u + f * self.p)
        interp_u = QuinticHermite(self.tau, self.u, self.p, dp)
        interp_p = QuinticHermite(self.tau, self.p, dp, ddp)
        r_new = np.asarray(r_new, dtype=float)
        tau_new = np.log(r_new)
        return interp_u(tau_new), interp_p(tau_new) / r_new

def integrate(c: float, lam: float, r_end: float, tol: float = DEFAULT_TOL) -> RadialPath:
    """Integrate from the centre to ``r_end`` with mixed tolerance ``tol``."""
    _check_params(c, lam)
    if not (0.0 < r_end <= 1.0 - 1e-6):
        raise DomainError(f"r_end must lie in (0, 1 - 1e-6], got {r_end}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    r0 = start_radius(c, lam)
    if r_end <= r0:
        raise DomainError("r_end lies inside the Taylor start region")
    u0, du0 = taylor_start(c, lam, r0)
    tau, u, p, status = dopri_path(
        math.log(r0), u0, r0 * du0, math.log(r_end), float(lam), tol, tol, _MAX_STEPS
    )
    if status != STATUS_OK:
        last_r = float(np.exp(tau[-1]))
        reason = {
            STATUS_OVERFLOW: "solution overflow",
            STATUS_MAXSTEPS: "step budget exhausted",
        }.get(status, "step size underflow")
        raise IntegrationError(f"{reason} at r={last_r:.6g} (c={c}, lam={lam})", last_r)
    return RadialPath(float(c), float(lam), tau, u, p)


def boundary_defect(
    c: float, lam: float, delta: float = DEFAULT_DELTA, tol: float = DEFAULT_TOL
) -> BoundaryFrame:
    """Shoot to ``r = 1 - delta`` and return the boundary frame there."""
    if not (1e-5 <= delta <= 0.05):
        raise DomainError(f"delta must lie in [1e-5, 0.05], got {delta}")
    path = integrate(c, lam, 1.0 - delta, tol)
    return fit_frame(lam, delta, float(path.u[-1]), float(path.p[-1] / math.exp(path.tau[-1])))


def _xi_mesh(r0: float, r1: float, spacing: float) -> np.ndarray:
    xi0 = math.log(r0) - math.log1p(-r0)
    xi1 = math.log(r1) - math.log1p(-r1)
    n = max(int(math.ceil((xi1 - xi0) / spacing)), 2) + 1
    xi = np.linspace(xi0, xi1, n)
    mesh = 1.0 / (1.0 + np.exp(-xi))
    mesh[0], mesh[-1] = r0, r1
    return mesh


def build_solution(
    c: float,
    lam: float,
    delta: float = DEFAULT_DELTA,
    tol: float = DEFAULT_TOL,
    mesh_spacing: float = DEFAULT_MESH_SPACING,
    evaluations: int = 0,
) -> RadialSolution:
    """Integrate once more at ``(c, lam)`` and package the result."""
    r_end = 1.0 - delta
    path = integrate(c, lam, r_end, tol)
    mesh = _xi_mesh(float(np.exp(path.tau[0])), float(np.exp(path.tau[-1])), mesh_spacing)
    u, du = path.resample(mesh)
    u[0], du[0] = path.u[0], path.du[0]
    u[-1], du[-1] = path.u[-1], path.du[-1]
    sol = RadialSolution(
        lam=float(lam), c=float(c), mesh=mesh, u=u, du=du, match_delta=float(delta),
        evaluations=evaluations,
    )
    sol.defect = sol.frame.beta
    sol.mass = disc_integral(sol, lambda r, uu, dd: sol.lam * np.exp(uu))
    return sol


def solve_given_c(
    c: float,
    lambda_bracket: tuple[float, float],
    tol: float = DEFAULT_TOL,
    delta: float = DEFAULT_DELTA,
    mesh_spacing: float = DEFAULT_MESH_SPACING,
    xtol: float = 1e-14,
) -> RadialSolution:
    """Find ``lam`` in the bracket with ``beta(c, lam) = 0``.

    Brent's method runs on ``log(lam)``; ``xtol`` is therefore a relative
    tolerance on ``lam``.
    """
    if not c > 0:
        raise DomainError(f"c must be positive, got {c}")
    lo, hi = sorted(float(v) for v in lambda_bracket)
    if not lo > 0:
        raise DomainError("lambda bracket must be positive")
    count = 0

    def beta(log_lam):
        nonlocal count
        count += 1
        return boundary_defect(c, math.exp(log_lam), delta, tol).beta

    b_lo, b_hi = beta(math.log(lo)), beta(math.log(hi))
    if b_lo == 0.0:
        root = math.log(lo)
    elif b_hi == 0.0:
        root = math.log(hi)
    elif np.sign(b_lo) == np.sign(b_hi):
        raise NoSignChangeError(f"beta(c={c}, .) has no sign change on [{lo:.6g}, {hi:.6g}]")
    else:
        root = brentq(beta, math.log(lo), math.log(hi), xtol=xtol, rtol=1e-15, maxiter=200)
    return build_solution(c, math.exp(root), delta, tol, mesh_spacing, evaluations=count)


def solve_given_lambda(
    lam: float,
    c_window: tuple[float, float] = (5.0, 60.0),
    mass_window: tuple[float, float] = (4.0 * math.pi, 12.0 * math.pi),
    n_scan: int = 111,
    tol: float = DEFAULT_TOL,
    delta: float = DEFAULT_DELTA,
    mesh_spacing: float = DEFAULT_MESH_SPACING,
) -> list[RadialSolution]:
    """All admissible solutions with ``c`` in ``c_window`` and mass in ``mass_window``.

    ``beta(., lam)`` is sampled on ``n_scan`` equispaced values of ``c``;
    each sign change is refined with Brent's method.  Returns an empty list
    when nothing qualifies.
    """
    if not lam > 0:
        raise DomainError("lam must be positive")
    c_lo, c_hi = float(c_window[0]), float(c_window[1])
    if not (0.0 < c_lo < c_hi):
        raise DomainError(f"invalid c_window {c_window}")
    c_cap = math.log(OVERFLOW_GUARD) - math.log(lam)
    c_hi = min(c_hi, c_cap)
    if c_hi <= c_lo or n_scan < 2:
        return []
    grid = np.linspace(c_lo, c_hi, int(n_scan))

    def beta(c):
        return boundary_defect(c, lam, delta, tol).beta

    values = np.array([beta(c) for c in grid])
    roots = []
    for i in range(len(grid) - 1):
        b0, b1 = values[i], values[i + 1]
        if b0 == 0.0:
            roots.append(grid[i])
        elif b0 * b1 < 0:
            roots.append(brentq(beta, grid[i], grid[i + 1], xtol=1e-13, rtol=1e-15))
    if values[-1] == 0.0:
        roots.append(grid[-1])
    out: list[RadialSolution] = []
    for c in sorted(roots):
        if out and abs(c - out[-1].c) <= 1e-8:
            continue
        sol = build_solution(c, lam, delta, tol, mesh_spacing)
        if mass_window[0] < sol.mass < mass_window[1]:
            out.append(sol)
        else:
            log.debug("root c=%.6g rejected: mass %.6g outside window", c, sol.mass)
    return out
