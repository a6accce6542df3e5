"""Verification suite for computed radial solutions.

Every check reduces to one-dimensional radial quadrature over a
:class:`~hardy_mf.radial.RadialSolution`.  Exact identities (the two Pohozaev
forms, the weak-form energy, the equation residual) must hold to quadrature
accuracy; blow-up diagnostics (profile error, outer limit, decay envelope)
only converge as ``lam -> 0`` and are judged against empirical tolerances.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .greens import green_origin
from .radial.shooting import solve_given_lambda
from .radial.solution import RadialSolution, disc_integral, hardy_weight

__all__ = [
    "EIGHT_PI",
    "mass",
    "rescaled_profile",
    "bubble",
    "profile_error",
    "outer_error",
    "decay_envelope",
    "weight_laplacian",
    "pohozaev_terms",
    "pohozaev_residual",
    "quadratic_form_P",
    "pohozaev_P_residual",
    "brezis_merle_integral",
    "EnergyResult",
    "energy_onofri",
    "direct_energy",
    "TEST_FUNCTIONS",
    "kernel_residual",
    "uniqueness_scan",
    "CheckResult",
    "VerificationReport",
    "CheckTolerances",
    "verify_solution",
]

EIGHT_PI = 8.0 * math.pi


def _relative(lhs: float, rhs: float) -> float:
    scale = max(abs(lhs), abs(rhs))
    return 0.0 if scale == 0.0 else abs(lhs - rhs) / scale


def mass(sol: RadialSolution) -> float:
    """``lam * int_B e^u dx``, centre series and boundary tail included."""
    return disc_integral(sol, lambda r, u, du: sol.lam * np.exp(u))


# ---------------------------------------------------------------- blow-up profile

def bubble(x):
    """Liouville bubble ``eta0(x) = -2 log(1 + x^2)``."""
    return -2.0 * np.log1p(np.square(x))


def rescaled_profile(sol: RadialSolution, xgrid) -> np.ndarray:
    """``eta(x) = u(r_lambda x) - c`` on ``xgrid``."""
    x = np.asarray(xgrid, dtype=float)
    if x.size and (np.min(x) < 0 or sol.r_lambda * np.max(x) >= sol.r_match):
        raise DomainError(
            f"rescaled grid leaves [0, 1 - delta): max x = {np.max(x):.6g}, "
            f"limit {sol.r_match / sol.r_lambda:.6g}"
        )
    u, _ = sol.evaluate(sol.r_lambda * x)
    return u - sol.c


def profile_error(sol: RadialSolution, R: float, n: int = 4001) -> float:
    """``sup_{0 <= x <= R} |eta - eta0|`` on ``n`` equispaced points."""
    if R < 0:
        raise DomainError("R must be non-negative")
    x = np.linspace(0.0, R, n)
    return float(np.max(np.abs(rescaled_profile(sol, x) - bubble(x))))


def outer_error(
    sol: RadialSolution, r_lo: float = 0.1, r_hi: float = 0.9, scale: float = 1.0, n: int = 2001
) -> float:
    """``sup_{r_lo <= r <= r_hi} |u(r) - 8 pi scale G(r, 0)|``.

    ``scale`` exists for the sensitivity control: with ``scale != 1`` the
    error must stay bounded away from zero along the branch.
    """
    if not (0.0 < r_lo < r_hi <= sol.r_match):
        raise DomainError(f"window [{r_lo}, {r_hi}] must lie in (0, {sol.r_match}]")
    r = np.linspace(r_lo, r_hi, n)
    u, _ = sol.evaluate(r)
    return float(np.max(np.abs(u - EIGHT_PI * scale * green_origin(r))))


def decay_envelope(sol: RadialSolution, eps: float = 1.0, R: float = 5.0, n: int = 4001) -> float:
    """``max_{2R <= |y| <= 1/(2 r_lambda)} eta(y) - (4 - eps) log(1/|y|)``."""
    if not (0.0 < eps < 2.0):
        raise DomainError("eps must lie in (0, 2)")
    y_hi = 0.5 / sol.r_lambda
    if not (0.0 < 2.0 * R < y_hi):
        raise DomainError(f"annulus [{2 * R}, {y_hi:.6g}] is empty")
    y = np.geomspace(2.0 * R, y_hi, n)
    return float(np.max(rescaled_profile(sol, y) + (4.0 - eps) * np.log(y)))


# ---------------------------------------------------------------- Pohozaev identities

def weight_laplacian(rho):
    """``Delta (1/(1 - |x|^2))`` in two dimensions, ``4 (1 + rho^2) / (1 - rho^2)^3``."""
    rho = np.asarray(rho, dtype=float)
    gap = (1.0 - rho) * (1.0 + rho)
    return 4.0 * (1.0 + rho * rho) / gap**3


def pohozaev_terms(sol: RadialSolution, r: float) -> dict:
    """Terms of the Pohozaev identity on ``B_r`` with ``F(u) = lam e^u``.

    ``4 int F = bd_gradient + volume_weight + bd_weight + bd_F``, where

    * ``bd_gradient = int_{dB_r} |grad u|^2 (x . nu)``
    * ``volume_weight = -(1/2) int_{B_r} u^2 Delta(1/(1-|x|^2))``
    * ``bd_weight = (1/2) int_{dB_r} u^2 d_n(1/(1-|x|^2))``
    * ``bd_F = int_{dB_r} F d_n |x|^2``
    """
    if not (0.0 < r <= sol.r_match):
        raise DomainError(f"r must lie in (0, {sol.r_match}], got {r}")
    (u,), (du,) = sol.evaluate(np.array([r]))
    circ = 2.0 * math.pi * r
    lhs = 4.0 * disc_integral(sol, lambda rr, uu, dd: sol.lam * np.exp(uu), r_hi=r)
    return {
        "lhs": lhs,
        "bd_gradient": circ * r * du * du,
        "volume_weight": -0.5 * disc_integral(sol, lambda rr, uu, dd: uu * uu * weight_laplacian(rr), r_hi=r),
        "bd_weight": circ * r * hardy_weight(r) * u * u,
        "bd_F": circ * 2.0 * r * sol.lam * math.exp(u),
    }


def pohozaev_residual(sol: RadialSolution, r: float) -> float:
    """Relative residual ``|LHS - RHS| / |LHS|`` of the Pohozaev identity on ``B_r``."""
    t = pohozaev_terms(sol, r)
    rhs = t["bd_gradient"] + t["volume_weight"] + t["bd_weight"] + t["bd_F"]
    return _relative(t["lhs"], rhs)


def quadratic_form_P(du_at_d: float, dv_at_d: float, d: float) -> float:
    """``P(u, v)`` on ``dB_d`` for radial ``u, v``: ``-2 pi d^2 u'(d) v'(d)``."""
    if not (0.0 < d < 1.0):
        raise DomainError(f"d must lie in (0, 1), got {d}")
    return -2.0 * math.pi * d * d * du_at_d * dv_at_d


def pohozaev_P_residual(sol: RadialSolution, delta_ball: float) -> float:
    """Relative residual of the ``P(u, u)`` form of the Pohozaev identity at ``d = delta_ball r_lambda``.

    ``P(u, u) = d int_{dB_d} u^2 / (1-|x|^2)^2
    - 2 int_{B_d} u^2 (1+|x|^2) / (1-|x|^2)^3
    + 2 lam d int_{dB_d} e^u - 4 lam int_{B_d} e^u``.
    """
    d = delta_ball * sol.r_lambda
    if not (0.0 < d <= sol.r_match):
        raise DomainError(f"radius {d:.6g} outside (0, {sol.r_match}]")
    (u,), (du,) = sol.evaluate(np.array([d]))
    circ = 2.0 * math.pi * d
    lhs = quadratic_form_P(du, du, d)
    vol_w = disc_integral(
        sol, lambda rr, uu, dd: uu * uu * (1.0 + rr * rr) * hardy_weight(rr) / ((1.0 - rr) * (1.0 + rr)),
        r_hi=d,
    )
    vol_f = disc_integral(sol, lambda rr, uu, dd: sol.lam * np.exp(uu), r_hi=d)
    rhs = (
        d * circ * hardy_weight(d) * u * u
        - 2.0 * vol_w
        + 2.0 * sol.lam * d * circ * math.exp(u)
        - 4.0 * vol_f
    )
    return _relative(lhs, rhs)


# ---------------------------------------------------------------- integrals and energy

def brezis_merle_integral(sol: RadialSolution, delta_bm: float, norm: float | None = None) -> float:
    """``int_B exp((4 pi - delta_bm) u / ||f||_1) dx`` with ``f = lam e^u``.

    ``norm`` overrides ``||f||_1`` (defaults to the solution mass).
    """
    if not (0.0 < delta_bm < 4.0 * math.pi):
        raise DomainError("delta_bm must lie in (0, 4 pi)")
    m = mass(sol) if norm is None else float(norm)
    if not m > 0:
        raise DomainError("the L1 norm of lam e^u must be positive")
    k = (4.0 * math.pi - delta_bm) / m
    return disc_integral(sol, lambda r, u, du: np.exp(k * u))


def _phi_quadratic(r):
    return (1.0 - r) * (1.0 + r), -2.0 * r


def _phi_quartic(r):
    g = (1.0 - r) * (1.0 + r)
    return g * g, -4.0 * r * g


def _phi_cosine(r):
    g = (1.0 - r) * (1.0 + r)
    c, s = np.cos(0.5 * math.pi * r), np.sin(0.5 * math.pi * r)
    return g * c, -2.0 * r * c - 0.5 * math.pi * g * s


#: Radial test functions vanishing at ``r = 1``, as ``r -> (phi, phi')``.
TEST_FUNCTIONS: dict[str, Callable] = {
    "1-r^2": _phi_quadratic,
    "(1-r^2)^2": _phi_quartic,
    "(1-r^2)cos(pi r/2)": _phi_cosine,
}


@dataclass(frozen=True)
class EnergyResult:
    """Quadratic-form energy, the mean field functional, and its criticality."""

    quad_energy: float
    functional: float
    criticality: float


def energy_onofri(sol: RadialSolution) -> EnergyResult:
    """Energy ``Q(u) = lam int e^u u`` (weak form), ``J(u) = Q/16pi - log int e^u``, criticality.

    Criticality is the largest of
    ``|<-Delta u - u/(1-|x|^2)^2 - rho e^u / int e^u, phi>| / ||grad phi||_2``
    over :data:`TEST_FUNCTIONS`, with ``rho`` the mass (so
    ``rho e^u / int e^u = lam e^u``).
    """
    q = disc_integral(sol, lambda r, u, du: sol.lam * np.exp(u) * u)
    functional = q / (16.0 * math.pi) - math.log(disc_integral(sol, lambda r, u, du: np.exp(u)))
    crit = 0.0
    for phi in TEST_FUNCTIONS.values():
        def pairing(r, u, du, phi=phi):
            p, dp = phi(r)
            return du * dp - hardy_weight(r) * u * p - sol.lam * np.exp(u) * p

        seminorm = math.sqrt(disc_integral(sol, lambda r, u, du, phi=phi: phi(r)[1] ** 2))
        crit = max(crit, abs(disc_integral(sol, pairing)) / seminorm)
    return EnergyResult(q, functional, crit)


def direct_energy(sol: RadialSolution) -> float:
    """Quadratic-form energy from the pointwise integrand ``|grad u|^2 - u^2/(1-|x|^2)^2``.

    The combined integrand is integrable, but integration by parts leaves the
    boundary flux ``lim 2 pi r u u' = -pi alpha^2`` of the admissible branch
    ``u ~ alpha sqrt(1 - r)``.  Adding it back gives the form energy, which
    must match the weak-form value of :func:`energy_onofri`.
    """
    naive = disc_integral(sol, lambda r, u, du: du * du - hardy_weight(r) * u * u)
    return naive + math.pi * sol.frame.alpha**2


def kernel_residual(grid, amplitude: float = 1.0) -> float:
    """Max residual of ``-Delta v = 8 e^{eta0} v`` for ``v = amplitude (1-r^2)/(1+r^2)``.

    ``v' = -4 r / (1+r^2)^2`` and ``v'' = (12 r^2 - 4) / (1+r^2)^3``;
    ``Delta v = v'' + v'/r`` with ``v'/r = -4/(1+r^2)^2`` (finite at 0).
    """
    r = np.asarray(grid, dtype=float)
    q = 1.0 + r * r
    v = amplitude * (1.0 - r * r) / q
    d2 = amplitude * (12.0 * r * r - 4.0) / q**3
    d1_over_r = amplitude * -4.0 / q**2
    lap = d2 + d1_over_r
    rhs = 8.0 * np.exp(bubble(r)) * v
    return float(np.max(np.abs(-lap - rhs))) if r.size else 0.0


def uniqueness_scan(
    lambda_grid: Sequence[float],
    c_window: tuple[float, float] = (5.0, 60.0),
    mass_window: tuple[float, float] = (4.0 * math.pi, 12.0 * math.pi),
    n_scan: int = 111,
    **solver_kwargs,
) -> list[tuple[float, int]]:
    """Number of admissible solutions for each ``lam``; ``-1`` marks a failed scan."""
    out = []
    for lam in lambda_grid:
        try:
            count = len(solve_given_lambda(lam, c_window, mass_window, n_scan, **solver_kwargs))
        except Exception:  # noqa: BLE001 - recorded, by contract
            count = -1
        out.append((float(lam), count))
    return out


# ---------------------------------------------------------------- report

@dataclass(frozen=True)
class CheckResult:
    value: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class CheckTolerances:
    """Tolerances of the per-solution report.

    ``identity`` applies to the exact identities; the blow-up diagnostics use
    the empirical ``profile`` and ``outer`` bounds, which are meaningful on
    the concentrating branch (``c`` of about 30 and above).
    """

    ode_residual: float = 1e-6
    consistency: float = 1e-10
    defect: float = 1e-9
    identity: float = 1e-6
    criticality: float = 1e-6
    kernel: float = 1e-12
    profile: float = 0.05
    outer: float = 0.05
    envelope_spread: float = 0.5
    mass_window: tuple[float, float] = (4.0 * math.pi, 12.0 * math.pi)


@dataclass
class VerificationReport:
    """Named checks for one solution, with the tolerances used."""

    lam: float
    c: float
    checks: dict[str, CheckResult] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def add(self, name: str, value: float, tolerance: float, passed: bool | None = None):
        if name in self.checks:
            raise ValueError(f"duplicate check {name!r}")
        if passed is None:
            passed = bool(np.isfinite(value) and value <= tolerance)
        self.checks[name] = CheckResult(float(value), float(tolerance), bool(passed))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "c": self.c,
            "passed": self.passed,
            "checks": {k: asdict(v) for k, v in self.checks.items()},
            "config": self.config,
        }


def _bubble_envelope(eps: float = 1.0, R: float = 5.0) -> float:
    # eta0(y) + (4 - eps) log y decreases for y > 1, so the max sits at 2R
    y = 2.0 * R
    return float(bubble(y) + (4.0 - eps) * math.log(y))


def verify_solution(sol: RadialSolution, tol: CheckTolerances = CheckTolerances()) -> VerificationReport:
    """Run every per-solution check."""
    rep = VerificationReport(sol.lam, sol.c, config=asdict(tol))
    u, du = sol.u, sol.du
    rep.add("ode_residual", float(np.nanmax(sol.ode_residual())), tol.ode_residual)
    rep.add("ode_consistency", float(np.max(sol.consistency_residual())), tol.consistency)
    rep.add(
        "positive_decreasing",
        float(np.min(u)),
        0.0,
        passed=bool(np.min(u) > 0 and np.all(np.diff(u) < 0) and np.all(du <= 0)),
    )
    frame = sol.frame
    rep.add("defect", abs(frame.beta) / abs(frame.alpha), tol.defect)
    m = mass(sol)
    rep.add("mass", m, tol.mass_window[1], passed=tol.mass_window[0] < m < tol.mass_window[1])
    rep.add(
        "pohozaev",
        max(pohozaev_residual(sol, r) for r in (0.25, 0.5, 0.75) if r <= sol.r_match),
        tol.identity,
    )
    balls = [b for b in (1.0, 5.0, 20.0) if b * sol.r_lambda <= sol.r_match]
    rep.add("pohozaev_P", max((pohozaev_P_residual(sol, b) for b in balls), default=0.0), tol.identity)
    energy = energy_onofri(sol)
    rep.add("energy_positive", energy.quad_energy, 0.0, passed=energy.quad_energy > 0)
    rep.add("energy_criticality", energy.criticality, tol.criticality)
    rep.add("energy_identity", _relative(energy.quad_energy, direct_energy(sol)), tol.identity)
    bm = brezis_merle_integral(sol, math.pi)
    rep.add("brezis_merle", bm, math.inf, passed=bool(np.isfinite(bm) and bm > 0))
    rep.add("kernel_residual", kernel_residual(np.linspace(0.0, 10.0, 1001)), tol.kernel)
    if 10.0 * sol.r_lambda < sol.r_match:
        rep.add("profile_error", profile_error(sol, 10.0), tol.profile)
    else:
        rep.add("profile_error", math.nan, tol.profile, passed=False)
    rep.add("outer_error", outer_error(sol, 0.1, min(0.9, sol.r_match)), tol.outer)
    try:
        env = decay_envelope(sol, 1.0, 5.0)
    except DomainError:
        env = math.nan
    rep.add("decay_envelope", abs(env - _bubble_envelope()), tol.envelope_spread)
    return rep
