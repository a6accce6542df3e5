"""Computed radial solutions and quadrature over the disc.

A :class:`RadialSolution` stores ``u`` and ``du/dr`` on a mesh that is
uniform in ``xi = log(r / (1 - r))``.  That variable is geometric near both
the centre (resolving the blow-up core) and the circle (resolving the
``sqrt(1 - r)`` boundary layer), so central differences on the mesh are
second-order accurate everywhere.

Three pieces together cover ``[0, 1]``:

* ``[0, r0]``: the regular-centre Taylor series;
* ``[r0, 1 - delta]``: quintic Hermite interpolation of the mesh data, with
  second derivatives taken from the equation itself;
* ``[1 - delta, 1]``: the admissible Frobenius branch ``alpha w1 + up``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import DomainError
from .frobenius import BoundaryFrame, fit_frame, frobenius_series
from .hermite import QuinticHermite

__all__ = ["RadialSolution", "hardy_weight", "taylor_coefficients", "disc_integral"]

_CORE_NODES, _CORE_WEIGHTS = np.polynomial.legendre.leggauss(12)
_MESH_NODES, _MESH_WEIGHTS = np.polynomial.legendre.leggauss(6)
_TAIL_NODES, _TAIL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def hardy_weight(r):
    """``1 / (1 - r^2)^2``."""
    gap = (1.0 - r) * (1.0 + r)
    return 1.0 / (gap * gap)


def taylor_coefficients(c: float, lam: float) -> tuple[float, float]:
    """``(a2, a4)`` in ``u = c + a2 r^2 + a4 r^4 + O(r^6)``.

    From ``Delta r^k = k^2 r^(k-2)`` and ``1/(1-r^2)^2 = 1 + 2 r^2 + ...``:
    ``4 a2 = -(c + lam e^c)`` and ``16 a4 = -(2 c + a2 (1 + lam e^c))``.
    """
    f0 = lam * math.exp(c)
    a2 = -(c + f0) / 4.0
    a4 = -(2.0 * c + a2 * (1.0 + f0)) / 16.0
    return a2, a4


def second_derivative(r, u, du, lam):
    """``u''`` implied by the equation at ``(r, u, u')``."""
    return -du / r - hardy_weight(r) * u - lam * np.exp(u)


@dataclass
class RadialSolution:
    """A radial solution ``u(r)`` with ``u(0) = c``.

    Attributes
    ----------
    lam, c : float
        Equation parameter and central value.
    mesh, u, du : ndarray
        Radii in ``(0, 1 - match_delta]`` and the solution and its derivative.
    defect : float
        Log-branch coefficient ``beta`` at ``r = 1 - match_delta``.
    mass : float
        ``lam * int_B e^u dx``.
    match_delta : float
        Distance from the circle at which the boundary frame is fitted.
    """

    lam: float
    c: float
    mesh: np.ndarray
    u: np.ndarray
    du: np.ndarray
    defect: float = float("nan")
    mass: float = float("nan")
    match_delta: float = 1e-3
    evaluations: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        self.mesh = np.asarray(self.mesh, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.du = np.asarray(self.du, dtype=float)
        if not (self.mesh.shape == self.u.shape == self.du.shape) or self.mesh.size < 3:
            raise DomainError("mesh, u and du must be equal-length arrays of >= 3 points")
        if not (self.mesh[0] > 0 and self.mesh[-1] < 1 and np.all(np.diff(self.mesh) > 0)):
            raise DomainError("mesh must be strictly increasing inside (0, 1)")

    @property
    def r_lambda(self) -> float:
        """Blow-up scale ``2 sqrt(2) (lam e^c)^(-1/2)``."""
        return 2.0 * math.sqrt(2.0) * math.exp(-0.5 * (math.log(self.lam) + self.c))

    @property
    def r0(self) -> float:
        return float(self.mesh[0])

    @property
    def r_match(self) -> float:
        return float(self.mesh[-1])

    @cached_property
    def frame(self) -> BoundaryFrame:
        return fit_frame(self.lam, self.match_delta, float(self.u[-1]), float(self.du[-1]))

    @cached_property
    def _xi_interp(self) -> QuinticHermite:
        r = self.mesh
        g = r * (1.0 - r)
        u_r = self.du
        u_rr = second_derivative(r, self.u, u_r, self.lam)
        xi = np.log(r) - np.log1p(-r)
        return QuinticHermite(xi, self.u, g * u_r, g * g * u_rr + (1.0 - 2.0 * r) * g * u_r)

    def _xi(self) -> np.ndarray:
        return np.log(self.mesh) - np.log1p(-self.mesh)

    def ode_residual(self) -> np.ndarray:
        """Pointwise residual of the equation at interior mesh points, over ``lam e^c``.

        ``u''`` is recovered by differencing the stored ``v = r (1 - r) u'``
        (that is, ``du/dxi``) across neighbouring mesh points.  On a mesh
        uniform in ``xi`` the fourth-order central stencil is used and the
        two points at each end are skipped; otherwise the three-point
        non-uniform formula.  Entries not covered by the stencil are NaN.
        """
        r, u, du = self.mesh, self.u, self.du
        xi = self._xi()
        g = r * (1.0 - r)
        v = g * du
        n = r.size
        dv = np.full(n, np.nan)
        h = (xi[-1] - xi[0]) / (n - 1)
        uniform = n >= 5 and np.allclose(np.diff(xi), h, rtol=1e-8, atol=0.0)
        if uniform:
            dv[2:-2] = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
        else:
            h1 = xi[1:-1] - xi[:-2]
            h2 = xi[2:] - xi[1:-1]
            dv[1:-1] = (h1 * h1 * (v[2:] - v[1:-1]) + h2 * h2 * (v[1:-1] - v[:-2])) / (
                h1 * h2 * (h1 + h2)
            )
        u_rr = (dv - (1.0 - 2.0 * r) * v) / (g * g)
        res = u_rr + du / r + hardy_weight(r) * u + self.lam * np.exp(u)
        return np.abs(res) / (self.lam * math.exp(self.c))

    def consistency_residual(self) -> np.ndarray:
        """``|u[i+1] - u[i] - int u' dr|`` for every mesh cell.

        The integral of ``du/dxi`` over a cell uses the two-point Hermite rule
        with end slopes from the equation, which is fifth-order accurate.
        This ties the stored ``u`` to the stored ``u'`` and catches edits of
        ``u`` alone, which barely move :meth:`ode_residual`.
        """
        r, u, du = self.mesh, self.u, self.du
        g = r * (1.0 - r)
        v = g * du
        vx = g * g * second_derivative(r, u, du, self.lam) + (1.0 - 2.0 * r) * v
        h = np.diff(self._xi())
        integral = 0.5 * h * (v[1:] + v[:-1]) + h * h / 12.0 * (vx[:-1] - vx[1:])
        return np.abs(np.diff(u) - integral)

    def evaluate(self, r):
        """``(u(r), u'(r))`` for any ``r`` in ``[0, 1]``."""
        r = np.asarray(r, dtype=float)
        if np.any((r < 0) | (r > 1)):
            raise DomainError("evaluate requires 0 <= r <= 1")
        u = np.empty_like(r)
        du = np.empty_like(r)
        core = r < self.r0
        tail = r > self.r_match
        mid = ~(core | tail)
        if np.any(core):
            a2, a4 = taylor_coefficients(self.c, self.lam)
            rc = r[core]
            u[core] = self.c + a2 * rc**2 + a4 * rc**4
            du[core] = 2.0 * a2 * rc + 4.0 * a4 * rc**3
        if np.any(mid):
            rm = r[mid]
            xi = np.log(rm) - np.log1p(-rm)
            u[mid] = self._xi_interp(xi)
            du[mid] = self._xi_interp(xi, nu=1) / (rm * (1.0 - rm))
        if np.any(tail):
            s = 1.0 - r[tail]
            with np.errstate(divide="ignore", invalid="ignore"):
                ut, dut = frobenius_series(self.lam).admissible(self.frame.alpha, s)
            u[tail] = ut
            du[tail] = np.where(s > 0, dut, -np.inf)
        return u, du


def disc_integral(sol: RadialSolution, f, r_hi: float = 1.0) -> float:
    """``int_{|x| < r_hi} f(r, u(r), u'(r)) dx`` for a radial integrand.

    ``f`` must be vectorised.  Each mesh cell is integrated with 6-point
    Gauss-Legendre in ``xi``; the centre and the Frobenius tail get their own
    Gauss rules (the tail in ``t = sqrt(1 - r)``, which makes the
    ``sqrt(1 - r)`` behaviour polynomial).
    """
    if not (0.0 < r_hi <= 1.0):
        raise DomainError(f"r_hi must lie in (0, 1], got {r_hi}")
    total = 0.0
    r0 = sol.r0
    # centre
    hi = min(r_hi, r0)
    rc = 0.5 * hi * (1.0 + _CORE_NODES)
    a2, a4 = taylor_coefficients(sol.c, sol.lam)
    uc = sol.c + a2 * rc**2 + a4 * rc**4
    duc = 2.0 * a2 * rc + 4.0 * a4 * rc**3
    total += 0.5 * hi * np.dot(_CORE_WEIGHTS, f(rc, uc, duc) * rc)
    if r_hi <= r0:
        return 2.0 * math.pi * total
    # mesh cells, the last one possibly truncated at r_hi
    interp = sol._xi_interp
    xi_knots = interp.x
    xi_hi = math.log(min(r_hi, sol.r_match)) - math.log1p(-min(r_hi, sol.r_match))
    k = int(np.searchsorted(xi_knots, xi_hi, side="left"))
    lo = xi_knots[:k]
    hi_ = np.append(xi_knots[1:k], xi_hi)
    keep = hi_ > lo
    lo, hi_ = lo[keep], hi_[keep]
    half = 0.5 * (hi_ - lo)
    xi = (0.5 * (lo + hi_))[:, None] + half[:, None] * _MESH_NODES[None, :]
    rm = 1.0 / (1.0 + np.exp(-xi))
    um = interp(xi)
    dum = interp(xi, nu=1) / (rm * (1.0 - rm))
    jac = rm * rm * (1.0 - rm)          # r dr/dxi
    total += float(np.sum(half * ((f(rm, um, dum) * jac) @ _MESH_WEIGHTS)))
    if r_hi <= sol.r_match:
        return 2.0 * math.pi * total
    # Frobenius tail, t = sqrt(s), s in [1 - r_hi, delta]
    t_lo = math.sqrt(max(1.0 - r_hi, 0.0))
    t_hi = math.sqrt(1.0 - sol.r_match)
    half_t = 0.5 * (t_hi - t_lo)
    t = 0.5 * (t_hi + t_lo) + half_t * _TAIL_NODES
    s = t * t
    rt = 1.0 - s
    ut, dut = frobenius_series(sol.lam).admissible(sol.frame.alpha, s)
    total += half_t * float(np.dot(_TAIL_WEIGHTS, f(rt, ut, dut) * rt * 2.0 * t))
    return 2.0 * math.pi * total
