"""Green's function of ``-Delta - 1/(1-|x|^2)^2`` on the unit disc.

In hyperbolic terms this is the Green's function of ``-Delta_B - 1/4`` and
depends on the geodesic distance only:

    G(x, y) = phi(1/2, sinh^2(rho(x, y)/2)),
    phi(s, u) = (1/4pi) int_0^1 t^(s-1) (1-t)^(s-1) (t+u)^(-s) dt.

Two independent evaluation routes are provided.  :func:`phi` integrates the
representation numerically; :func:`green_fast` uses the closed form
``sech(rho/2) K(sech(rho/2)) / (2 pi)`` with ``K`` obtained from the
arithmetic-geometric mean.  The regular part ``C(y) = G(y, 0) + log|y|/(2pi)``
and its value at the origin feed the asymptotic law for ``c_lambda``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, SingularArgumentError, ToleranceNotMetError
from .geometry import DiscPoint, sinh_half_distance

__all__ = [
    "QuadratureSpec",
    "phi",
    "green",
    "green_fast",
    "green_origin",
    "regular_part",
    "regular_part_extrapolated",
    "REGULAR_PART_AT_ORIGIN",
    "REGULAR_PART_CLOSED_FORM",
    "ASYMPTOTE_INTERCEPT",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and work budget for adaptive quadrature."""

    abs_tol: float = 1e-15
    rel_tol: float = 1e-13
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if int(self.max_subdivisions) < 1:
            raise DomainError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * float(np.dot(_GL_WEIGHTS, f(mid + half * _GL_NODES)))


def adaptive_gauss_legendre(f, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Integrate a vectorised ``f`` over ``[a, b]`` by panel bisection.

    Each panel is accepted when its 20-point Gauss-Legendre value agrees with
    the sum over its two halves to within the local share of the tolerance.
    """
    total = 0.0
    length = b - a
    stack = [(a, b, _panel(f, a, b))]
    splits = 0
    while stack:
        lo, hi, coarse = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid)
        right = _panel(f, mid, hi)
        fine = left + right
        share = (hi - lo) / length
        if abs(fine - coarse) <= max(spec.abs_tol * share, spec.rel_tol * abs(fine)):
            total += fine
            continue
        splits += 1
        if splits > spec.max_subdivisions:
            raise ToleranceNotMetError(
                f"adaptive quadrature exceeded {spec.max_subdivisions} subdivisions"
            )
        stack.append((lo, mid, left))
        stack.append((mid, hi, right))
    return total


def phi(s: float, u: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``(1/4pi) int_0^1 t^(s-1) (1-t)^(s-1) (t+u)^(-s) dt`` for ``s, u > 0``.

    For ``s = 1/2`` the substitution ``t = sin^2(theta)`` removes both
    endpoint singularities and leaves ``(1/2pi) int_0^(pi/2) (sin^2 + u)^(-1/2)``,
    integrated by adaptive Gauss-Legendre panels.  Other exponents go through
    QUADPACK's algebraic-weight rule (QAWS), which absorbs the endpoint powers
    into the weight.
    """
    if not s > 0:
        raise DomainError(f"phi requires s > 0, got {s}")
    if not u > 0:
        raise DomainError(f"phi requires u > 0, got {u}")
    if s == 0.5:
        val = adaptive_gauss_legendre(
            lambda th: 1.0 / np.sqrt(np.sin(th) ** 2 + u), 0.0, 0.5 * math.pi, spec
        )
        return val / _TWO_PI
    val, err, info = integrate.quad(
        lambda t: (t + u) ** (-s),
        0.0,
        1.0,
        weight="alg",
        wvar=(s - 1.0, s - 1.0),
        epsabs=spec.abs_tol,
        epsrel=max(spec.rel_tol, 5e-14),
        limit=spec.max_subdivisions,
        full_output=1,
    )[:3]
    if "ier" in info and info["ier"] not in (0,):
        raise ToleranceNotMetError(f"QAWS failed for phi({s}, {u}): {info.get('message', '')}")
    return val / (4.0 * math.pi)


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean, iterated until ``|a-b| <= 1e-15 a``."""
    for _ in range(64):
        if abs(a - b) <= 1e-15 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _agm_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    for _ in range(64):
        if np.all(np.abs(a - b) <= 1e-15 * a):
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return 0.5 * (a + b)


def green_fast(rho: float) -> float:
    """Green's function as a function of geodesic distance ``rho > 0``.

    Uses ``K(k) = pi / (2 agm(1, k'))`` with modulus ``k = sech(rho/2)`` and
    complementary modulus ``k' = tanh(rho/2)``, so
    ``G = sech(rho/2) / (4 agm(1, tanh(rho/2)))``.
    """
    if not rho > 0:
        raise DomainError(f"green_fast requires rho > 0, got {rho}")
    half = 0.5 * rho
    return 1.0 / (4.0 * math.cosh(half) * agm(1.0, math.tanh(half)))


def green_origin(r):
    """``G(y, 0)`` for ``|y| = r`` in ``(0, 1)``; vectorised over ``r``.

    At the origin ``tanh(rho/2) = r`` and ``sech(rho/2) = sqrt(1 - r^2)``, so
    no hyperbolic functions are needed and accuracy holds up to ``r -> 1``.
    """
    r = np.asarray(r, dtype=float)
    if np.any(~((r > 0) & (r < 1))):
        raise DomainError("green_origin requires 0 < r < 1")
    out = np.sqrt((1.0 - r) * (1.0 + r)) / (4.0 * _agm_array(np.ones_like(r), r))
    return out if out.ndim else float(out)


def green(x: Sequence[float], y: Sequence[float], spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``G(x, y)`` through the integral representation."""
    u = sinh_half_distance(x, y) ** 2
    if u == 0.0:
        raise SingularArgumentError("green(x, y) is singular at x = y")
    return phi(0.5, u, spec)


def regular_part(y: Sequence[float]) -> float:
    """``C(y) = G(y, 0) + log|y| / (2 pi)``; depends on ``|y|`` only."""
    p = DiscPoint(float(y[0]), float(y[1]))
    r = math.hypot(p.x1, p.x2)
    if r == 0.0:
        raise DomainError("regular_part is defined for y != 0; use REGULAR_PART_AT_ORIGIN")
    if r >= 1.0:
        raise DomainError(f"y={tuple(p)} is not inside the open unit disc")
    return green_origin(r) + math.log(r) / _TWO_PI


def regular_part_extrapolated(radii: Sequence[float] = (1e-2, 1e-3, 1e-4), values=None) -> float:
    """Extrapolate ``C(y)`` to ``y = 0`` from samples at small ``|y|``.

    The expansion of ``K`` near ``k = 1`` gives
    ``C(r) = C(0) + a r^2 log r + b r^2 + O(r^4 log r)``.  With three radii the
    three unknowns are solved for exactly; with two radii only the ``r^2``
    term is eliminated.
    """
    radii = np.asarray(radii, dtype=float)
    if values is None:
        values = np.array([regular_part((r, 0.0)) for r in radii])
    values = np.asarray(values, dtype=float)
    if radii.size == 2:
        r1, r2 = radii**2
        return float((r1 * values[1] - r2 * values[0]) / (r1 - r2))
    if radii.size != 3:
        raise DomainError("extrapolation needs two or three radii")
    mat = np.column_stack([np.ones(3), radii**2 * np.log(radii), radii**2])
    return float(np.linalg.solve(mat, values)[0])


@lru_cache(maxsize=None)
def _regular_part_at_origin() -> float:
    return regular_part_extrapolated()


#: ``C(0)``, fixed once at import by extrapolation from |y| = 1e-2, 1e-3, 1e-4.
REGULAR_PART_AT_ORIGIN: float = _regular_part_at_origin()

#: Closed-form value ``log(4) / (2 pi)`` from ``K(k) ~ log(4/k')``.
REGULAR_PART_CLOSED_FORM: float = math.log(4.0) / _TWO_PI

#: ``A = log 64 - 8 pi C(0)`` in ``c_lambda = A - 2 log(lambda) + o(1)``.
ASYMPTOTE_INTERCEPT: float = math.log(64.0) - 8.0 * math.pi * REGULAR_PART_AT_ORIGIN
