"""Poincare disc geometry: Mobius translations, geodesic distance, reflections.

Points are plain ``(x1, x2)`` pairs; every function accepts any length-2
sequence and returns a :class:`DiscPoint`.  All quantities of the form
``1 - |x|^2`` are formed from the coordinates directly so that points very
close to the unit circle keep their relative accuracy.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from .errors import DomainError

__all__ = [
    "DiscPoint",
    "mobius",
    "geodesic_distance",
    "distance_from_origin",
    "sinh_half_distance",
    "reflect",
]


class DiscPoint(NamedTuple):
    """A point of the open unit disc in Euclidean coordinates."""

    x1: float
    x2: float

    @property
    def norm2(self) -> float:
        return self.x1 * self.x1 + self.x2 * self.x2

    def conformal_gap(self) -> float:
        """``1 - |x|^2`` evaluated without squaring a rounded norm."""
        return _gap(self.x1, self.x2)


def _gap(x1: float, x2: float) -> float:
    # (1 - x1)(1 + x1) - x2^2 keeps relative accuracy near |x1| = 1
    return (1.0 - x1) * (1.0 + x1) - x2 * x2


def _point(x: Sequence[float], name: str) -> DiscPoint:
    p = DiscPoint(float(x[0]), float(x[1]))
    if not (_gap(p.x1, p.x2) > 0.0):
        raise DomainError(f"{name}={tuple(p)} is not inside the open unit disc")
    return p


def _mobius_den(a: DiscPoint, x: DiscPoint) -> float:
    # 1 - 2 x.a + |x|^2 |a|^2 rewritten as (1 - x.a)^2 + (x1 a2 - x2 a1)^2,
    # which keeps relative accuracy when both points approach the circle
    dot = x.x1 * a.x1 + x.x2 * a.x2
    cross = x.x1 * a.x2 - x.x2 * a.x1
    return (1.0 - dot) * (1.0 - dot) + cross * cross


def mobius(a: Sequence[float], x: Sequence[float]) -> DiscPoint:
    """Hyperbolic translation ``T_a`` of the disc.

    ``T_a(x) = (|x-a|^2 a - (1-|a|^2)(x-a)) / (1 - 2 x.a + |x|^2 |a|^2)``.
    It maps ``0`` to ``a`` and ``a`` to ``0`` and is an involution.  With
    ``a = 0`` the formula gives ``-x`` (reflection through the origin), which
    is kept as-is.
    """
    a = _point(a, "a")
    x = _point(x, "x")
    d1 = x.x1 - a.x1
    d2 = x.x2 - a.x2
    dist2 = d1 * d1 + d2 * d2
    gap_a = a.conformal_gap()
    num1 = dist2 * a.x1 - gap_a * d1
    num2 = dist2 * a.x2 - gap_a * d2
    den = _mobius_den(a, x)
    return DiscPoint(num1 / den, num2 / den)


def distance_from_origin(x: Sequence[float]) -> float:
    """``rho(x) = log((1+|x|)/(1-|x|)) = 2 artanh |x|``."""
    x = _point(x, "x")
    return 2.0 * math.atanh(math.hypot(x.x1, x.x2))


def sinh_half_distance(x: Sequence[float], y: Sequence[float]) -> float:
    """``|x-y| / sqrt((1-|x|^2)(1-|y|^2))``, equal to ``sinh(rho(x,y)/2)``."""
    x = _point(x, "x")
    y = _point(y, "y")
    diff = math.hypot(x.x1 - y.x1, x.x2 - y.x2)
    return diff / math.sqrt(x.conformal_gap() * y.conformal_gap())


def geodesic_distance(x: Sequence[float], y: Sequence[float]) -> float:
    """Hyperbolic distance ``rho(x, y) = rho(T_x(y))``.

    ``rho(z) = log((1+|z|)/(1-|z|))``.  For ``|z| >= 1/2`` this is evaluated
    as ``2 log(1+|z|) - log(1-|z|^2)``, with ``1 - |z|^2`` taken from
    ``(1-|x|^2)(1-|y|^2) / (1 - 2 x.y + |x|^2 |y|^2)`` to avoid cancellation.
    """
    px = _point(x, "x")
    py = _point(y, "y")
    z = mobius(px, py)
    t = math.hypot(z.x1, z.x2)
    if t < 0.5:
        # far from the circle 2 artanh(t) is accurate, also for tiny distances
        return 2.0 * math.atanh(t)
    gap = px.conformal_gap() * py.conformal_gap() / _mobius_den(px, py)
    return max(0.0, 2.0 * math.log1p(t) - math.log(gap))


def reflect(a: Sequence[float], x: Sequence[float]) -> DiscPoint:
    """Reflection across the geodesic ``T_a({x2 = 0})``.

    This is ``T_a o I o T_a`` with ``I(x1, x2) = (x1, -x2)``.  Writing
    ``T_a(z) = (a - z) / (1 - conj(a) z)`` in complex notation, the
    composition collapses to the single anti-Mobius map

        z -> (2 i Im(a) + (1 - a^2) conj(z)) / (conj(1 - a^2) - 2 i Im(a) conj(z)),

    which rounds once instead of three times.
    """
    pa = _point(a, "a")
    px = _point(x, "x")
    av = complex(pa.x1, pa.x2)
    zb = complex(px.x1, -px.x2)
    k = 1.0 - av * av
    iq2 = 2j * pa.x2
    w = (iq2 + k * zb) / (k.conjugate() - iq2 * zb)
    return DiscPoint(w.real, w.imag)
