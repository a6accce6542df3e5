"""Boundary behaviour of radial solutions at ``r = 1``.

With ``s = 1 - r`` the equation near the circle reads
``u_ss - u_s/(1-s) + u / (s^2 (2-s)^2) + lam e^u = 0``.  Linearising
``e^u ~ 1 + u`` (``u -> 0`` at the boundary) and multiplying by
``(1-s) s^2 (2-s)^2`` gives polynomial coefficients

    P2(s) u_ss + P1(s) u_s + P0(s) u = R(s),

whose indicial polynomial at ``s = 0`` is ``(2 mu - 1)^2``.  The double root
``mu = 1/2`` yields the frame

    w1 = s^(1/2) (1 + a1 s + ...),
    w2 = w1 log s + s^(1/2) (b1 s + ...),

and a particular solution ``up = -(4 lam / 9) s^2 + ...``.  Only ``w1``
has finite relative Hardy energy, so an admissible solution is
``alpha w1 + up`` and the coefficient ``beta`` of ``w2`` is the shooting
residual.  The neglected nonlinearity ``lam (e^u - 1 - u)`` is
``O(lam alpha^2 s)``, far below working precision for ``s <= 0.05``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import ConditioningError, DomainError

__all__ = ["BoundaryFrame", "FrobeniusSeries", "frobenius_series", "fit_frame"]

N_TERMS = 24
MIN_DELTA = 1e-6
MAX_DELTA = 0.05


@dataclass(frozen=True)
class BoundaryFrame:
    """Frame coefficients of ``u - up = alpha w1 + beta w2`` at ``s = delta``."""

    alpha: float
    beta: float
    delta: float

    def __post_init__(self):
        if not (0.0 < self.delta <= MAX_DELTA):
            raise DomainError(f"delta must lie in (0, {MAX_DELTA}], got {self.delta}")

    def admissible(self, tol: float) -> bool:
        return abs(self.beta) <= tol


class FrobeniusSeries:
    """Coefficients of ``w1``, ``w2`` and ``up`` for a given ``lam``."""

    def __init__(self, lam: float, n_terms: int = N_TERMS):
        self.lam = float(lam)
        one_m_s = np.array([1.0, -1.0])
        two_m_s_sq = P.polymul([2.0, -1.0], [2.0, -1.0])
        s2_q = P.polymul([0.0, 0.0, 1.0], two_m_s_sq)       # s^2 (2-s)^2
        p2 = P.polymul(one_m_s, s2_q)
        p1 = -s2_q
        p0 = P.polyadd(one_m_s, self.lam * p2)
        rhs = -self.lam * p2
        size = n_terms + 4
        A, B, C, R = (np.pad(c, (0, size - len(c))) for c in (p2, p1, p0, rhs))

        def g(j, m):
            return A[j + 2] * m * (m - 1.0) + B[j + 1] * m + C[j]

        def dg(j, m):
            return A[j + 2] * (2.0 * m - 1.0) + B[j + 1]

        # a_n(mu) and d a_n / d mu at mu = 1/2
        a = np.zeros(n_terms)
        da = np.zeros(n_terms)
        a[0] = 1.0
        mu = 0.5
        for n in range(1, n_terms):
            js = range(1, n + 1)
            acc = sum(a[n - j] * g(j, mu + n - j) for j in js)
            dacc = sum(da[n - j] * g(j, mu + n - j) + a[n - j] * dg(j, mu + n - j) for j in js)
            g0 = g(0, mu + n)
            a[n] = -acc / g0
            da[n] = -dacc / g0 + acc * dg(0, mu + n) / g0**2
        d = np.zeros(n_terms)
        for n in range(n_terms):
            acc = sum(d[n - j] * g(j, 2.0 + n - j) for j in range(1, n + 1))
            d[n] = (R[n + 2] - acc) / g(0, 2.0 + n)
        self.a, self.da, self.d = a, da, d
        self._k = np.arange(n_terms, dtype=float)

    def _powers(self, s):
        s = np.asarray(s, dtype=float)[..., None]
        return s, s ** self._k

    def w1(self, s):
        """``(w1, dw1/ds)`` at ``s``."""
        s, sk = self._powers(s)
        root = np.sqrt(s)
        val = root * (sk @ self.a[:, None])
        der = (sk @ (self.a * (0.5 + self._k))[:, None]) / root
        return val[..., 0], der[..., 0]

    def w2(self, s):
        """``(w2, dw2/ds)`` at ``s``."""
        v1, d1 = self.w1(s)
        s_, sk = self._powers(s)
        root = np.sqrt(s_)
        corr = (root * (sk @ self.da[:, None]))[..., 0]
        dcorr = ((sk @ (self.da * (0.5 + self._k))[:, None]) / root)[..., 0]
        ls = np.log(np.asarray(s, dtype=float))
        return v1 * ls + corr, d1 * ls + v1 / np.asarray(s, dtype=float) + dcorr

    def particular(self, s):
        """``(up, dup/ds)`` at ``s``."""
        s, sk = self._powers(s)
        val = (s * s) * (sk @ self.d[:, None])
        der = s * (sk @ (self.d * (2.0 + self._k))[:, None])
        return val[..., 0], der[..., 0]

    def admissible(self, alpha: float, s):
        """``u`` and ``du/dr`` of the admissible branch ``alpha w1 + up``."""
        v1, d1 = self.w1(s)
        vp, dp = self.particular(s)
        return alpha * v1 + vp, -(alpha * d1 + dp)


@lru_cache(maxsize=512)
def frobenius_series(lam: float) -> FrobeniusSeries:
    return FrobeniusSeries(lam)


def fit_frame(lam: float, delta: float, u: float, du: float) -> BoundaryFrame:
    """Express ``(u, du/dr)`` at ``r = 1 - delta`` in the frame ``{w1, w2}``."""
    if not (MIN_DELTA <= delta <= MAX_DELTA):
        raise DomainError(f"delta must lie in [{MIN_DELTA}, {MAX_DELTA}], got {delta}")
    ser = frobenius_series(float(lam))
    v1, d1 = ser.w1(delta)
    v2, d2 = ser.w2(delta)
    vp, dp = ser.particular(delta)
    # columns are (w, dw/dr) with dw/dr = -dw/ds
    mat = np.array([[v1, v2], [-d1, -d2]], dtype=float)
    if np.linalg.cond(mat) > 1e10:
        raise ConditioningError(f"boundary frame matrix is singular at delta={delta}")
    alpha, beta = np.linalg.solve(mat, np.array([u - vp, du + dp], dtype=float))
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise ConditioningError("non-finite frame coefficients")
    return BoundaryFrame(float(alpha), float(beta), float(delta))
