"""Dormand-Prince 5(4) integrator for the radial equation in ``tau = log r``.

With ``p = du/dtau`` the radial equation
``u'' + u'/r + u/(1-r^2)^2 + lam e^u = 0`` becomes

    du/dtau = p,
    dp/dtau = -e^(2 tau) [u / (1 - e^(2 tau))^2 + lam e^u].

The log-radius variable spreads resolution evenly across the blow-up core
(width ~ e^(-c/2)) and the outer region, so the step size stays O(1) at any
``c``.  Near ``r = 1`` steps shrink geometrically with ``1 - r``.
"""

import math

import numpy as np
from numba import njit

__all__ = ["dopri_path", "STATUS_OK", "STATUS_UNDERFLOW", "STATUS_OVERFLOW", "STATUS_MAXSTEPS"]

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_OVERFLOW = 2
STATUS_MAXSTEPS = 3

# largest u for which lam * e^u is still evaluated
_U_MAX = 700.0


@njit(cache=True)
def _rhs(tau, u, p, lam):
    e2 = math.exp(2.0 * tau)
    gap = -math.expm1(2.0 * tau)
    return p, -e2 * (u / (gap * gap) + lam * math.exp(u))


@njit(cache=True)
def dopri_path(tau0, u0, p0, tau1, lam, rtol, atol, max_steps):
    """Integrate from ``tau0`` to ``tau1``; return every accepted step.

    Returns
    -------
    tau, u, p : ndarray
        Accepted states, starting with the initial one.
    status : int
        One of the ``STATUS_*`` codes.
    """
    T = np.empty(max_steps + 1)
    U = np.empty(max_steps + 1)
    P = np.empty(max_steps + 1)
    T[0] = tau0
    U[0] = u0
    P[0] = p0
    n = 1
    t = tau0
    u = u0
    p = p0
    k1u, k1p = _rhs(t, u, p, lam)
    h = min(1e-2, tau1 - tau0)
    status = STATUS_OK
    while t < tau1:
        if n > max_steps:
            status = STATUS_MAXSTEPS
            break
        if t + h > tau1:
            h = tau1 - t
        if h <= 1e-14 * max(1.0, abs(t)):
            status = STATUS_UNDERFLOW
            break
        k2u, k2p = _rhs(t + h / 5.0, u + h * (k1u / 5.0), p + h * (k1p / 5.0), lam)
        k3u, k3p = _rhs(
            t + 3.0 * h / 10.0,
            u + h * (3.0 / 40.0 * k1u + 9.0 / 40.0 * k2u),
            p + h * (3.0 / 40.0 * k1p + 9.0 / 40.0 * k2p),
            lam,
        )
        k4u, k4p = _rhs(
            t + 4.0 * h / 5.0,
            u + h * (44.0 / 45.0 * k1u - 56.0 / 15.0 * k2u + 32.0 / 9.0 * k3u),
            p + h * (44.0 / 45.0 * k1p - 56.0 / 15.0 * k2p + 32.0 / 9.0 * k3p),
            lam,
        )
        k5u, k5p = _rhs(
            t + 8.0 * h / 9.0,
            u + h * (19372.0 / 6561.0 * k1u - 25360.0 / 2187.0 * k2u
                     + 64448.0 / 6561.0 * k3u - 212.0 / 729.0 * k4u),
            p + h * (19372.0 / 6561.0 * k1p - 25360.0 / 2187.0 * k2p
                     + 64448.0 / 6561.0 * k3p - 212.0 / 729.0 * k4p),
            lam,
        )
        k6u, k6p = _rhs(
            t + h,
            u + h * (9017.0 / 3168.0 * k1u - 355.0 / 33.0 * k2u + 46732.0 / 5247.0 * k3u
                     + 49.0 / 176.0 * k4u - 5103.0 / 18656.0 * k5u),
            p + h * (9017.0 / 3168.0 * k1p - 355.0 / 33.0 * k2p + 46732.0 / 5247.0 * k3p
                     + 49.0 / 176.0 * k4p - 5103.0 / 18656.0 * k5p),
            lam,
        )
        un = u + h * (35.0 / 384.0 * k1u + 500.0 / 1113.0 * k3u + 125.0 / 192.0 * k4u
                      - 2187.0 / 6784.0 * k5u + 11.0 / 84.0 * k6u)
        pn = p + h * (35.0 / 384.0 * k1p + 500.0 / 1113.0 * k3p + 125.0 / 192.0 * k4p
                      - 2187.0 / 6784.0 * k5p + 11.0 / 84.0 * k6p)
        if not (abs(un) < _U_MAX and math.isfinite(pn)):
            status = STATUS_OVERFLOW
            break
        k7u, k7p = _rhs(t + h, un, pn, lam)
        # difference between the 5th and embedded 4th order solutions
        eu = h * (71.0 / 57600.0 * k1u - 71.0 / 16695.0 * k3u + 71.0 / 1920.0 * k4u
                  - 17253.0 / 339200.0 * k5u + 22.0 / 525.0 * k6u - 1.0 / 40.0 * k7u)
        ep = h * (71.0 / 57600.0 * k1p - 71.0 / 16695.0 * k3p + 71.0 / 1920.0 * k4p
                  - 17253.0 / 339200.0 * k5p + 22.0 / 525.0 * k6p - 1.0 / 40.0 * k7p)
        su = atol + rtol * max(abs(u), abs(un))
        sp = atol + rtol * max(abs(p), abs(pn))
        err = math.sqrt(0.5 * ((eu / su) ** 2 + (ep / sp) ** 2))
        if err <= 1.0:
            t = t + h
            u = un
            p = pn
            k1u = k7u
            k1p = k7p
            T[n] = t
            U[n] = u
            P[n] = p
            n += 1
            if err == 0.0:
                h *= 5.0
            else:
                h *= min(5.0, max(0.2, 0.9 * err ** -0.2))
        else:
            h *= max(0.2, 0.9 * err ** -0.2)
    return T[:n], U[:n], P[:n], status
