"""Piecewise quintic Hermite interpolation from values and two derivatives."""

import numpy as np

__all__ = ["QuinticHermite"]


class QuinticHermite:
    """Interpolant matching ``y, y', y''`` at strictly increasing knots.

    Local error is ``O(h^6)``, which keeps resampled ODE states at the
    integrator's own accuracy.
    """

    def __init__(self, x, y, dy, d2y):
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        self.dy = np.asarray(dy, dtype=float)
        self.d2y = np.asarray(d2y, dtype=float)
        if self.x.ndim != 1 or self.x.size < 2 or np.any(np.diff(self.x) <= 0):
            raise ValueError("knots must be a strictly increasing 1-D array")

    def __call__(self, xq, nu=0):
        """Evaluate the interpolant (``nu=0``) or its first derivative (``nu=1``)."""
        xq = np.asarray(xq, dtype=float)
        i = np.clip(np.searchsorted(self.x, xq, side="right") - 1, 0, self.x.size - 2)
        x0 = self.x[i]
        h = self.x[i + 1] - x0
        t = (xq - x0) / h
        y0, y1 = self.y[i], self.y[i + 1]
        d0, d1 = h * self.dy[i], h * self.dy[i + 1]
        s0, s1 = h * h * self.d2y[i], h * h * self.d2y[i + 1]
        t2 = t * t
        t3 = t2 * t
        if nu == 0:
            t4 = t3 * t
            t5 = t4 * t
            h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5
            h10 = t - 6 * t3 + 8 * t4 - 3 * t5
            h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5)
            h01 = 10 * t3 - 15 * t4 + 6 * t5
            h11 = -4 * t3 + 7 * t4 - 3 * t5
            h21 = 0.5 * (t3 - 2 * t4 + t5)
            return h00 * y0 + h10 * d0 + h20 * s0 + h01 * y1 + h11 * d1 + h21 * s1
        if nu == 1:
            t4 = t3 * t
            g00 = -30 * t2 + 60 * t3 - 30 * t4
            g10 = 1 - 18 * t2 + 32 * t3 - 15 * t4
            g20 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4)
            g11 = -12 * t2 + 28 * t3 - 15 * t4
            g21 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4)
            return (g00 * (y0 - y1) + g10 * d0 + g20 * s0 + g11 * d1 + g21 * s1) / h
        raise ValueError("only nu = 0 or 1 is supported")
