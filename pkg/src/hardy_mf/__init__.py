"""Numerical laboratory for the Hardy-type mean field equation on the unit disc.

    -Delta u - u / (1 - |x|^2)^2 = lam e^u   in B_1,   u = 0 on the circle.
"""

__version__ = "0.1.0"
