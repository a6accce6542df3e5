"""Radial shooting solver."""

from .frobenius import BoundaryFrame, FrobeniusSeries, fit_frame, frobenius_series
from .shooting import (
    DEFAULT_DELTA,
    DEFAULT_MESH_SPACING,
    DEFAULT_TOL,
    RadialPath,
    boundary_defect,
    build_solution,
    integrate,
    solve_given_c,
    solve_given_lambda,
    start_radius,
    taylor_start,
)
from .solution import RadialSolution, disc_integral, hardy_weight, taylor_coefficients

__all__ = [
    "BoundaryFrame",
    "FrobeniusSeries",
    "RadialPath",
    "RadialSolution",
    "boundary_defect",
    "build_solution",
    "disc_integral",
    "fit_frame",
    "frobenius_series",
    "hardy_weight",
    "integrate",
    "solve_given_c",
    "solve_given_lambda",
    "start_radius",
    "taylor_coefficients",
    "taylor_start",
    "DEFAULT_DELTA",
    "DEFAULT_MESH_SPACING",
    "DEFAULT_TOL",
]
