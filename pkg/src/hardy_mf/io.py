"""File formats: solution JSON, branch CSV, report JSON.

Numbers are written with ``%.17g``, which round-trips binary64 exactly and
does not depend on the locale.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .continuation import Branch, BranchPoint
from .radial.solution import RadialSolution

__all__ = [
    "BRANCH_COLUMNS",
    "format_number",
    "solution_to_json",
    "write_solution",
    "read_solution",
    "write_branch",
    "read_branch",
    "write_report",
]

#: Column order of the branch CSV; part of the file format.
BRANCH_COLUMNS = ("c", "lambda", "mass", "r_lambda", "defect", "pohozaev_residual", "energy")
_ATTRS = ("c", "lam", "mass", "r_lambda", "defect", "pohozaev_residual", "energy")


def format_number(x: float) -> str:
    """``%.17g``, with ``NaN``/``Infinity`` spelled as Python's JSON reader expects."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


def _array(values) -> str:
    return "[" + ",".join(format_number(v) for v in np.asarray(values, dtype=float)) + "]"


def solution_to_json(sol: RadialSolution) -> str:
    scalars = {
        "lambda": sol.lam,
        "c": sol.c,
        "match_delta": sol.match_delta,
        "defect": sol.defect,
        "mass": sol.mass,
    }
    parts = [f'"{k}": {format_number(v)}' for k, v in scalars.items()]
    parts += [f'"{k}": {_array(getattr(sol, k))}' for k in ("mesh", "u", "du")]
    return "{\n  " + ",\n  ".join(parts) + "\n}\n"


def write_solution(sol: RadialSolution, path) -> None:
    Path(path).write_text(solution_to_json(sol), encoding="utf-8")


def read_solution(path) -> RadialSolution:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return RadialSolution(
        lam=float(data["lambda"]),
        c=float(data["c"]),
        mesh=np.array(data["mesh"], dtype=float),
        u=np.array(data["u"], dtype=float),
        du=np.array(data["du"], dtype=float),
        defect=float(data["defect"]),
        mass=float(data["mass"]),
        match_delta=float(data["match_delta"]),
    )


def write_branch(branch: Branch, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(BRANCH_COLUMNS)
        for p in branch.points:
            w.writerow([format_number(getattr(p, a)) for a in _ATTRS])


def read_branch(path) -> Branch:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    points = [
        BranchPoint(**{a: float(row[col]) for a, col in zip(_ATTRS, BRANCH_COLUMNS)}) for row in rows
    ]
    return Branch(points)


def write_report(report: dict, path) -> None:
    def default(o):
        if isinstance(o, (np.floating, np.integer)):
            return o.item()
        if isinstance(o, tuple):
            return list(o)
        raise TypeError(f"cannot serialise {type(o).__name__}")

    Path(path).write_text(json.dumps(report, indent=2, default=default) + "\n", encoding="utf-8")
