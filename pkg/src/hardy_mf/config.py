"""Run configuration shared by the command-line front end."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

from .errors import DomainError
from .greens import QuadratureSpec
from .radial.shooting import DEFAULT_DELTA, DEFAULT_MESH_SPACING, DEFAULT_TOL

__all__ = ["RunConfig"]


@dataclass
class RunConfig:
    """Solver tolerances, search windows and output locations.

    Any subset of the fields may be given in a JSON file; the rest keep
    their defaults.  ``quadrature`` is a mapping with the fields of
    :class:`~hardy_mf.greens.QuadratureSpec`.
    """

    tol: float = DEFAULT_TOL
    defect_tol: float = 1e-9
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    match_delta: float = DEFAULT_DELTA
    mesh_spacing: float = DEFAULT_MESH_SPACING
    mass_window: tuple[float, float] = (4.0 * math.pi, 12.0 * math.pi)
    c_window: tuple[float, float] = (5.0, 60.0)
    n_scan: int = 111
    jobs: int = 1
    seed: int = 0
    solution_out: str = "solution.json"
    branch_out: str = "branch.csv"
    report_out: str = "report.json"

    def __post_init__(self):
        if isinstance(self.quadrature, dict):
            self.quadrature = QuadratureSpec(**self.quadrature)
        self.mass_window = tuple(float(v) for v in self.mass_window)
        self.c_window = tuple(float(v) for v in self.c_window)
        for name in ("tol", "defect_tol", "mesh_spacing"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if not (1e-5 <= self.match_delta <= 0.05):
            raise DomainError("match_delta must lie in [1e-5, 0.05]")
        for name in ("mass_window", "c_window"):
            lo, hi = getattr(self, name)
            if not (len(getattr(self, name)) == 2 and lo < hi):
                raise DomainError(f"{name} must be a nonempty interval")
        if self.c_window[0] <= 0:
            raise DomainError("c_window must lie in (0, inf)")
        if int(self.n_scan) < 2 or int(self.jobs) < 1:
            raise DomainError("n_scan must be >= 2 and jobs >= 1")

    @classmethod
    def from_json(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DomainError(f"configuration {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise DomainError("configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown configuration keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise DomainError(f"invalid configuration value: {exc}") from exc

    def to_dict(self) -> dict:
        return asdict(self)
