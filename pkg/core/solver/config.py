"""
Solver configuration and run statistics.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from dataclasses_json import dataclass_json


class SolverKind(Enum):
    """Iterative schemes for u_h = Lambda_h u_h."""
    JACOBI = "jacobi"
    GAUSS_SEIDEL = "gauss_seidel"
    ADAPTIVE_GS = "adaptive_gs"


@dataclass_json
@dataclass
class SolverConfig:
    """
    Configuration for the fixed-point solvers.

    Attributes:
        kind: iteration scheme
        tol: absolute tolerance on per-vertex changes and on the final residual
        max_sweeps: sweep cap; the adaptive scheme may pop at most
            max_sweeps * (number of unknowns) vertices
        tol_1d: bracket tolerance of the golden-section edge minimization
        closed_form: use the closed-form triangle update when the model has one
    """
    kind: SolverKind = SolverKind.ADAPTIVE_GS
    tol: float = 1e-8
    max_sweeps: int = 100000
    tol_1d: float = 1e-10
    closed_form: bool = True

    def __post_init__(self):
        if not isinstance(self.kind, SolverKind):
            self.kind = SolverKind(self.kind)
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.max_sweeps) < 1:
            raise ValueError(f"max_sweeps must be at least 1, got {self.max_sweeps}")
        if not self.tol_1d > 0.0:
            raise ValueError(f"tol_1d must be positive, got {self.tol_1d}")
        self.max_sweeps = int(self.max_sweeps)


@dataclass_json
@dataclass
class SolveStats:
    """
    Work and accuracy counters of one solve.

    Attributes:
        solver: scheme name
        n_vertices, n_triangles: mesh size
        triangle_updates: number of per-triangle update evaluations
        sweeps_or_pops: full sweeps (Jacobi, Gauss-Seidel) or queue pops (adaptive)
        final_residual: max over unknown vertices of |u - Lambda_h u|
        wall_time_s: elapsed seconds
        converged: final_residual <= tol reached within the caps
    """
    solver: str
    n_vertices: int
    n_triangles: int
    triangle_updates: int = 0
    sweeps_or_pops: int = 0
    final_residual: float = float("inf")
    wall_time_s: Optional[float] = None
    converged: bool = False

    def record(self, include_timing: bool = True) -> dict:
        """Flat key-value record; wall time is null unless requested."""
        data = self.to_dict()
        if not include_timing:
            data["wall_time_s"] = None
        return data

    def record_json(self, include_timing: bool = True) -> str:
        """
        ``record`` as sorted-key JSON; a non-finite residual is written as null
        so the output stays valid JSON.
        """
        stats = self
        if not include_timing:
            stats = replace(stats, wall_time_s=None)
        if not math.isfinite(stats.final_residual):
            stats = replace(stats, final_residual=None)
        return stats.to_json(sort_keys=True)
