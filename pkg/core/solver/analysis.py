"""
Residuals, the discrete comparison principle, Lipschitz checks and
monotonicity recording.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..hamiltonian import MetricModel
from ..local_update import DEFAULT_TOL_1D, HopfLaxOperator
from ..mesh import TriMesh
from .config import SolverConfig, SolveStats
from .field import BoundaryData, NodalField
from .iterative import make_operator, solve

logger = logging.getLogger(__name__)

COMPARISON_TOLERANCE = 1e-10


def residual(mesh: TriMesh, model: MetricModel, field: NodalField,
             tol_1d: float = DEFAULT_TOL_1D, closed_form: bool = True) -> float:
    """
    max over unknown vertices of |u(v) - (Lambda_h u)(v)|.

    A vertex that is +inf with a +inf update contributes 0; +inf against a
    finite update contributes +inf.
    """
    operator = HopfLaxOperator(mesh, model, tol_1d=tol_1d, closed_form=closed_form)
    return operator.residual(field.values, field.unknown)


@dataclass
class ComparisonReport:
    """
    Outcome of solving with ordered boundary data g1 <= g2.

    Attributes:
        max_violation: max over vertices of u1 - u2, negative when strictly ordered
        ordered: max_violation <= tolerance
    """
    max_violation: float
    ordered: bool
    field1: NodalField
    field2: NodalField
    stats1: SolveStats
    stats2: SolveStats


def compare_boundary_data(mesh: TriMesh, model: MetricModel, g1: BoundaryData, g2: BoundaryData,
                          config: Optional[SolverConfig] = None,
                          tolerance: float = COMPARISON_TOLERANCE) -> ComparisonReport:
    """
    Solve with g1 and g2 and check that u1 <= u2 vertexwise.

    Raises:
        ValueError: if the Dirichlet sets differ or g1 > g2 somewhere
    """
    if set(g1) != set(g2):
        raise ValueError("g1 and g2 must prescribe the same vertices")
    above = [v for v in g1 if g1[v] > g2[v]]
    if above:
        raise ValueError(f"g1 exceeds g2 at vertices {sorted(above)[:5]}")

    config = config or SolverConfig()
    operator = make_operator(mesh, model, config)
    field1, stats1 = solve(mesh, model, g1, config, operator=operator)
    field2, stats2 = solve(mesh, model, g2, config, operator=operator)
    violation = float(np.max(field1.values - field2.values))
    report = ComparisonReport(max_violation=violation, ordered=violation <= tolerance,
                              field1=field1, field2=field2, stats1=stats1, stats2=stats2)
    if not report.ordered:
        logger.error("comparison principle violated by %.3g: solver fault", violation)
    return report


def lipschitz_constant(mesh: TriMesh, values: np.ndarray, vertices: Optional[np.ndarray] = None) -> float:
    """max |u(x) - u(y)| / ||x - y|| over pairs of the given vertices."""
    idx = np.arange(mesh.n_vertices) if vertices is None else np.asarray(vertices)
    pts = mesh.vertices[idx]
    vals = np.asarray(values, dtype=float)[idx]
    best = 0.0
    for i in range(len(idx) - 1):
        dist = np.linalg.norm(pts[i + 1:] - pts[i], axis=1)
        ratio = np.abs(vals[i + 1:] - vals[i]) / dist
        if ratio.size:
            best = max(best, float(ratio.max()))
    return best


@dataclass
class MonotonicityRecorder:
    """
    Solve observer tracking monotonicity of the iterates.

    Attributes:
        sweep_decrease: worst decrease u^n - u^{n+1} seen between sweeps
            (Jacobi and Gauss-Seidel iterates should never decrease)
        update_increase: worst increase u_new - u_old over finite adaptive
            updates (adaptive values should never increase)
        sweep_changes: max |u^{n+1} - u^n| per sweep
        n_updates: number of adaptive value assignments observed
    """
    sweep_decrease: float = -math.inf
    update_increase: float = -math.inf
    sweep_changes: List[float] = field(default_factory=list)
    n_updates: int = 0

    def on_sweep(self, sweep: int, before: np.ndarray, after: np.ndarray) -> None:
        finite = np.isfinite(before) & np.isfinite(after)
        if np.any(finite):
            diff = before[finite] - after[finite]
            self.sweep_decrease = max(self.sweep_decrease, float(diff.max()))
            self.sweep_changes.append(float(np.abs(diff).max()))

    def on_vertex_update(self, v: int, old: float, new: float) -> None:
        self.n_updates += 1
        if math.isfinite(old):
            self.update_increase = max(self.update_increase, new - old)
