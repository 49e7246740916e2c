"""
Convergence and Complexity Studies

Error analysis against exact or reference-mesh solutions, solver comparison
tables and their CSV form.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from dataclasses_json import dataclass_json

from ..mesh import P1Interpolant, TriMesh
from ..solver import NodalField, SolverConfig, SolverKind, make_operator, solve
from .presets import ProblemPreset, get_preset

logger = logging.getLogger(__name__)

CONVERGENCE_COLUMNS = ["preset", "n", "solver", "max_error", "triangle_updates", "residual"]
COMPARISON_COLUMNS = ["preset", "n", "solver", "triangle_updates", "residual", "max_diff_vs_adaptive"]
SOLUTION_COLUMNS = ["x", "y", "u"]
FLOAT_FORMAT = "%.17g"
MIN_REFERENCE_RATIO = 4

PresetLike = Union[str, ProblemPreset]


@dataclass_json
@dataclass
class ErrorReport:
    """
    One row of a convergence study.

    Attributes:
        max_error: max over solved vertices of |u_h - u|, with u exact or the
            interpolated reference solution
    """
    preset: str
    n: int
    solver: str
    max_error: float
    triangle_updates: int
    residual: float


@dataclass_json
@dataclass
class ComparisonRow:
    """One row of a solver comparison."""
    preset: str
    n: int
    solver: str
    triangle_updates: int
    residual: float
    max_diff_vs_adaptive: float


def _preset_at(preset: PresetLike, n: int, perturb: Optional[float] = None) -> ProblemPreset:
    if isinstance(preset, str):
        base = get_preset(preset, n)
        return base if perturb is None else base.with_mesh(perturb=perturb)
    return preset.with_mesh(n=n, perturb=perturb)


def check_reference_mesh(reference_n: int, measured: Sequence[int]) -> None:
    """
    Reject a reference grid that does not refine every measured grid.

    Grid sizes count vertices per side, so an n-grid has (n - 1)^2 cells. The
    reference needs MIN_REFERENCE_RATIO times the cells of each measured grid,
    i.e. at least half their mesh width (23, 45, 91 against 181 passes).
    """
    too_coarse = [n for n in measured if (reference_n - 1) ** 2 < MIN_REFERENCE_RATIO * (n - 1) ** 2]
    if too_coarse:
        raise ValueError(f"reference mesh n={reference_n} is too small to serve as reference "
                         f"for n={too_coarse}; it needs {MIN_REFERENCE_RATIO}x their cell count")


def run_convergence_study(preset: PresetLike, n_list: Sequence[int],
                          config: Optional[SolverConfig] = None,
                          reference_n: Optional[int] = None) -> List[ErrorReport]:
    """
    Discretization errors over a sequence of meshes.

    Presets with an exact solution are measured against it at every n. Others
    are measured against a solution on an unperturbed reference mesh, by
    default the last (finest) entry of ``n_list``, which then yields no row.

    Raises:
        ValueError: if ``n_list`` is not ascending or the reference mesh has
            fewer than four times the cells of a measured mesh
    """
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list is empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be strictly ascending, got {n_list}")
    config = config or SolverConfig()

    first = _preset_at(preset, n_list[0])
    reference_values = None
    measured = n_list
    if first.exact is None:
        if reference_n is None:
            reference_n, measured = n_list[-1], n_list[:-1]
        if not measured:
            raise ValueError("no mesh left to measure: the finest entry serves as reference")
        check_reference_mesh(reference_n, measured)
        reference = _preset_at(preset, reference_n, perturb=0.0).instantiate()
        ref_field, ref_stats = solve(reference.mesh, reference.preset.model, reference.g, config)
        logger.info("reference solution n=%d: %d triangle updates", reference_n, ref_stats.triangle_updates)
        reference_values = (P1Interpolant(reference.mesh), ref_field.values)

    reports = []
    for n in measured:
        instance = _preset_at(preset, n).instantiate()
        field, stats = solve(instance.mesh, instance.preset.model, instance.g, config)
        solved = field.unknown
        points = instance.mesh.vertices[solved]
        if reference_values is None:
            target = instance.preset.exact(points)
        else:
            interpolant, ref = reference_values
            target = interpolant(ref, points)
        error = float(np.max(np.abs(field.values[solved] - target))) if points.size else 0.0
        reports.append(ErrorReport(preset=instance.preset.name, n=n, solver=stats.solver,
                                   max_error=error, triangle_updates=stats.triangle_updates,
                                   residual=stats.final_residual))
        logger.info("convergence %s n=%d: max error %.6g", instance.preset.name, n, error)
    return reports


def run_solver_comparison(preset: PresetLike, n: int,
                          solvers: Iterable[Union[str, SolverKind]] = tuple(SolverKind),
                          config: Optional[SolverConfig] = None) -> List[ComparisonRow]:
    """
    Solve one preset with each solver and compare work and solutions.

    The adaptive solver is always run as the baseline for
    ``max_diff_vs_adaptive``, even when not listed.
    """
    config = config or SolverConfig()
    kinds = [SolverKind(s) for s in solvers]
    instance = _preset_at(preset, n).instantiate()
    mesh, model = instance.mesh, instance.preset.model
    operator = make_operator(mesh, model, config)

    results = {}
    for kind in [SolverKind.ADAPTIVE_GS] + [k for k in kinds if k is not SolverKind.ADAPTIVE_GS]:
        run_config = SolverConfig(kind=kind, tol=config.tol, max_sweeps=config.max_sweeps,
                                  tol_1d=config.tol_1d, closed_form=config.closed_form)
        results[kind] = solve(mesh, model, instance.g, run_config, operator=operator)

    baseline = results[SolverKind.ADAPTIVE_GS][0].values
    rows = []
    for kind in kinds:
        field, stats = results[kind]
        rows.append(ComparisonRow(preset=instance.preset.name, n=n, solver=kind.value,
                                  triangle_updates=stats.triangle_updates,
                                  residual=stats.final_residual,
                                  max_diff_vs_adaptive=float(np.max(np.abs(field.values - baseline)))))
    return rows


def to_frame(rows: Sequence, columns: Sequence[str]) -> pd.DataFrame:
    """Rows of a study as a DataFrame with the documented column order."""
    return pd.DataFrame([row.to_dict() for row in rows], columns=list(columns))


def convergence_frame(reports: Sequence[ErrorReport]) -> pd.DataFrame:
    return to_frame(reports, CONVERGENCE_COLUMNS)


def comparison_frame(rows: Sequence[ComparisonRow]) -> pd.DataFrame:
    return to_frame(rows, COMPARISON_COLUMNS)


def solution_frame(mesh: TriMesh, field: NodalField) -> pd.DataFrame:
    return pd.DataFrame({"x": mesh.vertices[:, 0], "y": mesh.vertices[:, 1], "u": field.values},
                        columns=SOLUTION_COLUMNS)


def write_csv(frame: pd.DataFrame, path_or_buf) -> None:
    """Locale-independent CSV with round-tripping floats."""
    frame.to_csv(path_or_buf, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def observed_rates(x: Sequence[float], y: Sequence[float]) -> List[float]:
    """Log-log slopes between consecutive (x, y) samples."""
    rates = []
    for (x0, y0), (x1, y1) in zip(zip(x, y), list(zip(x, y))[1:]):
        if min(x0, x1, y0, y1) <= 0.0 or x0 == x1:
            rates.append(math.nan)
        else:
            rates.append(math.log(y1 / y0) / math.log(x1 / x0))
    return rates


def convergence_orders(reports: Sequence[ErrorReport]) -> List[float]:
    """Observed order of max_error against the mesh width 1/(n-1)."""
    return observed_rates([1.0 / (r.n - 1) for r in reports], [r.max_error for r in reports])


def complexity_rates(reports: Sequence[ErrorReport]) -> List[float]:
    """Observed exponent of triangle_updates against the vertex count n^2."""
    return observed_rates([float(r.n ** 2) for r in reports], [float(r.triangle_updates) for r in reports])
