"""
Solver Package

Fixed-point solvers for u_h = Lambda_h u_h with Dirichlet data.
"""

from .config import SolverKind, SolverConfig, SolveStats
from .field import NodalField, BoundaryData
from .iterative import (
    SolveObserver,
    solve,
    solve_jacobi,
    solve_gauss_seidel,
    solve_adaptive_gs,
    make_operator,
)
from .analysis import (
    ComparisonReport,
    MonotonicityRecorder,
    compare_boundary_data,
    lipschitz_constant,
    residual,
)

__all__ = [
    'SolverKind',
    'SolverConfig',
    'SolveStats',
    'NodalField',
    'BoundaryData',
    'SolveObserver',
    'solve',
    'solve_jacobi',
    'solve_gauss_seidel',
    'solve_adaptive_gs',
    'make_operator',
    'ComparisonReport',
    'MonotonicityRecorder',
    'compare_boundary_data',
    'lipschitz_constant',
    'residual',
]
