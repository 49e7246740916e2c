"""
Experiments Package

Problem presets, convergence studies and solver comparisons.
"""

from .presets import (
    ProblemPreset,
    PresetInstance,
    PRESETS,
    get_preset,
    preset_point_source_euclid,
    preset_torus,
    preset_mintime,
)
from .studies import (
    ErrorReport,
    ComparisonRow,
    CONVERGENCE_COLUMNS,
    COMPARISON_COLUMNS,
    SOLUTION_COLUMNS,
    check_reference_mesh,
    run_convergence_study,
    run_solver_comparison,
    convergence_frame,
    comparison_frame,
    solution_frame,
    write_csv,
    observed_rates,
    convergence_orders,
    complexity_rates,
)

__all__ = [
    'ProblemPreset',
    'PresetInstance',
    'PRESETS',
    'get_preset',
    'preset_point_source_euclid',
    'preset_torus',
    'preset_mintime',
    'ErrorReport',
    'ComparisonRow',
    'CONVERGENCE_COLUMNS',
    'COMPARISON_COLUMNS',
    'SOLUTION_COLUMNS',
    'check_reference_mesh',
    'run_convergence_study',
    'run_solver_comparison',
    'convergence_frame',
    'comparison_frame',
    'solution_frame',
    'write_csv',
    'observed_rates',
    'convergence_orders',
    'complexity_rates',
]
