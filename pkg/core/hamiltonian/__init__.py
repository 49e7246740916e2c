"""
Hamiltonian Package

Metric models evaluating the support function rho(x, q) and their diagnostics.
"""

from .models import (
    MetricModel,
    MetricError,
    EllipticForm,
    RiemannianMetric,
    GramRiemannianMetric,
    HjbSpeedMetric,
    DriftMetric,
    CustomMetric,
    eval_rho,
    check_spd,
)
from .catalog import (
    parse_model_spec,
    torus_metric,
    torus_immersion,
    torus_jacobian,
    torus_gram,
    mintime_metric,
    mintime_drift,
)
from .bounds import (
    RhoBounds,
    CompatibilityReport,
    MetricValidation,
    estimate_rho_bounds,
    check_boundary_compatibility,
    validate_metric_model,
    sample_rho,
    unit_directions,
)

__all__ = [
    'MetricModel',
    'MetricError',
    'EllipticForm',
    'RiemannianMetric',
    'GramRiemannianMetric',
    'HjbSpeedMetric',
    'DriftMetric',
    'CustomMetric',
    'eval_rho',
    'check_spd',
    'parse_model_spec',
    'torus_metric',
    'torus_immersion',
    'torus_jacobian',
    'torus_gram',
    'mintime_metric',
    'mintime_drift',
    'RhoBounds',
    'CompatibilityReport',
    'MetricValidation',
    'estimate_rho_bounds',
    'check_boundary_compatibility',
    'validate_metric_model',
    'sample_rho',
    'unit_directions',
]
