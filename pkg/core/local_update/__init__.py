"""
Local Update Package

Hopf-Lax triangle updates and the patch-wise operator Lambda_h.
"""

from .triangle import (
    DEFAULT_TOL_1D,
    TriangleUpdateInput,
    closed_form_update,
    triangle_geometry,
    triangle_update_riemannian,
    triangle_update_generic,
    golden_section_minimize,
    golden_section_iterations,
)
from .operator import HopfLaxOperator, hopf_lax_update

__all__ = [
    'DEFAULT_TOL_1D',
    'TriangleUpdateInput',
    'closed_form_update',
    'triangle_geometry',
    'triangle_update_riemannian',
    'triangle_update_generic',
    'golden_section_minimize',
    'golden_section_iterations',
    'HopfLaxOperator',
    'hopf_lax_update',
]
