"""
Diagnostics for metric models: sampled bounds of rho, the boundary
compatibility condition, and a sampling validator for custom models.
"""

import logging
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
from dataclasses_json import dataclass_json

from ..mesh import TriMesh
from .models import MetricModel, eval_rho

logger = logging.getLogger(__name__)

DEFAULT_N_DIRS = 64


@dataclass_json
@dataclass
class RhoBounds:
    """
    Sampled estimates of rho_* ||q|| <= rho(x, q) <= rho^* ||q||.
    """
    rho_star_upper: float
    rho_star_lower: float

    @property
    def anisotropy(self) -> float:
        """Ratio of maximal to minimal speed."""
        if self.rho_star_lower <= 0.0:
            return math.inf
        return self.rho_star_upper / self.rho_star_lower


def unit_directions(n_dirs: int) -> np.ndarray:
    angles = 2.0 * math.pi * np.arange(n_dirs) / n_dirs
    return np.column_stack([np.cos(angles), np.sin(angles)])


def sample_rho(model: MetricModel, points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """rho at every (point, direction) pair, shape (len(points), len(directions))."""
    out = np.empty((len(points), len(directions)))
    for i, x in enumerate(points):
        form = model.frozen_form(x) if model.has_frozen_form else None
        if form is not None:
            quad = np.einsum("di,ij,dj->d", directions, form.gram, directions)
            out[i] = directions @ form.shift + np.sqrt(quad)
        else:
            out[i] = [eval_rho(model, x, q) for q in directions]
    return out


def estimate_rho_bounds(model: MetricModel, mesh: TriMesh, n_dirs: int = DEFAULT_N_DIRS) -> RhoBounds:
    """
    Estimate rho^* and rho_* by sampling all mesh vertices and ``n_dirs``
    equispaced unit directions.

    The estimates are inner ones: the true constants may be slightly more
    extreme between samples.
    """
    if n_dirs < 4:
        raise ValueError(f"n_dirs must be at least 4, got {n_dirs}")
    values = sample_rho(model, mesh.vertices, unit_directions(n_dirs))
    bounds = RhoBounds(rho_star_upper=float(values.max()), rho_star_lower=float(values.min()))
    logger.debug("estimate_rho_bounds(%s): lower=%.6g upper=%.6g",
                 model.name, bounds.rho_star_lower, bounds.rho_star_upper)
    return bounds


@dataclass_json
@dataclass
class CompatibilityReport:
    """
    Outcome of checking g(x) - g(y) <= (rho_* / theta) ||x - y|| over ordered
    pairs of boundary vertices.

    Attributes:
        passed: True when no pair violates the inequality
        slope: the admissible slope rho_* / theta
        margin: max over pairs of g(x) - g(y) - slope ||x - y||
        worst_pair: (x, y) vertex indices attaining the margin
        n_pairs: number of ordered pairs checked
    """
    passed: bool
    slope: float
    margin: float
    worst_pair: Optional[Tuple[int, int]]
    n_pairs: int


def check_boundary_compatibility(mesh: TriMesh, g: Mapping[int, float], bounds: RhoBounds,
                                 theta: float, tolerance: float = 1e-12) -> CompatibilityReport:
    """
    Check the discrete boundary compatibility condition.

    Args:
        mesh: triangulation
        g: boundary values, must cover every boundary vertex
        bounds: rho bounds, only rho_star_lower is used
        theta: regularity constant of the mesh
        tolerance: slack on the inequality

    Returns:
        CompatibilityReport; solving proceeds regardless of the outcome
    """
    boundary = sorted(mesh.boundary_vertices)
    missing = [v for v in boundary if v not in g]
    if missing:
        raise ValueError(f"g is undefined on boundary vertices {missing[:5]}")
    slope = bounds.rho_star_lower / theta
    if len(boundary) < 2:
        return CompatibilityReport(passed=True, slope=slope, margin=-math.inf, worst_pair=None, n_pairs=0)

    idx = np.array(boundary)
    values = np.array([g[v] for v in boundary], dtype=float)
    pts = mesh.vertices[idx]
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    excess = values[:, None] - values[None, :] - slope * dist
    np.fill_diagonal(excess, -np.inf)
    flat = int(np.argmax(excess))
    i, j = np.unravel_index(flat, excess.shape)
    margin = float(excess[i, j])
    report = CompatibilityReport(
        passed=margin <= tolerance,
        slope=slope,
        margin=margin,
        worst_pair=(int(idx[i]), int(idx[j])),
        n_pairs=len(boundary) * (len(boundary) - 1),
    )
    if not report.passed:
        logger.warning("boundary data violate the compatibility condition: pair %s exceeds the "
                       "admissible slope %.6g by %.6g", report.worst_pair, slope, margin)
    return report


@dataclass_json
@dataclass
class MetricValidation:
    """Worst deviations found by ``validate_metric_model``."""
    homogeneity_error: float
    subadditivity_violation: float
    min_rho: float
    passed: bool


def validate_metric_model(model: MetricModel, points: Sequence, n_samples: int = 200,
                          seed: int = 0, tolerance: float = 1e-10) -> MetricValidation:
    """
    Sample positive homogeneity, subadditivity and positivity of rho(x, .).

    Passing is evidence, not proof: convexity cannot be certified from point
    evaluations.
    """
    rng = np.random.default_rng(seed)
    points = np.asarray(points, dtype=float)
    homogeneity = 0.0
    violation = 0.0
    min_rho = math.inf
    for _ in range(n_samples):
        x = points[rng.integers(len(points))]
        q1, q2 = rng.normal(size=2), rng.normal(size=2)
        t = rng.uniform(0.0, 10.0)
        r1 = eval_rho(model, x, q1)
        r2 = eval_rho(model, x, q2)
        homogeneity = max(homogeneity, abs(eval_rho(model, x, t * q1) - t * r1) / (1.0 + t * r1))
        violation = max(violation, eval_rho(model, x, q1 + q2) - r1 - r2)
        min_rho = min(min_rho, r1 / float(np.linalg.norm(q1)))
    passed = homogeneity <= tolerance and violation <= tolerance and min_rho > 0.0
    if not passed:
        logger.warning("model %s failed validation: homogeneity=%.3g subadditivity=%.3g min_rho=%.3g",
                       model.name, homogeneity, violation, min_rho)
    return MetricValidation(homogeneity_error=homogeneity, subadditivity_violation=violation,
                            min_rho=min_rho, passed=passed)
