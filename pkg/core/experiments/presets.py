"""
Problem Presets

Point-source problems on [-0.5, 0.5]^2: Euclidean distance (exact solution
known), geodesic distance on an immersed torus, and a minimum-time control
problem with drift.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..hamiltonian import (
    MetricModel,
    RhoBounds,
    RiemannianMetric,
    estimate_rho_bounds,
    mintime_metric,
    torus_metric,
)
from ..mesh import MeshQuality, TriMesh, generate_grid_mesh, mesh_quality

logger = logging.getLogger(__name__)

DOMAIN_DIAMETER = math.sqrt(2.0)
DEFAULT_PERTURB = 0.2
DEFAULT_SEED = 1

Point = Tuple[float, float]


@dataclass
class PresetInstance:
    """A preset materialized on its mesh."""
    preset: "ProblemPreset"
    mesh: TriMesh
    g: Dict[int, float]
    bounds: RhoBounds
    quality: MeshQuality
    source_vertices: List[int]

    @property
    def anisotropy(self) -> float:
        return self.bounds.anisotropy


@dataclass
class ProblemPreset:
    """
    Deterministic problem recipe.

    The outer square boundary is Dirichlet with the constant
    rho_star_upper * diam * boundary_factor, large enough never to win the
    Hopf-Lax minimum, so the point sources drive the solution.

    Attributes:
        name: preset name
        n: vertices per side of the generated mesh (odd)
        model: metric model
        perturb, seed: mesh generator recipe
        sources: (point, value) pairs imposed at the nearest vertex
        exact: vectorized exact solution over an (m, 2) point array, if known
        boundary_factor: safety factor of the outer boundary constant
    """
    name: str
    n: int
    model: MetricModel
    perturb: float = DEFAULT_PERTURB
    seed: int = DEFAULT_SEED
    sources: List[Tuple[Point, float]] = field(default_factory=lambda: [((0.0, 0.0), 0.0)])
    exact: Optional[Callable[[np.ndarray], np.ndarray]] = None
    boundary_factor: float = 2.0

    def __post_init__(self):
        if self.n % 2 == 0:
            raise ValueError(f"preset {self.name!r} needs odd n so a vertex sits at the origin, got {self.n}")

    def with_mesh(self, n: Optional[int] = None, perturb: Optional[float] = None) -> "ProblemPreset":
        return replace(self,
                       n=self.n if n is None else n,
                       perturb=self.perturb if perturb is None else perturb)

    def build_mesh(self) -> TriMesh:
        return generate_grid_mesh(self.n, self.perturb, self.seed)

    def outer_boundary_value(self, bounds: RhoBounds) -> float:
        return bounds.rho_star_upper * DOMAIN_DIAMETER * self.boundary_factor

    def dirichlet(self, mesh: TriMesh, bounds: RhoBounds) -> Tuple[Dict[int, float], List[int]]:
        """Boundary data and the vertices carrying the point sources."""
        outer = self.outer_boundary_value(bounds)
        g = {v: outer for v in sorted(mesh.boundary_vertices)}
        source_vertices = []
        for point, value in self.sources:
            v = mesh.nearest_vertex(point)
            g[v] = float(value)
            source_vertices.append(v)
        return g, source_vertices

    def instantiate(self) -> PresetInstance:
        mesh = self.build_mesh()
        bounds = estimate_rho_bounds(self.model, mesh)
        g, sources = self.dirichlet(mesh, bounds)
        instance = PresetInstance(preset=self, mesh=mesh, g=g, bounds=bounds,
                                  quality=mesh_quality(mesh), source_vertices=sources)
        logger.info("preset %s n=%d: %d vertices, theta=%.4g, anisotropy=%.4g",
                    self.name, self.n, mesh.n_vertices, instance.quality.theta, instance.anisotropy)
        return instance


def _euclid_exact(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.asarray(points, dtype=float), axis=1)


def preset_point_source_euclid(n: int, perturb: float = DEFAULT_PERTURB,
                               seed: int = DEFAULT_SEED) -> ProblemPreset:
    """Distance to the origin; exact solution ||x|| on the whole (convex) square."""
    return ProblemPreset(name="euclid", n=n, model=RiemannianMetric.identity(),
                         perturb=perturb, seed=seed, exact=_euclid_exact)


def preset_torus(n: int, perturb: float = DEFAULT_PERTURB, seed: int = DEFAULT_SEED) -> ProblemPreset:
    """Geodesic distance to f(0) on the immersed torus, in parameter coordinates."""
    return ProblemPreset(name="torus", n=n, model=torus_metric(), perturb=perturb, seed=seed)


def preset_mintime(n: int, perturb: float = DEFAULT_PERTURB, seed: int = DEFAULT_SEED) -> ProblemPreset:
    """Minimum time to reach the origin under unit control and the drift field."""
    return ProblemPreset(name="mintime", n=n, model=mintime_metric(), perturb=perturb, seed=seed)


PRESETS: Dict[str, Callable[..., ProblemPreset]] = {
    "euclid": preset_point_source_euclid,
    "torus": preset_torus,
    "mintime": preset_mintime,
}


def get_preset(name: str, n: int, perturb: float = DEFAULT_PERTURB, seed: int = DEFAULT_SEED) -> ProblemPreset:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; expected one of {sorted(PRESETS)}")
    return factory(n, perturb=perturb, seed=seed)
