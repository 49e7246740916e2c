"""
Nodal values of a linear finite-element function with a Dirichlet mask.
"""

import math
from dataclasses import dataclass
from typing import Dict, Mapping

import numpy as np

from ..mesh import TriMesh

BoundaryData = Mapping[int, float]


@dataclass
class NodalField:
    """
    Finite-element function by its nodal values.

    Attributes:
        values: value per vertex, +inf allowed at unknown vertices
        dirichlet: True where the value is prescribed
    """
    values: np.ndarray
    dirichlet: np.ndarray

    @classmethod
    def from_dirichlet(cls, mesh: TriMesh, g: BoundaryData, fill: float = math.inf) -> "NodalField":
        """
        Prescribe ``g`` and fill every other vertex with ``fill``.

        Every boundary vertex needs a value; interior keys act as point sources.

        Raises:
            ValueError: on missing boundary values, unknown indices or
                non-finite data
        """
        values = np.full(mesh.n_vertices, float(fill))
        dirichlet = np.zeros(mesh.n_vertices, dtype=bool)
        for v, value in g.items():
            v = int(v)
            if not 0 <= v < mesh.n_vertices:
                raise ValueError(f"Dirichlet vertex {v} out of range")
            if not math.isfinite(value):
                raise ValueError(f"Dirichlet value at vertex {v} must be finite, got {value}")
            values[v] = float(value)
            dirichlet[v] = True
        missing = [v for v in sorted(mesh.boundary_vertices) if not dirichlet[v]]
        if missing:
            raise ValueError(f"boundary vertices without Dirichlet value: {missing[:5]}")
        return cls(values=values, dirichlet=dirichlet)

    @property
    def unknown(self) -> np.ndarray:
        return ~self.dirichlet

    def boundary_data(self) -> Dict[int, float]:
        return {int(v): float(self.values[v]) for v in np.flatnonzero(self.dirichlet)}

    def copy(self) -> "NodalField":
        return NodalField(values=self.values.copy(), dirichlet=self.dirichlet.copy())
