"""
Shape-regularity measures of a triangulation.
"""

from dataclasses import dataclass

import numpy as np

from .trimesh import TriMesh


@dataclass
class MeshQuality:
    """
    Shape measures of a triangulation.

    Attributes:
        h: maximal triangle diameter
        theta: regularity constant, max over triangles of h1/h0
        h1: per-triangle diameter (longest edge)
        h0: per-triangle minimal vertex height
    """
    h: float
    theta: float
    h1: np.ndarray
    h0: np.ndarray

    def summary(self) -> dict:
        return {"h": self.h, "theta": self.theta, "n_triangles": int(self.h1.shape[0])}


def mesh_quality(mesh: TriMesh) -> MeshQuality:
    """
    Compute h, the per-triangle (h1, h0) pairs and theta.

    The minimal height of a triangle is the height over its longest edge, that
    is twice the area divided by h1.
    """
    p = mesh.vertices[mesh.triangles]
    edge_lengths = np.linalg.norm(p - np.roll(p, 1, axis=1), axis=2)
    h1 = np.max(edge_lengths, axis=1)
    h0 = 2.0 * np.abs(mesh.signed_areas()) / h1
    if h1.size == 0:
        return MeshQuality(h=0.0, theta=1.0, h1=h1, h0=h0)
    return MeshQuality(h=float(h1.max()), theta=float(np.max(h1 / h0)), h1=h1, h0=h0)
