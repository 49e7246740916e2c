"""
Piecewise-linear evaluation of nodal fields at arbitrary points.
"""

import math
from typing import List

import numpy as np

from .trimesh import TriMesh


class P1Interpolant:
    """
    Point location plus barycentric weights on a fixed triangulation.

    Triangles are registered in a uniform bucket grid over the bounding box by
    their bounding boxes; a query checks the candidates of its bucket only.
    """

    def __init__(self, mesh: TriMesh, tolerance: float = 1e-10):
        self.mesh = mesh
        self.tolerance = tolerance
        p = mesh.vertices[mesh.triangles]
        self._origin = p[:, 0, :]
        jac = np.stack([p[:, 1, :] - p[:, 0, :], p[:, 2, :] - p[:, 0, :]], axis=2)
        self._inverse = np.linalg.inv(jac)

        self._lower = mesh.vertices.min(axis=0)
        extent = np.maximum(mesh.vertices.max(axis=0) - self._lower, 1e-300)
        self._k = max(1, int(math.sqrt(max(mesh.n_triangles, 1) / 2.0)))
        self._cell = extent / self._k

        buckets: List[List[int]] = [[] for _ in range(self._k * self._k)]
        lo = self._bucket_coords(p.min(axis=1))
        hi = self._bucket_coords(p.max(axis=1))
        for t in range(mesh.n_triangles):
            for by in range(lo[t, 1], hi[t, 1] + 1):
                for bx in range(lo[t, 0], hi[t, 0] + 1):
                    buckets[by * self._k + bx].append(t)
        self._buckets = [np.array(b, dtype=np.int64) for b in buckets]

    def _bucket_coords(self, points: np.ndarray) -> np.ndarray:
        idx = np.floor((points - self._lower) / self._cell).astype(np.int64)
        return np.clip(idx, 0, self._k - 1)

    def locate(self, point) -> tuple:
        """
        Find the triangle containing ``point``.

        Returns:
            (triangle index, barycentric weights) for the vertices of that
            triangle in stored order

        Raises:
            ValueError: if the point lies outside the triangulation
        """
        point = np.asarray(point, dtype=float)
        bx, by = self._bucket_coords(point[None, :])[0]
        candidates = self._buckets[by * self._k + bx]
        if candidates.size:
            local = np.einsum("tij,tj->ti", self._inverse[candidates], point - self._origin[candidates])
            weights = np.column_stack([1.0 - local.sum(axis=1), local])
            worst = weights.min(axis=1)
            best = int(np.argmax(worst))
            if worst[best] >= -self.tolerance:
                return int(candidates[best]), weights[best]
        raise ValueError(f"point {tuple(point)} lies outside the triangulation")

    def __call__(self, values: np.ndarray, points: np.ndarray) -> np.ndarray:
        """Evaluate the P1 function with nodal ``values`` at each row of ``points``."""
        values = np.asarray(values, dtype=float)
        out = np.empty(len(points))
        for i, point in enumerate(np.asarray(points, dtype=float)):
            t, w = self.locate(point)
            out[i] = float(np.dot(w, values[self.mesh.triangles[t]]))
        return out
