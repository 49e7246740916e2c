"""
Hopf-Lax Operator

Patch-wise update (Lambda_h u)(x) = min over the triangles around x of the
triangle update, with per-vertex stencils cached once per (mesh, model).
"""

import logging
from typing import TYPE_CHECKING, List, Optional, Sequence

import numpy as np

from ..hamiltonian import MetricModel
from ..mesh import TriMesh
from .triangle import (
    DEFAULT_TOL_1D,
    INF,
    TriangleUpdateInput,
    closed_form_update,
    triangle_update_generic,
    triangle_update_riemannian,
)

if TYPE_CHECKING:
    from ..solver.field import NodalField

logger = logging.getLogger(__name__)


class HopfLaxOperator:
    """
    Cached Hopf-Lax update on a fixed mesh and model.

    For models with an elliptic frozen form every (vertex, triangle) pair of
    the mesh is reduced to the constants of the closed-form update; the scalar
    update then costs a few floating-point operations per triangle and the
    batch update is fully vectorized. Other models go through golden-section
    search per triangle.
    """

    def __init__(self, mesh: TriMesh, model: MetricModel, tol_1d: float = DEFAULT_TOL_1D,
                 closed_form: bool = True):
        self.mesh = mesh
        self.model = model
        self.tol_1d = tol_1d
        self.closed_form = bool(closed_form and model.has_frozen_form)

        tris = mesh.triangles
        owner = tris.reshape(-1)
        tri_index = np.repeat(np.arange(mesh.n_triangles), 3)
        iy = tris[:, [1, 2, 0]].reshape(-1)
        iz = tris[:, [2, 0, 1]].reshape(-1)
        order = np.lexsort((tri_index, owner))
        self.owner = owner[order]
        self.iy = iy[order]
        self.iz = iz[order]
        self.patch_sizes = np.bincount(self.owner, minlength=mesh.n_vertices)
        self.offsets = np.concatenate([[0], np.cumsum(self.patch_sizes)[:-1]])

        if self.closed_form:
            self._build_closed_form()
        else:
            self._stencils = self._split(list(zip(self.iy.tolist(), self.iz.tolist())))
        logger.debug("HopfLaxOperator: %d stencil entries, closed_form=%s",
                     self.owner.size, self.closed_form)

    def _split(self, rows: list) -> List[list]:
        bounds = np.concatenate([self.offsets, [len(rows)]]).tolist()
        return [rows[bounds[v]:bounds[v + 1]] for v in range(self.mesh.n_vertices)]

    def _build_closed_form(self) -> None:
        verts = self.mesh.vertices
        grams = np.empty((self.mesh.n_vertices, 2, 2))
        shifts = np.empty((self.mesh.n_vertices, 2))
        for v in range(self.mesh.n_vertices):
            form = self.model.frozen_form(verts[v])
            grams[v] = form.gram
            shifts[v] = form.shift

        g = grams[self.owner]
        c = shifts[self.owner]
        x = verts[self.owner]
        dy = x - verts[self.iy]
        dz = x - verts[self.iz]
        e = verts[self.iz] - verts[self.iy]

        def inner(a, b):
            return np.einsum("si,sij,sj->s", a, g, b)

        self.ly = np.sqrt(inner(dy, dy))
        self.lz = np.sqrt(inner(dz, dz))
        self.lyz = np.sqrt(inner(e, e))
        self.ca = inner(dy, e) / (self.ly * self.lyz)
        self.cb = -inner(dz, e) / (self.lz * self.lyz)
        self.sy = np.einsum("si,si->s", c, dy)
        self.sz = np.einsum("si,si->s", c, dz)
        self._stencils = self._split(list(zip(
            self.iy.tolist(), self.iz.tolist(), self.ly.tolist(), self.lz.tolist(),
            self.lyz.tolist(), self.ca.tolist(), self.cb.tolist(),
            self.sy.tolist(), self.sz.tolist())))

    def update(self, values: Sequence[float], v: int) -> float:
        """(Lambda_h u)(v) ignoring any Dirichlet status of v."""
        best = INF
        if self.closed_form:
            for iy, iz, ly, lz, lyz, ca, cb, sy, sz in self._stencils[v]:
                val = closed_form_update(values[iy] + sy, values[iz] + sz, ly, lz, lyz, ca, cb)
                if val < best:
                    best = val
            return best
        verts = self.mesh.vertices
        x = verts[v]
        for iy, iz in self._stencils[v]:
            val = triangle_update_generic(
                TriangleUpdateInput(x, verts[iy], verts[iz], values[iy], values[iz], self.model),
                self.tol_1d)
            if val < best:
                best = val
        return best

    def apply(self, values: np.ndarray, vertices: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Lambda_h applied at ``vertices`` (all vertices by default), Dirichlet
        status ignored.
        """
        values = np.asarray(values, dtype=float)
        if not self.closed_form:
            targets = range(self.mesh.n_vertices) if vertices is None else np.asarray(vertices).tolist()
            return np.array([self.update(values, v) for v in targets], dtype=float)
        result = self._apply_closed_form(values)
        return result if vertices is None else result[vertices]

    def _apply_closed_form(self, values: np.ndarray) -> np.ndarray:
        uy = values[self.iy] + self.sy
        uz = values[self.iz] + self.sz
        vy = uy + self.ly
        vz = uz + self.lz
        with np.errstate(invalid="ignore"):
            delta = (uz - uy) / self.lyz
            radicand = np.maximum((1.0 - self.ca * self.ca) * (1.0 - delta * delta), 0.0)
            mid = uy + (self.ca * delta + np.sqrt(radicand)) * self.ly
            out = np.where(self.ca <= delta, vy, np.where(delta <= -self.cb, vz, mid))
        out = np.where(uy == INF, vz, out)
        out = np.where(uz == INF, vy, out)
        return np.minimum.reduceat(out, self.offsets)

    def residual(self, values: np.ndarray, unknown: np.ndarray) -> float:
        """max over unknown vertices of |u - Lambda_h u|; inf - inf counts as 0."""
        values = np.asarray(values, dtype=float)
        if not np.any(unknown):
            return 0.0
        updated = self.apply(values)[unknown]
        current = values[unknown]
        with np.errstate(invalid="ignore"):
            diff = np.abs(current - updated)
        diff[(updated == INF) & (current == INF)] = 0.0
        return float(diff.max())


def hopf_lax_update(mesh: TriMesh, model: MetricModel, field: "NodalField", v: int,
                    tol_1d: float = DEFAULT_TOL_1D, closed_form: bool = True) -> float:
    """
    Evaluate (Lambda_h u)(v) directly from the triangles around v.

    Boundary and Dirichlet vertices keep their field value. The closed form is
    used whenever the model provides one and ``closed_form`` is set.
    """
    if field.dirichlet[v] or v in mesh.boundary_vertices:
        return float(field.values[v])
    patch = mesh.vertex_patches[v]
    assert patch, f"vertex {v} has an empty patch"

    use_closed = closed_form and model.has_frozen_form
    verts = mesh.vertices
    values = field.values
    best = INF
    for t in patch:
        tri = mesh.triangles[t].tolist()
        k = tri.index(v)
        iy, iz = tri[(k + 1) % 3], tri[(k + 2) % 3]
        inp = TriangleUpdateInput(tuple(verts[v]), tuple(verts[iy]), tuple(verts[iz]),
                                  float(values[iy]), float(values[iz]), model)
        val = triangle_update_riemannian(inp) if use_closed else triangle_update_generic(inp, tol_1d)
        best = min(best, val)
    return best
