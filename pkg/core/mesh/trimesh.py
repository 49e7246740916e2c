"""
Triangulation Module

Planar triangulation with vertex patches, vertex neighbours and boundary
classification by edge incidence.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple

import networkx as nx
import numpy as np

logger = logging.getLogger(__name__)


class MeshError(ValueError):
    """Raised when a triangulation violates a structural invariant."""


@dataclass(frozen=True)
class TriMesh:
    """
    Immutable planar triangulation.

    Attributes:
        vertices: (nv, 2) vertex coordinates
        triangles: (nt, 3) vertex indices, counter-clockwise
        boundary_vertices: vertices lying on an edge owned by one triangle
        vertex_patches: incident triangle indices per vertex (ascending)
        vertex_neighbors: edge-adjacent vertex indices per vertex (ascending)
    """
    vertices: np.ndarray
    triangles: np.ndarray
    boundary_vertices: FrozenSet[int]
    vertex_patches: Tuple[Tuple[int, ...], ...]
    vertex_neighbors: Tuple[Tuple[int, ...], ...]

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    @property
    def boundary_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_vertices, dtype=bool)
        mask[list(self.boundary_vertices)] = True
        return mask

    @property
    def interior_vertices(self) -> List[int]:
        return [v for v in range(self.n_vertices) if v not in self.boundary_vertices]

    def signed_areas(self) -> np.ndarray:
        """Signed area of every triangle."""
        return _signed_areas(self.vertices, self.triangles)

    def nearest_vertex(self, point: Sequence[float]) -> int:
        """Index of the vertex closest to ``point`` (lowest index on ties)."""
        d = np.sum((self.vertices - np.asarray(point, dtype=float)) ** 2, axis=1)
        return int(np.argmin(d))


def _signed_areas(vertices: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p0 = vertices[triangles[:, 0]]
    p1 = vertices[triangles[:, 1]]
    p2 = vertices[triangles[:, 2]]
    return 0.5 * ((p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1])
                  - (p2[:, 0] - p0[:, 0]) * (p1[:, 1] - p0[:, 1]))


def _unique_edges(triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Sorted unique edges and their triangle incidence counts."""
    if triangles.shape[0] == 0:
        return np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=np.int64)
    edges = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    edges = np.sort(edges, axis=1)
    return np.unique(edges, axis=0, return_counts=True)


def build_mesh(vertices, triangles) -> TriMesh:
    """
    Build a validated triangulation.

    Triangles with negative orientation are flipped so every stored triangle has
    positive signed area.

    Args:
        vertices: sequence of (x, y) points
        triangles: sequence of (i, j, k) vertex indices, 0-based

    Returns:
        TriMesh with adjacency and boundary classification

    Raises:
        MeshError: on out-of-range indices, repeated vertices, zero-area or
            non-manifold configurations, or vertices not edge-connected to the
            boundary
    """
    verts = np.array(vertices, dtype=float)
    if verts.size == 0:
        verts = verts.reshape(0, 2)
    if verts.ndim != 2 or verts.shape[1] != 2:
        raise MeshError(f"vertices must have shape (nv, 2), got {verts.shape}")
    if not np.all(np.isfinite(verts)):
        raise MeshError("vertex coordinates must be finite")

    tris = np.array(triangles, dtype=np.int64)
    if tris.size == 0:
        tris = tris.reshape(0, 3)
    if tris.ndim != 2 or tris.shape[1] != 3:
        raise MeshError(f"triangles must have shape (nt, 3), got {tris.shape}")

    nv = verts.shape[0]
    bad = np.argwhere((tris < 0) | (tris >= nv))
    if bad.size:
        t, k = bad[0]
        raise MeshError(f"index out of range: triangle {t} references vertex {tris[t, k]} "
                        f"(vertex count {nv})")

    dup = (tris[:, 0] == tris[:, 1]) | (tris[:, 1] == tris[:, 2]) | (tris[:, 0] == tris[:, 2])
    if np.any(dup):
        raise MeshError(f"duplicate vertex in triangle {int(np.argmax(dup))}")

    areas = _signed_areas(verts, tris)
    if tris.shape[0]:
        p = verts[tris]
        scale = np.max(np.sum((p - np.roll(p, 1, axis=1)) ** 2, axis=2), axis=1)
        flat = np.abs(areas) <= 8.0 * np.finfo(float).eps * scale
        if np.any(flat):
            raise MeshError(f"zero-area triangle {int(np.argmax(flat))}")
    flip = areas < 0
    if np.any(flip):
        logger.debug("build_mesh: flipping %d triangles to positive orientation", int(flip.sum()))
        tris[flip] = tris[flip][:, [0, 2, 1]]

    edges, counts = _unique_edges(tris)
    if np.any(counts > 2):
        i, j = edges[int(np.argmax(counts > 2))]
        raise MeshError(f"non-manifold edge ({i}, {j}) shared by more than two triangles")
    boundary = frozenset(int(v) for v in np.unique(edges[counts == 1]))

    patches: List[List[int]] = [[] for _ in range(nv)]
    for t, tri in enumerate(tris.tolist()):
        for v in tri:
            patches[v].append(t)

    graph = nx.Graph()
    graph.add_nodes_from(range(nv))
    graph.add_edges_from(edges.tolist())
    for component in nx.connected_components(graph):
        if component.isdisjoint(boundary):
            raise MeshError(f"disconnected interior vertex {min(component)}")

    neighbors = tuple(tuple(sorted(graph.adj[v])) for v in range(nv))

    verts.setflags(write=False)
    tris.setflags(write=False)
    mesh = TriMesh(
        vertices=verts,
        triangles=tris,
        boundary_vertices=boundary,
        vertex_patches=tuple(tuple(p) for p in patches),
        vertex_neighbors=neighbors,
    )
    logger.debug("build_mesh: %d vertices, %d triangles, %d boundary",
                 mesh.n_vertices, mesh.n_triangles, len(boundary))
    return mesh
