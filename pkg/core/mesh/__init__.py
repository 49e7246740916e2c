"""
Mesh Package

Triangulations, shape quality, generation, file I/O and P1 interpolation.
"""

from .trimesh import TriMesh, MeshError, build_mesh
from .quality import MeshQuality, mesh_quality
from .generator import Lcg64, generate_grid_mesh, grid_vertex_index
from .io import MeshFormatError, load_mesh, save_mesh, parse_mesh, format_mesh
from .interpolation import P1Interpolant

__all__ = [
    'TriMesh',
    'MeshError',
    'build_mesh',
    'MeshQuality',
    'mesh_quality',
    'Lcg64',
    'generate_grid_mesh',
    'grid_vertex_index',
    'MeshFormatError',
    'load_mesh',
    'save_mesh',
    'parse_mesh',
    'format_mesh',
    'P1Interpolant',
]
