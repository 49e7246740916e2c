"""
Reproducible mesh generation.

Perturbed criss-cross grids on [-0.5, 0.5]^2 driven by a documented 64-bit
linear congruential stream, so any implementation of the recipe reproduces the
same meshes bit for bit.
"""

import math

import numpy as np

from .trimesh import MeshError, TriMesh, _signed_areas, build_mesh

DOMAIN_LOWER = -0.5
DOMAIN_UPPER = 0.5
MAX_PERTURB = 0.25


class Lcg64:
    """
    64-bit linear congruential generator.

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64;
    a uniform draw in [0, 1) is the top 53 bits of the new state times 2^-53.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = int(seed) & self.MASK

    def next_uniform(self) -> float:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return (self.state >> 11) * 2.0 ** -53


def grid_vertex_index(n: int, i: int, j: int) -> int:
    """Index of grid vertex (i, j); i runs along x, j along y."""
    return j * n + i


def generate_grid_mesh(n: int, perturb: float = 0.0, seed: int = 0) -> TriMesh:
    """
    Generate a perturbed criss-cross triangulation of [-0.5, 0.5]^2.

    Cell (i, j) is split along the v00-v11 diagonal when i + j is even and along
    v10-v01 otherwise. Each interior vertex, in index order, draws a radius
    r = perturb * cell * U1 and an angle 2 pi U2 and moves by that polar offset.
    For odd n the centre vertex consumes its draws but stays at the origin.

    Args:
        n: vertices per side, at least 2
        perturb: displacement bound as a fraction of the cell size, in [0, 0.25]
        seed: LCG seed

    Returns:
        TriMesh with n^2 vertices and 2 (n-1)^2 triangles
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 0.0 <= perturb <= MAX_PERTURB:
        raise ValueError(f"perturb must lie in [0, {MAX_PERTURB}], got {perturb}")

    cell = (DOMAIN_UPPER - DOMAIN_LOWER) / (n - 1)
    coords = DOMAIN_LOWER + cell * np.arange(n)
    # Pin the outer coordinates exactly
    coords[-1] = DOMAIN_UPPER
    if n % 2 == 1:
        coords[(n - 1) // 2] = 0.0

    xs, ys = np.meshgrid(coords, coords)
    vertices = np.column_stack([xs.ravel(), ys.ravel()])

    if perturb > 0.0:
        rng = Lcg64(seed)
        centre = grid_vertex_index(n, (n - 1) // 2, (n - 1) // 2) if n % 2 == 1 else -1
        for j in range(1, n - 1):
            for i in range(1, n - 1):
                r = perturb * cell * rng.next_uniform()
                angle = 2.0 * math.pi * rng.next_uniform()
                v = grid_vertex_index(n, i, j)
                if v == centre:
                    continue
                vertices[v, 0] += r * math.cos(angle)
                vertices[v, 1] += r * math.sin(angle)

    triangles = []
    for j in range(n - 1):
        for i in range(n - 1):
            v00 = grid_vertex_index(n, i, j)
            v10 = v00 + 1
            v01 = v00 + n
            v11 = v01 + 1
            if (i + j) % 2 == 0:
                triangles.append((v00, v10, v11))
                triangles.append((v00, v11, v01))
            else:
                triangles.append((v00, v10, v01))
                triangles.append((v10, v11, v01))
    triangles = np.array(triangles, dtype=np.int64)

    if np.any(_signed_areas(vertices, triangles) <= 0.0):
        raise MeshError(f"perturbation produced an inverted triangle (n={n}, perturb={perturb}, seed={seed})")
    return build_mesh(vertices, triangles)
