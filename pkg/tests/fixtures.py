"""
Small hand-built meshes shared by the test modules.
"""

import math

import numpy as np

from core.mesh import build_mesh


def fan_mesh():
    """[0,1]^2 split into 4 triangles around the centre vertex 4."""
    vertices = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)]
    triangles = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    return build_mesh(vertices, triangles)


def two_triangle_mesh():
    """Unit square split by the (0,0)-(1,1) diagonal."""
    return build_mesh([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], [(0, 1, 2), (0, 2, 3)])


def random_spd(rng, low=0.1, high=10.0):
    """Random 2x2 SPD matrix with eigenvalues in [low, high]."""
    angle = rng.uniform(0.0, math.pi)
    rot = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    return rot @ np.diag(rng.uniform(low, high, size=2)) @ rot.T


def random_triangle(rng, min_area=0.05):
    """Three points in the unit square spanning at least ``min_area``."""
    while True:
        p = rng.uniform(0.0, 1.0, size=(3, 2))
        area = 0.5 * abs((p[1, 0] - p[0, 0]) * (p[2, 1] - p[0, 1]) - (p[2, 0] - p[0, 0]) * (p[1, 1] - p[0, 1]))
        if area >= min_area:
            return p


def sampled_edge_minimum(x, y, z, uy, uz, gram, n_samples=10_000):
    """min over equispaced t of (1-t) uy + t uz + ||x - ((1-t) y + t z)||_gram."""
    t = np.linspace(0.0, 1.0, n_samples)
    points = (1.0 - t)[:, None] * np.asarray(y) + t[:, None] * np.asarray(z)
    d = np.asarray(x) - points
    dist = np.sqrt(np.einsum("si,ij,sj->s", d, gram, d))
    return float(np.min((1.0 - t) * uy + t * uz + dist))
