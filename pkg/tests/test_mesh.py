"""
Unit tests for mesh construction, quality, generation, I/O and interpolation.
"""

import math
import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.mesh import (
    Lcg64,
    MeshError,
    MeshFormatError,
    P1Interpolant,
    build_mesh,
    format_mesh,
    generate_grid_mesh,
    load_mesh,
    mesh_quality,
    parse_mesh,
    save_mesh,
)
from tests.fixtures import fan_mesh, two_triangle_mesh


class TestBuildMesh(unittest.TestCase):
    """Test cases for build_mesh."""

    def test_two_triangle_square(self):
        """Test boundary detection on a two-triangle square."""
        mesh = two_triangle_mesh()
        self.assertEqual(mesh.boundary_vertices, frozenset({0, 1, 2, 3}))
        for v in range(4):
            self.assertIn(len(mesh.vertex_patches[v]), (1, 2))
        self.assertEqual(mesh.interior_vertices, [])

    def test_fan_centre_is_unique_interior_vertex(self):
        """Test the fan has a single interior vertex."""
        mesh = fan_mesh()
        self.assertEqual(mesh.interior_vertices, [4])
        self.assertEqual(len(mesh.vertex_patches[4]), 4)
        self.assertEqual(mesh.vertex_neighbors[4], (0, 1, 2, 3))

    def test_orientation_is_counter_clockwise(self):
        """Test triangles are reoriented to positive area."""
        mesh = build_mesh([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 2, 1)])
        self.assertTrue(np.all(mesh.signed_areas() > 0.0))

    def test_duplicate_vertex_in_triangle(self):
        """Test a repeated vertex in a triangle is rejected."""
        with self.assertRaisesRegex(MeshError, "duplicate vertex in triangle"):
            build_mesh([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 0, 1)])

    def test_zero_area_triangle(self):
        """Test a degenerate triangle is rejected."""
        with self.assertRaisesRegex(MeshError, "zero-area triangle"):
            build_mesh([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], [(0, 1, 2)])

    def test_index_out_of_range(self):
        """Test out-of-range vertex indices are rejected."""
        with self.assertRaisesRegex(MeshError, "index out of range"):
            build_mesh([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 1, 3)])

    def test_non_manifold_edge(self):
        """Test an edge shared by three triangles is rejected."""
        vertices = [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (0.5, -1.0), (0.5, 2.0)]
        triangles = [(0, 1, 2), (0, 1, 3), (1, 0, 4)]
        with self.assertRaisesRegex(MeshError, "non-manifold edge"):
            build_mesh(vertices, triangles)

    def test_arrays_are_read_only(self):
        """Test mesh arrays cannot be modified."""
        mesh = fan_mesh()
        with self.assertRaises(ValueError):
            mesh.vertices[0, 0] = 1.0

    def test_nearest_vertex(self):
        """Test nearest vertex lookup."""
        self.assertEqual(fan_mesh().nearest_vertex((0.45, 0.52)), 4)


class TestMeshQuality(unittest.TestCase):
    """Test cases for mesh_quality."""

    def test_right_triangle(self):
        """Test the shape constant of a right triangle."""
        quality = mesh_quality(build_mesh([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 1, 2)]))
        self.assertAlmostEqual(quality.h, math.sqrt(2.0), places=12)
        self.assertAlmostEqual(quality.h0[0], 1.0 / math.sqrt(2.0), places=12)
        self.assertAlmostEqual(quality.theta, 2.0, places=12)

    def test_equilateral_triangle(self):
        """Test the shape constant of an equilateral triangle."""
        quality = mesh_quality(build_mesh([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)], [(0, 1, 2)]))
        self.assertAlmostEqual(quality.h, 1.0, places=12)
        self.assertAlmostEqual(quality.h0[0], math.sqrt(3.0) / 2.0, places=12)
        self.assertAlmostEqual(quality.theta, 2.0 / math.sqrt(3.0), places=12)

    def test_congruent_triangles_share_theta(self):
        """Test congruent triangles share the shape constant."""
        quality = mesh_quality(fan_mesh())
        self.assertTrue(np.allclose(quality.h1 / quality.h0, quality.theta))
        self.assertEqual(quality.summary()["n_triangles"], 4)


class TestGridGenerator(unittest.TestCase):
    """Test cases for generate_grid_mesh."""

    def test_smallest_grid(self):
        """Test the 2 x 2 grid."""
        mesh = generate_grid_mesh(2)
        self.assertEqual(mesh.n_vertices, 4)
        self.assertEqual(mesh.n_triangles, 2)
        self.assertEqual(len(mesh.boundary_vertices), 4)

    def test_counts(self):
        """Test vertex and triangle counts of the grid."""
        mesh = generate_grid_mesh(23, perturb=0.2, seed=1)
        self.assertEqual(mesh.n_vertices, 529)
        self.assertEqual(mesh.n_triangles, 968)
        self.assertEqual(len(mesh.boundary_vertices), 4 * 22)

    def test_determinism(self):
        """Test identical presets give identical meshes and solutions."""
        a = generate_grid_mesh(23, perturb=0.2, seed=1)
        b = generate_grid_mesh(23, perturb=0.2, seed=1)
        self.assertTrue(np.array_equal(a.vertices, b.vertices))
        self.assertTrue(np.array_equal(a.triangles, b.triangles))
        c = generate_grid_mesh(23, perturb=0.2, seed=2)
        self.assertFalse(np.array_equal(a.vertices, c.vertices))

    def test_boundary_and_centre_stay_put(self):
        """Test the perturbation keeps the boundary and the centre fixed."""
        mesh = generate_grid_mesh(11, perturb=0.25, seed=7)
        boundary = mesh.vertices[sorted(mesh.boundary_vertices)]
        self.assertTrue(np.all(np.isclose(np.abs(boundary).max(axis=1), 0.5)))
        self.assertEqual(tuple(mesh.vertices[mesh.nearest_vertex((0.0, 0.0))]), (0.0, 0.0))

    def test_perturbation_bound(self):
        """Test every offset stays within the perturbation bound."""
        flat = generate_grid_mesh(9)
        mesh = generate_grid_mesh(9, perturb=0.2, seed=3)
        shift = np.linalg.norm(mesh.vertices - flat.vertices, axis=1)
        self.assertLessEqual(shift.max(), 0.2 / 8 + 1e-15)
        self.assertGreater(shift.max(), 0.0)

    def test_invalid_arguments(self):
        """Test invalid grid size and perturbation are rejected."""
        with self.assertRaises(ValueError):
            generate_grid_mesh(1)
        with self.assertRaises(ValueError):
            generate_grid_mesh(5, perturb=0.3)

    def test_lcg_stream(self):
        """Test the first draws of the LCG stream."""
        rng = Lcg64(0)
        expected_state = 1442695040888963407
        self.assertEqual(rng.next_uniform(), (expected_state >> 11) * 2.0 ** -53)
        self.assertTrue(all(0.0 <= rng.next_uniform() < 1.0 for _ in range(100)))


class TestMeshIO(unittest.TestCase):
    """Test cases for the mesh text format."""

    def test_save_load_fan(self):
        """Test saving and loading the fan mesh."""
        mesh = fan_mesh()
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "fan.mesh"
            save_mesh(mesh, path)
            loaded = load_mesh(path)
        self.assertTrue(np.array_equal(loaded.vertices, mesh.vertices))
        self.assertTrue(np.array_equal(loaded.triangles, mesh.triangles))
        self.assertEqual(loaded.boundary_vertices, mesh.boundary_vertices)

    def test_perturbed_coordinates_survive_text(self):
        """Test perturbed coordinates survive the text format exactly."""
        mesh = generate_grid_mesh(7, perturb=0.2, seed=5)
        self.assertTrue(np.array_equal(parse_mesh(format_mesh(mesh)).vertices, mesh.vertices))

    def test_comments_and_blank_lines(self):
        """Test comments and blank lines are skipped."""
        text = "# fan\n3 1\n\n0 0\n1 0  # right\n0 1\n0 1 2\n"
        self.assertEqual(parse_mesh(text).n_triangles, 1)

    def test_wrong_triangle_count(self):
        """Test a short triangle list is reported with its line number."""
        text = "3 2\n0 0\n1 0\n0 1\n0 1 2\n"
        with self.assertRaises(MeshFormatError) as ctx:
            parse_mesh(text)
        self.assertEqual(ctx.exception.line_no, 5)

    def test_index_out_of_range(self):
        """Test out-of-range vertex indices are rejected."""
        text = "3 1\n0 0\n1 0\n0 1\n0 1 3\n"
        with self.assertRaisesRegex(MeshFormatError, "index out of range") as ctx:
            parse_mesh(text)
        self.assertEqual(ctx.exception.line_no, 5)


class TestP1Interpolant(unittest.TestCase):
    """Test cases for P1Interpolant."""

    def test_reproduces_linear_functions(self):
        """Test linear functions are interpolated exactly."""
        mesh = generate_grid_mesh(9, perturb=0.2, seed=1)
        values = 2.0 * mesh.vertices[:, 0] - 3.0 * mesh.vertices[:, 1] + 1.0
        points = np.random.default_rng(0).uniform(-0.5, 0.5, size=(50, 2))
        expected = 2.0 * points[:, 0] - 3.0 * points[:, 1] + 1.0
        self.assertTrue(np.allclose(P1Interpolant(mesh)(values, points), expected, atol=1e-12))

    def test_nodal_values(self):
        """Test interpolation at the vertices returns nodal values."""
        mesh = generate_grid_mesh(5, perturb=0.1, seed=2)
        values = np.arange(mesh.n_vertices, dtype=float)
        self.assertTrue(np.allclose(P1Interpolant(mesh)(values, mesh.vertices), values, atol=1e-9))

    def test_outside_point(self):
        """Test points outside the mesh are rejected."""
        with self.assertRaises(ValueError):
            P1Interpolant(fan_mesh()).locate((2.0, 2.0))


if __name__ == "__main__":
    unittest.main()
