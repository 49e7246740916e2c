"""
Unit tests for the fixed-point solvers and solution diagnostics.
"""

import json
import math
import sys
import unittest
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from core.hamiltonian import RiemannianMetric, mintime_metric
from core.local_update import HopfLaxOperator
from core.mesh import generate_grid_mesh, mesh_quality
from core.experiments import get_preset
from core.solver import (
    MonotonicityRecorder,
    NodalField,
    SolverConfig,
    SolverKind,
    SolveStats,
    compare_boundary_data,
    lipschitz_constant,
    residual,
    solve,
    solve_adaptive_gs,
    solve_gauss_seidel,
    solve_jacobi,
)
from tests.fixtures import fan_mesh, two_triangle_mesh

IDENTITY = RiemannianMetric.identity()
FAN_G = {0: 0.0, 1: 0.0, 2: 0.0, 3: 0.0}


class TestSolverConfig(unittest.TestCase):
    """Test cases for SolverConfig and SolveStats."""

    def test_defaults(self):
        """Test the default solver settings."""
        config = SolverConfig()
        self.assertEqual(config.kind, SolverKind.ADAPTIVE_GS)
        self.assertEqual(config.tol, 1e-8)
        self.assertTrue(config.closed_form)

    def test_from_json_coerces_kind(self):
        """Test JSON loading converts the solver name to SolverKind."""
        config = SolverConfig.from_json(json.dumps({"kind": "jacobi", "tol": 1e-6}))
        self.assertEqual(config.kind, SolverKind.JACOBI)
        self.assertEqual(config.tol, 1e-6)
        self.assertEqual(config.max_sweeps, 100000)

    def test_validation(self):
        """Test invalid settings are rejected."""
        with self.assertRaises(ValueError):
            SolverConfig(tol=0.0)
        with self.assertRaises(ValueError):
            SolverConfig(max_sweeps=0)
        with self.assertRaises(ValueError):
            SolverConfig(kind="newton")

    def test_stats_record_hides_timing(self):
        """Test the record hides wall time unless requested."""
        stats = SolveStats(solver="jacobi", n_vertices=5, n_triangles=4, wall_time_s=0.25)
        self.assertIsNone(stats.record(include_timing=False)["wall_time_s"])
        self.assertEqual(stats.record()["wall_time_s"], 0.25)

    def test_record_json_is_sorted_and_finite(self):
        """The JSON stats record has sorted keys and writes a non-finite residual as null."""
        stats = SolveStats(solver="jacobi", n_vertices=5, n_triangles=4, wall_time_s=0.25)
        record = json.loads(stats.record_json(include_timing=False))
        self.assertEqual(list(record), sorted(record))
        self.assertIsNone(record["final_residual"])
        self.assertIsNone(record["wall_time_s"])
        self.assertEqual(json.loads(stats.record_json())["wall_time_s"], 0.25)


class TestNodalField(unittest.TestCase):
    """Test cases for NodalField."""

    def test_from_dirichlet(self):
        """Test a field built from Dirichlet data."""
        field = NodalField.from_dirichlet(fan_mesh(), FAN_G)
        self.assertEqual(field.unknown.tolist(), [False] * 4 + [True])
        self.assertEqual(field.values[4], math.inf)
        self.assertEqual(field.boundary_data(), FAN_G)

    def test_missing_boundary_value(self):
        """Test a boundary vertex without data is rejected."""
        with self.assertRaises(ValueError):
            NodalField.from_dirichlet(fan_mesh(), {0: 0.0, 1: 0.0, 2: 0.0})

    def test_non_finite_value(self):
        """Test non-finite Dirichlet values are rejected."""
        with self.assertRaises(ValueError):
            NodalField.from_dirichlet(fan_mesh(), {0: math.inf, 1: 0.0, 2: 0.0, 3: 0.0})


class TestFanMesh(unittest.TestCase):
    """Single interior vertex: one application of Lambda_h is exact."""

    def setUp(self):
        self.mesh = fan_mesh()

    def test_jacobi(self):
        """Test Jacobi on the fan mesh."""
        field, stats = solve_jacobi(self.mesh, IDENTITY, FAN_G)
        self.assertAlmostEqual(field.values[4], 0.5, delta=1e-15)
        self.assertLessEqual(stats.sweeps_or_pops, 2)
        self.assertTrue(stats.converged)

    def test_gauss_seidel(self):
        """Test Gauss-Seidel on the fan mesh."""
        field, stats = solve_gauss_seidel(self.mesh, IDENTITY, FAN_G)
        self.assertAlmostEqual(field.values[4], 0.5, delta=1e-15)
        self.assertEqual(stats.triangle_updates, 4 * stats.sweeps_or_pops)

    def test_adaptive(self):
        """Test adaptive Gauss-Seidel on the fan mesh."""
        field, stats = solve_adaptive_gs(self.mesh, IDENTITY, FAN_G)
        self.assertAlmostEqual(field.values[4], 0.5, delta=1e-15)
        self.assertEqual(stats.sweeps_or_pops, 1)
        self.assertEqual(stats.triangle_updates, 4)

    def test_logs_start_and_finish(self):
        """Each solver logs its start and its outcome at INFO."""
        for kind in SolverKind:
            with self.assertLogs("core.solver.iterative", level="INFO") as logs:
                solve(self.mesh, IDENTITY, FAN_G, SolverConfig(kind=kind))
            messages = "\n".join(logs.output)
            self.assertIn(f"{kind.value}: start", messages)
            self.assertIn(f"{kind.value}: converged", messages)

    def test_exact_fixed_point_residual(self):
        """Test the residual of the exact fixed point."""
        field = NodalField.from_dirichlet(self.mesh, FAN_G)
        field.values[4] = 0.5
        self.assertLessEqual(residual(self.mesh, IDENTITY, field), 1e-15)

    def test_initial_field_residual(self):
        """Test the residual of the initial field is infinite."""
        field = NodalField.from_dirichlet(self.mesh, FAN_G)
        self.assertEqual(residual(self.mesh, IDENTITY, field), math.inf)

    def test_no_interior_vertices(self):
        """Test meshes without unknowns return the data unchanged."""
        g = {0: 1.0, 1: 2.0, 2: 3.0, 3: 4.0}
        for kind in SolverKind:
            field, stats = solve(two_triangle_mesh(), IDENTITY, g, SolverConfig(kind=kind))
            self.assertEqual(field.boundary_data(), g)
            self.assertEqual(stats.triangle_updates, 0)
            self.assertTrue(stats.converged)


class TestSolversOnPresets(unittest.TestCase):
    """Agreement, monotonicity and accounting on small presets."""

    @classmethod
    def setUpClass(cls):
        cls.instances = {name: get_preset(name, 13).instantiate() for name in ("euclid", "torus", "mintime")}

    def test_solvers_agree(self):
        """Test all solvers reach the same fixed point."""
        for name, inst in self.instances.items():
            model = inst.preset.model
            op = HopfLaxOperator(inst.mesh, model)
            fields = {}
            for kind in SolverKind:
                field, stats = solve(inst.mesh, model, inst.g, SolverConfig(kind=kind), operator=op)
                self.assertTrue(stats.converged, f"{name} {kind.value}")
                self.assertLessEqual(stats.final_residual, 1e-8)
                fields[kind] = field.values
            base = fields[SolverKind.ADAPTIVE_GS]
            for kind, values in fields.items():
                self.assertLessEqual(float(np.max(np.abs(values - base))), 2e-8, f"{name} {kind.value}")

    def test_monotone_iterates(self):
        """Test Jacobi and adaptive iterates move monotonically."""
        for name, inst in self.instances.items():
            model = inst.preset.model
            jacobi = MonotonicityRecorder()
            solve_jacobi(inst.mesh, model, inst.g, observer=jacobi)
            self.assertLessEqual(jacobi.sweep_decrease, 1e-12, name)
            adaptive = MonotonicityRecorder()
            solve_adaptive_gs(inst.mesh, model, inst.g, observer=adaptive)
            self.assertLessEqual(adaptive.update_increase, 1e-12, name)
            self.assertGreater(adaptive.n_updates, 0)

    def test_gauss_seidel_accounting(self):
        """Test Gauss-Seidel counts one patch per unknown per sweep."""
        inst = self.instances["torus"]
        field, stats = solve_gauss_seidel(inst.mesh, inst.preset.model, inst.g)
        per_sweep = sum(len(inst.mesh.vertex_patches[v]) for v in np.flatnonzero(field.unknown))
        self.assertEqual(stats.triangle_updates, per_sweep * stats.sweeps_or_pops)

    def test_gauss_seidel_needs_no_more_sweeps_than_jacobi(self):
        """Test Gauss-Seidel needs no more sweeps than Jacobi."""
        inst = self.instances["torus"]
        _, gs = solve_gauss_seidel(inst.mesh, inst.preset.model, inst.g)
        _, jacobi = solve_jacobi(inst.mesh, inst.preset.model, inst.g)
        self.assertLessEqual(gs.sweeps_or_pops, jacobi.sweeps_or_pops)

    def test_adaptive_needs_no_more_updates_than_gauss_seidel(self):
        """The adaptive queue does no more triangle updates than full Gauss-Seidel sweeps."""
        for name, inst in self.instances.items():
            model = inst.preset.model
            _, gs = solve_gauss_seidel(inst.mesh, model, inst.g)
            _, adaptive = solve_adaptive_gs(inst.mesh, model, inst.g)
            self.assertLessEqual(adaptive.triangle_updates, gs.triangle_updates, name)

    def test_sweep_cap_reports_non_convergence(self):
        """Test hitting the sweep cap reports non-convergence."""
        inst = self.instances["euclid"]
        config = SolverConfig(kind=SolverKind.JACOBI, max_sweeps=2)
        field, stats = solve(inst.mesh, inst.preset.model, inst.g, config)
        self.assertFalse(stats.converged)
        self.assertEqual(stats.sweeps_or_pops, 2)
        self.assertGreater(stats.final_residual, config.tol)

    def test_generic_path_agrees(self):
        """Test the golden-section path agrees with the closed form."""
        inst = get_preset("mintime", 7).instantiate()
        model = inst.preset.model
        closed, _ = solve(inst.mesh, model, inst.g)
        generic, _ = solve(inst.mesh, model, inst.g, SolverConfig(closed_form=False))
        self.assertLessEqual(float(np.max(np.abs(closed.values - generic.values))), 1e-7)

    def test_operator_from_other_mesh_rejected(self):
        """Test an operator built for another mesh is refused."""
        inst = self.instances["euclid"]
        op = HopfLaxOperator(fan_mesh(), IDENTITY)
        with self.assertRaises(ValueError):
            solve(inst.mesh, inst.preset.model, inst.g, operator=op)


class TestComparisonAndLipschitz(unittest.TestCase):
    """Test cases for compare_boundary_data and lipschitz_constant."""

    def setUp(self):
        self.mesh = generate_grid_mesh(11, perturb=0.2, seed=1)
        self.boundary = sorted(self.mesh.boundary_vertices)

    def test_identical_data(self):
        """Test identical data give identical fields."""
        g = {v: 0.0 for v in self.boundary}
        report = compare_boundary_data(self.mesh, IDENTITY, g, g)
        self.assertTrue(np.array_equal(report.field1.values, report.field2.values))

    def test_constant_shift(self):
        """Test shifted data give shifted fields."""
        g1 = {v: float(i % 3) * 0.01 for i, v in enumerate(self.boundary)}
        g2 = {v: value + 0.7 for v, value in g1.items()}
        report = compare_boundary_data(self.mesh, IDENTITY, g1, g2)
        self.assertTrue(np.allclose(report.field2.values, report.field1.values + 0.7, atol=2e-8))
        self.assertTrue(report.ordered)

    def test_random_ordered_pairs(self):
        """Test random ordered data give ordered fields."""
        rng = np.random.default_rng(6)
        model = mintime_metric()
        for _ in range(5):
            g1 = {v: float(rng.uniform(0.0, 0.1)) for v in self.boundary}
            g2 = {v: value + float(rng.uniform(0.0, 0.1)) for v, value in g1.items()}
            self.assertTrue(compare_boundary_data(self.mesh, model, g1, g2).ordered)

    def test_rejects_unordered_data(self):
        """Test data that are not ordered are rejected."""
        g1 = {v: 1.0 for v in self.boundary}
        g2 = {v: 0.0 for v in self.boundary}
        with self.assertRaises(ValueError):
            compare_boundary_data(self.mesh, IDENTITY, g1, g2)

    def test_lipschitz_of_linear_field(self):
        """Test the Lipschitz constant of a linear field."""
        values = 3.0 * self.mesh.vertices[:, 0] + 4.0 * self.mesh.vertices[:, 1]
        constant = lipschitz_constant(self.mesh, values)
        self.assertLessEqual(constant, 5.0 + 1e-12)
        self.assertGreater(constant, 4.99)

    def test_lipschitz_bound_on_solution(self):
        """Test a solved field respects the Lipschitz bound."""
        g = {v: 0.0 for v in self.boundary}
        field, _ = solve(self.mesh, IDENTITY, g)
        theta = mesh_quality(self.mesh).theta
        self.assertLessEqual(lipschitz_constant(self.mesh, field.values), theta * 2.0 * 1.0 + 1e-9)


if __name__ == "__main__":
    unittest.main()
