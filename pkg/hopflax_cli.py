#!/usr/bin/env python3
"""
Hopf-Lax FEM Command-Line Interface

Generate meshes, solve Dirichlet problems, check boundary compatibility and
run convergence and solver-comparison studies.
"""

import argparse
import json
import logging
import math
import sys
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from core.hamiltonian import (
    MetricModel,
    check_boundary_compatibility,
    estimate_rho_bounds,
    parse_model_spec,
)
from core.mesh import MeshError, TriMesh, generate_grid_mesh, load_mesh, mesh_quality, save_mesh
from core.solver import SolverConfig, SolverKind, solve
from core.experiments import (
    COMPARISON_COLUMNS,
    CONVERGENCE_COLUMNS,
    SOLUTION_COLUMNS,
    PRESETS,
    comparison_frame,
    complexity_rates,
    convergence_frame,
    convergence_orders,
    get_preset,
    run_convergence_study,
    run_solver_comparison,
    solution_frame,
    write_csv,
)

logger = logging.getLogger("hopflax")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
POINT_SOURCE_FACTOR = 2.0 * math.sqrt(2.0)

CSV_SCHEMAS = f"""\
CSV outputs (UTF-8, '.' decimal separator, floats as %.17g):
  solve --out-solution       {','.join(SOLUTION_COLUMNS)}
  convergence --out          {','.join(CONVERGENCE_COLUMNS)}
  compare-solvers --out      {','.join(COMPARISON_COLUMNS)}
  --g-spec FILE              vertex,g

Exit codes: 0 success; 1 solve did not reach --tol, or I/O and data errors;
2 usage errors and check-compat violations.
"""


class BoundaryDataError(ValueError):
    """Malformed or incomplete --g-spec data."""


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _print_json(payload: dict) -> None:
    print(json.dumps(_jsonable(payload), sort_keys=True))


def _parse_n_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_solver_list(text: str) -> List[SolverKind]:
    try:
        return [SolverKind(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected solvers among {[k.value for k in SolverKind]}, got {text!r}")


class HopfLaxCLI:
    """Command handlers; each returns the process exit code."""

    def __init__(self, parser: argparse.ArgumentParser):
        self.parser = parser

    def solver_config(self, args) -> SolverConfig:
        """SolverConfig from --config, overridden by explicit flags."""
        config = SolverConfig()
        if getattr(args, "config", None):
            with open(args.config, "r", encoding="utf-8") as f:
                config = SolverConfig.from_json(f.read())
        overrides = {}
        if getattr(args, "solver", None) is not None:
            overrides["kind"] = SolverKind(args.solver)
        if getattr(args, "tol", None) is not None:
            overrides["tol"] = args.tol
        if getattr(args, "max_sweeps", None) is not None:
            overrides["max_sweeps"] = args.max_sweeps
        return replace(config, **overrides) if overrides else config

    def boundary_data(self, mesh: TriMesh, model: MetricModel, spec: str) -> Dict[int, float]:
        """
        Dirichlet data from a --g-spec value.

        ``zero`` and ``const:C`` fill the mesh boundary; ``point:x,y,v`` puts v
        at the vertex nearest (x, y) and a non-binding constant on the
        boundary; anything else is read as a vertex,g CSV file.

        Raises:
            BoundaryDataError: on malformed values, unknown vertices or
                boundary vertices without data
        """
        boundary = sorted(mesh.boundary_vertices)
        if spec == "zero":
            return {v: 0.0 for v in boundary}
        if spec.startswith("const:"):
            try:
                value = float(spec[len("const:"):])
            except ValueError:
                raise BoundaryDataError(f"expected 'const:C', got {spec!r}")
            return {v: value for v in boundary}
        if spec.startswith("point:"):
            try:
                x, y, value = (float(s) for s in spec[len("point:"):].split(","))
            except ValueError:
                raise BoundaryDataError(f"expected 'point:x,y,value', got {spec!r}")
            outer = estimate_rho_bounds(model, mesh).rho_star_upper * POINT_SOURCE_FACTOR
            g = {v: outer for v in boundary}
            g[mesh.nearest_vertex((x, y))] = value
            return g

        try:
            frame = pd.read_csv(spec)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise BoundaryDataError(f"{spec}: {exc}")
        if list(frame.columns) != ["vertex", "g"]:
            raise BoundaryDataError(f"{spec}: expected columns vertex,g, got {','.join(map(str, frame.columns))}")
        try:
            g = {int(v): float(value) for v, value in zip(frame["vertex"], frame["g"])}
        except ValueError as exc:
            raise BoundaryDataError(f"{spec}: {exc}")
        unknown = sorted(v for v in g if not 0 <= v < mesh.n_vertices)
        if unknown:
            raise BoundaryDataError(f"{spec}: vertex {unknown[0]} is not a mesh vertex")
        missing = [v for v in boundary if v not in g]
        if missing:
            raise BoundaryDataError(f"{spec}: {len(missing)} boundary vertices without data, first {missing[0]}")
        return g

    def problem(self, args) -> Tuple[str, TriMesh, MetricModel, Dict[int, float], Optional[float]]:
        """(name, mesh, model, g, anisotropy) for --preset or --mesh/--model runs."""
        if args.preset:
            instance = get_preset(args.preset, args.n, perturb=args.perturb, seed=args.seed).instantiate()
            return args.preset, instance.mesh, instance.preset.model, instance.g, instance.anisotropy
        if not args.mesh:
            self.parser.error("either --preset or --mesh is required")
        mesh = load_mesh(args.mesh)
        model = parse_model_spec(args.model)
        bounds = estimate_rho_bounds(model, mesh)
        return model.name, mesh, model, self.boundary_data(mesh, model, args.g_spec), bounds.anisotropy

    def gen_mesh(self, args) -> int:
        if args.n < 2:
            self.parser.error(f"--n must be at least 2, got {args.n}")
        mesh = generate_grid_mesh(args.n, perturb=args.perturb, seed=args.seed)
        save_mesh(mesh, args.out)
        summary = mesh_quality(mesh).summary()
        summary.update({"n_vertices": mesh.n_vertices, "out": args.out})
        _print_json(summary)
        return EXIT_OK

    def solve(self, args) -> int:
        config = self.solver_config(args)
        name, mesh, model, g, anisotropy = self.problem(args)
        field, stats = solve(mesh, model, g, config)
        record = stats.record(include_timing=args.timings)
        if args.out_stats:
            with open(args.out_stats, "w", encoding="utf-8") as f:
                f.write(stats.record_json(include_timing=args.timings) + "\n")
        if args.out_solution:
            write_csv(solution_frame(mesh, field), args.out_solution)
        record.update({"problem": name, "anisotropy": anisotropy, "tol": config.tol})
        _print_json(record)
        return EXIT_OK if stats.final_residual <= config.tol else EXIT_FAILURE

    def convergence(self, args) -> int:
        config = self.solver_config(args)
        if not args.n_list:
            self.parser.error("--n-list is empty")
        preset = get_preset(args.preset, args.n_list[0], perturb=args.perturb, seed=args.seed)
        reports = run_convergence_study(preset, args.n_list, config, reference_n=args.reference_n)
        frame = convergence_frame(reports)
        orders = convergence_orders(reports)
        exponents = complexity_rates(reports)
        logger.info("observed error orders %s, work exponents %s", orders, exponents)
        if args.out:
            write_csv(frame, args.out)
            _print_json({"rows": len(reports), "error_orders": orders,
                         "work_exponents": exponents, "out": args.out})
        else:
            write_csv(frame, sys.stdout)
        return EXIT_OK

    def compare_solvers(self, args) -> int:
        config = self.solver_config(args)
        preset = get_preset(args.preset, args.n, perturb=args.perturb, seed=args.seed)
        rows = run_solver_comparison(preset, args.n, args.solvers, config)
        frame = comparison_frame(rows)
        if args.out:
            write_csv(frame, args.out)
            _print_json({"rows": len(rows), "out": args.out})
        else:
            write_csv(frame, sys.stdout)
        return EXIT_OK

    def check_compat(self, args) -> int:
        mesh = load_mesh(args.mesh)
        model = parse_model_spec(args.model)
        g = self.boundary_data(mesh, model, args.g_spec)
        bounds = estimate_rho_bounds(model, mesh)
        report = check_boundary_compatibility(mesh, g, bounds, mesh_quality(mesh).theta)
        _print_json(report.to_dict())
        return EXIT_OK if report.passed else EXIT_USAGE


def _add_mesh_recipe(parser: argparse.ArgumentParser, n_default: Optional[int] = 23) -> None:
    if n_default is None:
        parser.add_argument("--n", type=int, required=True, help="vertices per side")
    else:
        parser.add_argument("--n", type=int, default=n_default, help=f"vertices per side (default: {n_default})")
    parser.add_argument("--perturb", type=float, default=0.2,
                        help="interior vertex jitter as a fraction of the cell size (default: 0.2)")
    parser.add_argument("--seed", type=int, default=1, help="mesh perturbation seed (default: 1)")


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--solver", choices=[k.value for k in SolverKind],
                        help="iteration scheme (default: adaptive_gs)")
    parser.add_argument("--tol", type=float, help="residual tolerance (default: 1e-8)")
    parser.add_argument("--max-sweeps", type=int, help="sweep cap (default: 100000)")
    parser.add_argument("--config", help="JSON file with SolverConfig fields; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopflax",
        description="Hopf-Lax linear finite elements for static Hamilton-Jacobi equations",
        epilog=CSV_SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    presets = sorted(PRESETS)

    p = sub.add_parser("gen-mesh", help="write a perturbed criss-cross grid mesh")
    _add_mesh_recipe(p, n_default=None)
    p.add_argument("--out", required=True, help="mesh file to write")
    p.set_defaults(handler="gen_mesh")

    p = sub.add_parser("solve", help="solve one problem",
                       epilog=CSV_SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--preset", choices=presets)
    p.add_argument("--mesh", help="mesh file (instead of --preset)")
    p.add_argument("--model", default="euclid", help="euclid, diag:a,b, torus or mintime")
    p.add_argument("--g-spec", default="zero", help="zero, const:C, point:x,y,value or a vertex,g CSV")
    _add_mesh_recipe(p)
    _add_solver_flags(p)
    p.add_argument("--out-solution", help="x,y,u CSV")
    p.add_argument("--out-stats", help="stats JSON")
    p.add_argument("--timings", action="store_true", help="record wall time in the stats")
    p.set_defaults(handler="solve")

    p = sub.add_parser("convergence", help="error study over a list of meshes",
                       epilog=CSV_SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--preset", choices=presets, required=True)
    p.add_argument("--n-list", type=_parse_n_list, required=True, help="ascending, e.g. 23,45,91")
    p.add_argument("--reference-n", type=int, help="reference mesh size for presets without exact solution")
    p.add_argument("--perturb", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=1)
    _add_solver_flags(p)
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(handler="convergence")

    p = sub.add_parser("compare-solvers", help="work and agreement of the solvers",
                       epilog=CSV_SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--preset", choices=presets, required=True)
    _add_mesh_recipe(p)
    p.add_argument("--solvers", type=_parse_solver_list, default=list(SolverKind),
                   help="comma-separated subset of jacobi,gauss_seidel,adaptive_gs")
    p.add_argument("--tol", type=float)
    p.add_argument("--max-sweeps", type=int)
    p.add_argument("--config")
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.set_defaults(handler="compare_solvers")

    p = sub.add_parser("check-compat", help="check g(x) - g(y) <= rho_*/theta |x - y| on the boundary")
    p.add_argument("--mesh", required=True)
    p.add_argument("--model", default="euclid")
    p.add_argument("--g-spec", default="zero")
    p.set_defaults(handler="check_compat")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
            force=True,
        )
        cli = HopfLaxCLI(parser)
        try:
            return getattr(cli, args.handler)(args)
        except (OSError, MeshError, BoundaryDataError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAILURE
        except ValueError as exc:
            parser.error(str(exc))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
