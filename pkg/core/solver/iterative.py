"""
Iterative Solvers

Jacobi, Gauss-Seidel and adaptive Gauss-Seidel iterations for the discrete
fixed-point equation u_h = Lambda_h u_h with Dirichlet data.
"""

import logging
import math
import time
from collections import deque
from typing import Optional, Tuple

import numpy as np
from typing_extensions import Protocol

from ..hamiltonian import MetricModel
from ..local_update import HopfLaxOperator
from ..mesh import TriMesh
from .config import SolverConfig, SolverKind, SolveStats
from .field import BoundaryData, NodalField

logger = logging.getLogger(__name__)


class SolveObserver(Protocol):
    """Hooks into a running solve."""

    def on_sweep(self, sweep: int, before: np.ndarray, after: np.ndarray) -> None:
        ...

    def on_vertex_update(self, v: int, old: float, new: float) -> None:
        ...


def make_operator(mesh: TriMesh, model: MetricModel, config: SolverConfig) -> HopfLaxOperator:
    return HopfLaxOperator(mesh, model, tol_1d=config.tol_1d, closed_form=config.closed_form)


def _resolve(mesh: TriMesh, model: MetricModel, config: Optional[SolverConfig],
             operator: Optional[HopfLaxOperator], kind: SolverKind) -> Tuple[SolverConfig, HopfLaxOperator]:
    config = config or SolverConfig(kind=kind)
    if operator is None:
        operator = make_operator(mesh, model, config)
    elif operator.mesh is not mesh or operator.model is not model:
        raise ValueError("operator was built for a different mesh or model")
    return config, operator


def _start(stats: SolveStats, n_unknown: int, config: SolverConfig) -> None:
    logger.info("%s: start, %d vertices (%d unknown), tol %.3g, max_sweeps %d",
                stats.solver, stats.n_vertices, n_unknown, config.tol, config.max_sweeps)


def _finish(stats: SolveStats, operator: HopfLaxOperator, field: NodalField,
            config: SolverConfig, started: float, stopped: bool) -> None:
    stats.final_residual = operator.residual(field.values, field.unknown)
    stats.converged = stopped and stats.final_residual <= config.tol
    stats.wall_time_s = time.perf_counter() - started
    if stats.converged:
        logger.info("%s: converged, %d triangle updates, %d sweeps/pops, residual %.3g",
                    stats.solver, stats.triangle_updates, stats.sweeps_or_pops, stats.final_residual)
    else:
        logger.warning("%s: not converged after %d sweeps/pops, residual %.3g (tol %.3g)",
                       stats.solver, stats.sweeps_or_pops, stats.final_residual, config.tol)


def _initial_constant(g: BoundaryData) -> float:
    if not g:
        raise ValueError("no Dirichlet data given")
    return min(float(v) for v in g.values())


def solve_jacobi(mesh: TriMesh, model: MetricModel, g: BoundaryData,
                 config: Optional[SolverConfig] = None,
                 observer: Optional[SolveObserver] = None,
                 operator: Optional[HopfLaxOperator] = None) -> Tuple[NodalField, SolveStats]:
    """
    Synchronous fixed-point iteration u^{n+1} = Lambda_h u^n.

    Unknowns start at the minimum of the Dirichlet data, so the iterates
    increase monotonically towards the solution. Stops when a sweep changes no
    vertex by more than tol.
    """
    config, operator = _resolve(mesh, model, config, operator, SolverKind.JACOBI)
    started = time.perf_counter()
    field = NodalField.from_dirichlet(mesh, g, fill=_initial_constant(g))
    stats = SolveStats(solver=SolverKind.JACOBI.value, n_vertices=mesh.n_vertices,
                       n_triangles=mesh.n_triangles)
    unknown = np.flatnonzero(field.unknown)
    per_sweep = int(operator.patch_sizes[unknown].sum())
    _start(stats, unknown.size, config)

    u = field.values
    stopped = unknown.size == 0
    while not stopped and stats.sweeps_or_pops < config.max_sweeps:
        new = u.copy()
        new[unknown] = operator.apply(u, unknown)
        change = float(np.max(np.abs(new[unknown] - u[unknown])))
        stats.sweeps_or_pops += 1
        stats.triangle_updates += per_sweep
        if observer is not None:
            observer.on_sweep(stats.sweeps_or_pops, u, new)
        u = new
        if change <= config.tol:
            stopped = operator.residual(u, field.unknown) <= config.tol
            if not stopped:
                logger.debug("jacobi: change below tol but residual above, continuing")
        logger.debug("jacobi sweep %d: max change %.3g", stats.sweeps_or_pops, change)

    field.values = u
    _finish(stats, operator, field, config, started, stopped)
    return field, stats


def solve_gauss_seidel(mesh: TriMesh, model: MetricModel, g: BoundaryData,
                       config: Optional[SolverConfig] = None,
                       observer: Optional[SolveObserver] = None,
                       operator: Optional[HopfLaxOperator] = None) -> Tuple[NodalField, SolveStats]:
    """
    In-place nonlinear Gauss-Seidel in ascending vertex order.

    Same initial iterate as Jacobi; stops when a full sweep changes no vertex
    by more than tol.
    """
    config, operator = _resolve(mesh, model, config, operator, SolverKind.GAUSS_SEIDEL)
    started = time.perf_counter()
    field = NodalField.from_dirichlet(mesh, g, fill=_initial_constant(g))
    stats = SolveStats(solver=SolverKind.GAUSS_SEIDEL.value, n_vertices=mesh.n_vertices,
                       n_triangles=mesh.n_triangles)
    order = np.flatnonzero(field.unknown).tolist()
    per_sweep = int(operator.patch_sizes[order].sum()) if order else 0
    _start(stats, len(order), config)

    u = field.values.tolist()
    update = operator.update
    stopped = not order
    while not stopped and stats.sweeps_or_pops < config.max_sweeps:
        before = np.array(u) if observer is not None else None
        change = 0.0
        for v in order:
            new = update(u, v)
            diff = abs(new - u[v])
            if diff > change:
                change = diff
            u[v] = new
        stats.sweeps_or_pops += 1
        stats.triangle_updates += per_sweep
        if observer is not None:
            observer.on_sweep(stats.sweeps_or_pops, before, np.array(u))
        if change <= config.tol:
            stopped = operator.residual(np.array(u), field.unknown) <= config.tol
        logger.debug("gauss_seidel sweep %d: max change %.3g", stats.sweeps_or_pops, change)

    field.values = np.array(u)
    _finish(stats, operator, field, config, started, stopped)
    return field, stats


def solve_adaptive_gs(mesh: TriMesh, model: MetricModel, g: BoundaryData,
                      config: Optional[SolverConfig] = None,
                      observer: Optional[SolveObserver] = None,
                      operator: Optional[HopfLaxOperator] = None) -> Tuple[NodalField, SolveStats]:
    """
    Adaptive Gauss-Seidel iteration with a FIFO queue.

    1. u = g on Dirichlet vertices and +inf elsewhere; enqueue, in ascending
       order, every unknown vertex adjacent to a Dirichlet vertex.
    2. Pop the front vertex x (clearing its enqueued flag) and compute
       u_new = (Lambda_h u)(x).
    3. If |u_new - u(x)| > tol, set u(x) = u_new and append every unknown
       neighbour that is not yet enqueued.
    4. Repeat until the queue is empty.

    Per-vertex values decrease monotonically after their first finite
    assignment.
    """
    config, operator = _resolve(mesh, model, config, operator, SolverKind.ADAPTIVE_GS)
    started = time.perf_counter()
    field = NodalField.from_dirichlet(mesh, g, fill=math.inf)
    stats = SolveStats(solver=SolverKind.ADAPTIVE_GS.value, n_vertices=mesh.n_vertices,
                       n_triangles=mesh.n_triangles)
    unknown = field.unknown.tolist()
    n_unknown = sum(unknown)
    neighbors = mesh.vertex_neighbors
    patch_sizes = operator.patch_sizes.tolist()
    max_pops = config.max_sweeps * max(n_unknown, 1)
    _start(stats, n_unknown, config)
    tol = config.tol

    queue = deque()
    enqueued = bytearray(mesh.n_vertices)
    dirichlet = field.dirichlet.tolist()
    for v in range(mesh.n_vertices):
        if unknown[v] and any(dirichlet[w] for w in neighbors[v]):
            queue.append(v)
            enqueued[v] = 1

    u = field.values.tolist()
    update = operator.update
    stopped = n_unknown == 0
    while not stopped:
        while queue and stats.sweeps_or_pops < max_pops:
            v = queue.popleft()
            enqueued[v] = 0
            stats.sweeps_or_pops += 1
            stats.triangle_updates += patch_sizes[v]
            new = update(u, v)
            old = u[v]
            if abs(new - old) > tol:
                if observer is not None:
                    observer.on_vertex_update(v, old, new)
                u[v] = new
                for w in neighbors[v]:
                    if unknown[w] and not enqueued[w]:
                        queue.append(w)
                        enqueued[w] = 1
        if queue:
            break
        # Confirm the residual containment before accepting an empty queue
        values = np.array(u)
        updated = operator.apply(values)
        with np.errstate(invalid="ignore"):
            violating = np.abs(values - updated) > tol
        violating &= field.unknown
        if not np.any(violating):
            stopped = True
        else:
            logger.debug("adaptive_gs: re-enqueueing %d vertices above tolerance", int(violating.sum()))
            for v in np.flatnonzero(violating).tolist():
                queue.append(v)
                enqueued[v] = 1

    field.values = np.array(u)
    _finish(stats, operator, field, config, started, stopped)
    return field, stats


_SOLVERS = {
    SolverKind.JACOBI: solve_jacobi,
    SolverKind.GAUSS_SEIDEL: solve_gauss_seidel,
    SolverKind.ADAPTIVE_GS: solve_adaptive_gs,
}


def solve(mesh: TriMesh, model: MetricModel, g: BoundaryData,
          config: Optional[SolverConfig] = None,
          observer: Optional[SolveObserver] = None,
          operator: Optional[HopfLaxOperator] = None) -> Tuple[NodalField, SolveStats]:
    """Dispatch on ``config.kind`` (adaptive Gauss-Seidel by default)."""
    config = config or SolverConfig()
    return _SOLVERS[config.kind](mesh, model, g, config, observer=observer, operator=operator)
