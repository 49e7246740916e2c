"""
Triangle Update Module

Minimization of u_h(y) + rho(x, x - y) over the edge [y, z] opposite to the
update target x, with the metric frozen at x.

Two paths:
- closed form for models with an elliptic frozen form (three-branch formula in
  the geometry of the form, data shifted by its linear part)
- golden-section search on the convex one-dimensional restriction otherwise
"""

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..hamiltonian import EllipticForm, MetricModel, eval_rho

INF = math.inf
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0
DEFAULT_TOL_1D = 1e-10

Point = Tuple[float, float]


@dataclass(frozen=True)
class TriangleUpdateInput:
    """
    One triangle of the patch around x.

    Attributes:
        x: update target
        y, z: endpoints of the opposite edge
        uy, uz: nodal values at y and z, finite or +inf
        model: metric model, evaluated at x
    """
    x: Point
    y: Point
    z: Point
    uy: float
    uz: float
    model: MetricModel


def closed_form_update(uy: float, uz: float, ly: float, lz: float, lyz: float,
                       ca: float, cb: float) -> float:
    """
    Three-branch triangle update.

    Args:
        uy, uz: (shifted) nodal values at y and z
        ly, lz, lyz: lengths of x-y, x-z and z-y in the frozen geometry
        ca, cb: cosines of the angles at y and z in the frozen geometry

    Returns:
        min over the edge of the interpolated value plus distance to x
    """
    if uy == INF:
        return uz + lz
    if uz == INF:
        return uy + ly
    delta = (uz - uy) / lyz
    if ca <= delta:
        return uy + ly
    if delta <= -cb:
        return uz + lz
    radicand = (1.0 - ca * ca) * (1.0 - delta * delta)
    if radicand < 0.0:
        radicand = 0.0
    return uy + (ca * delta + math.sqrt(radicand)) * ly


def triangle_geometry(form: EllipticForm, x, y, z) -> Tuple[float, ...]:
    """
    Frozen-geometry constants of one triangle.

    Returns:
        (ly, lz, lyz, ca, cb, sy, sz) where sy, sz are the linear-part shifts
        <c, x - y>, <c, x - z>
    """
    g = form.gram
    x, y, z = (np.asarray(p, dtype=float) for p in (x, y, z))
    dy, dz, e = x - y, x - z, z - y
    ly = math.sqrt(float(dy @ g @ dy))
    lz = math.sqrt(float(dz @ g @ dz))
    lyz = math.sqrt(float(e @ g @ e))
    ca = float(dy @ g @ e) / (ly * lyz)
    cb = float(dz @ g @ (-e)) / (lz * lyz)
    return ly, lz, lyz, ca, cb, float(form.shift @ dy), float(form.shift @ dz)


def triangle_update_riemannian(inp: TriangleUpdateInput) -> float:
    """
    Closed-form triangle update.

    Raises:
        TypeError: if the model has no elliptic frozen form
        MetricError: if the metric at x is not SPD
    """
    form = inp.model.frozen_form(inp.x) if inp.model.has_frozen_form else None
    if form is None:
        raise TypeError(f"model {inp.model.name!r} has no closed-form triangle update")
    if inp.uy == INF and inp.uz == INF:
        return INF
    ly, lz, lyz, ca, cb, sy, sz = triangle_geometry(form, inp.x, inp.y, inp.z)
    return closed_form_update(inp.uy + sy, inp.uz + sz, ly, lz, lyz, ca, cb)


def golden_section_iterations(a: float, b: float, tol: float) -> int:
    """Number of reductions that shrink [a, b] below ``tol``."""
    if b - a <= tol:
        return 0
    return int(math.ceil(math.log(tol / (b - a)) / math.log(INV_PHI)))


def golden_section_minimize(phi: Callable[[float], float], a: float = 0.0, b: float = 1.0,
                            tol: float = DEFAULT_TOL_1D) -> Tuple[float, float]:
    """
    Minimize a convex function on [a, b].

    A fixed number of golden-section reductions is followed by one parabolic
    step through the final bracket. Both endpoints of the original interval are
    always candidates.

    Returns:
        (argmin, min) over all evaluated points
    """
    candidates = [(a, phi(a)), (b, phi(b))]
    lo, hi = a, b
    h = hi - lo
    c, d = lo + INV_PHI_SQUARE * h, lo + INV_PHI * h
    fc, fd = phi(c), phi(d)
    for _ in range(max(golden_section_iterations(a, b, tol) - 1, 0)):
        h *= INV_PHI
        if fc < fd:
            hi, d, fd = d, c, fc
            c = lo + INV_PHI_SQUARE * h
            fc = phi(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * h
            fd = phi(d)
    candidates.extend([(c, fc), (d, fd)])

    m, fm = (c, fc) if fc < fd else (d, fd)
    if lo < m < hi:
        flo, fhi = phi(lo), phi(hi)
        candidates.extend([(lo, flo), (hi, fhi)])
        num = (m - lo) ** 2 * (fm - fhi) - (m - hi) ** 2 * (fm - flo)
        den = (m - lo) * (fm - fhi) - (m - hi) * (fm - flo)
        if den != 0.0:
            t = m - 0.5 * num / den
            if lo < t < hi:
                candidates.append((t, phi(t)))
    return min(candidates, key=lambda tv: tv[1])


def triangle_update_generic(inp: TriangleUpdateInput, tol_1d: float = DEFAULT_TOL_1D) -> float:
    """
    Triangle update for any model by convex one-dimensional minimization of

        phi(t) = (1 - t) uy + t uz + rho(x, x - ((1 - t) y + t z)),  t in [0, 1].
    """
    if tol_1d <= 0.0:
        raise ValueError(f"tol_1d must be positive, got {tol_1d}")
    model = inp.model
    x = np.asarray(inp.x, dtype=float)
    y = np.asarray(inp.y, dtype=float)
    z = np.asarray(inp.z, dtype=float)
    if inp.uy == INF and inp.uz == INF:
        return INF
    if inp.uy == INF:
        return inp.uz + eval_rho(model, x, x - z)
    if inp.uz == INF:
        return inp.uy + eval_rho(model, x, x - y)

    dy, e = x - y, z - y
    uy, du = inp.uy, inp.uz - inp.uy

    def phi(t: float) -> float:
        return uy + t * du + eval_rho(model, x, dy - t * e)

    return golden_section_minimize(phi, 0.0, 1.0, tol_1d)[1]
