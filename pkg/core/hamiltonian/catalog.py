"""
Named metric models used by the presets and the CLI: ``euclid``,
``diag:a,b``, ``torus`` and ``mintime``.
"""

import math

import numpy as np

from .models import DriftMetric, GramRiemannianMetric, MetricModel, RiemannianMetric

TWO_PI = 2.0 * math.pi
MINTIME_DRIFT_AMPLITUDE = 0.9


def torus_immersion(x) -> np.ndarray:
    """Immersion f of the parameter square into R^3."""
    a, b = TWO_PI * x[0], TWO_PI * x[1]
    r = 5.0 + 4.0 * math.cos(b)
    return np.array([math.cos(a) * r, math.sin(a) * r, math.sin(b)])


def torus_jacobian(x) -> np.ndarray:
    """Analytic 3x2 Jacobian Df(x) of ``torus_immersion``."""
    a, b = TWO_PI * x[0], TWO_PI * x[1]
    r = 5.0 + 4.0 * math.cos(b)
    dr = -4.0 * TWO_PI * math.sin(b)
    return np.array([
        [-TWO_PI * math.sin(a) * r, math.cos(a) * dr],
        [TWO_PI * math.cos(a) * r, math.sin(a) * dr],
        [0.0, TWO_PI * math.cos(b)],
    ])


def torus_gram(x) -> np.ndarray:
    jac = torus_jacobian(x)
    return jac.T @ jac


def mintime_drift(y) -> np.ndarray:
    """b(y) = -0.9 sin(4 pi y1) sin(4 pi y2) y/||y||, with b(0) = 0."""
    norm = math.hypot(y[0], y[1])
    if norm == 0.0:
        return np.zeros(2)
    amp = -MINTIME_DRIFT_AMPLITUDE * math.sin(2.0 * TWO_PI * y[0]) * math.sin(2.0 * TWO_PI * y[1])
    return amp * np.asarray(y, dtype=float) / norm


def torus_metric() -> GramRiemannianMetric:
    return GramRiemannianMetric(torus_gram, name="torus")


def mintime_metric() -> DriftMetric:
    return DriftMetric(mintime_drift, name="mintime")


def parse_model_spec(spec: str) -> MetricModel:
    """
    Build a model from its CLI name.

    Raises:
        ValueError: for unknown names or malformed ``diag:a,b`` arguments
    """
    spec = spec.strip()
    if spec == "euclid":
        return RiemannianMetric.identity()
    if spec == "torus":
        return torus_metric()
    if spec == "mintime":
        return mintime_metric()
    if spec.startswith("diag:"):
        try:
            a, b = (float(v) for v in spec[len("diag:"):].split(","))
        except ValueError:
            raise ValueError(f"expected 'diag:a,b' with two numbers, got {spec!r}")
        model = RiemannianMetric.constant(np.diag([a, b]), name=spec)
        return model
    raise ValueError(f"unknown model {spec!r}; expected euclid, diag:a,b, torus or mintime")
