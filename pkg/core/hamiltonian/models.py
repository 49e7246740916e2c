"""
Metric Models

Evaluators of the support function rho(x, q) of the zero-level set of a convex
Hamiltonian. rho(x, .) is the local travel cost per unit displacement; it is
positively homogeneous and subadditive in q.

Models whose rho(x, .) at a fixed point has the form <c, q> + sqrt(<q, G q>)
expose it through ``frozen_form`` so the local solver can use the closed-form
triangle update.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

Vector = Sequence[float]
MatrixField = Callable[[np.ndarray], np.ndarray]


class MetricError(ValueError):
    """Raised when a model violates its admissibility conditions at a point."""


@dataclass(frozen=True)
class EllipticForm:
    """
    rho(x, q) = <shift, q> + sqrt(<q, gram q>) at a frozen point x.

    Attributes:
        gram: symmetric positive definite 2x2 matrix
        shift: linear part, zero for Riemannian models
    """
    gram: np.ndarray
    shift: np.ndarray

    def rho(self, q: Vector) -> float:
        q0, q1 = float(q[0]), float(q[1])
        g = self.gram
        quad = g[0, 0] * q0 * q0 + 2.0 * g[0, 1] * q0 * q1 + g[1, 1] * q1 * q1
        return float(self.shift[0] * q0 + self.shift[1] * q1 + math.sqrt(max(quad, 0.0)))


def check_spd(matrix: np.ndarray, what: str = "metric") -> np.ndarray:
    """Validate a symmetric positive definite 2x2 matrix and return it as an array."""
    m = np.asarray(matrix, dtype=float)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        raise MetricError(f"{what} must be a finite 2x2 matrix, got {m!r}")
    scale = max(abs(m[0, 0]), abs(m[1, 1]), 1.0)
    if abs(m[0, 1] - m[1, 0]) > 1e-12 * scale:
        raise MetricError(f"{what} is not symmetric: {m.tolist()}")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if m[0, 0] <= 0.0 or det <= 0.0:
        raise MetricError(f"{what} is not positive definite: {m.tolist()}")
    return m


def inverse_2x2(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det


_ZERO_SHIFT = np.zeros(2)
_ZERO_SHIFT.setflags(write=False)


class MetricModel(ABC):
    """Base class of all metric models."""

    name = "model"
    has_frozen_form = False

    @abstractmethod
    def rho(self, x: Vector, q: Vector) -> float:
        """Support function value for q != 0."""

    def frozen_form(self, x: Vector) -> Optional[EllipticForm]:
        """Elliptic representation of rho(x, .) or None if the model has none."""
        return None

    def __call__(self, x: Vector, q: Vector) -> float:
        return eval_rho(self, x, q)


class RiemannianMetric(MetricModel):
    """
    rho(x, q) = ||q||_{M(x)^{-1}} for an SPD field x -> M(x).
    """

    name = "riemannian"
    has_frozen_form = True

    def __init__(self, metric: MatrixField, name: Optional[str] = None):
        self.metric = metric
        if name:
            self.name = name

    @classmethod
    def constant(cls, matrix, name: Optional[str] = None) -> "RiemannianMetric":
        m = check_spd(matrix)
        m.setflags(write=False)
        return cls(lambda x: m, name=name or "constant")

    @classmethod
    def identity(cls) -> "RiemannianMetric":
        return cls.constant(np.eye(2), name="euclid")

    def frozen_form(self, x: Vector) -> EllipticForm:
        m = check_spd(self.metric(np.asarray(x, dtype=float)))
        return EllipticForm(gram=inverse_2x2(m), shift=_ZERO_SHIFT)

    def rho(self, x: Vector, q: Vector) -> float:
        return self.frozen_form(x).rho(q)


class GramRiemannianMetric(MetricModel):
    """
    rho(x, q)^2 = <q, G(x) q>, with G typically the Gram matrix Df^T Df of an
    immersion f.
    """

    name = "gram"
    has_frozen_form = True

    def __init__(self, gram: MatrixField, name: Optional[str] = None):
        self.gram = gram
        if name:
            self.name = name

    def frozen_form(self, x: Vector) -> EllipticForm:
        g = check_spd(self.gram(np.asarray(x, dtype=float)), what="Gram matrix")
        return EllipticForm(gram=g, shift=_ZERO_SHIFT)

    def rho(self, x: Vector, q: Vector) -> float:
        return self.frozen_form(x).rho(q)


class HjbSpeedMetric(MetricModel):
    """
    Control-theoretic model rho(x, q) = ||q|| / f(x, -q/||q||) for a speed
    profile f over unit directions.
    """

    name = "hjb_speed"

    def __init__(self, speed: Callable[[np.ndarray, np.ndarray], float],
                 constant_speed: Optional[float] = None, name: Optional[str] = None):
        self.speed = speed
        self.constant_speed = constant_speed
        self.has_frozen_form = constant_speed is not None
        if name:
            self.name = name

    @classmethod
    def constant(cls, f: float) -> "HjbSpeedMetric":
        if not f > 0.0:
            raise MetricError(f"speed must be positive, got {f}")
        return cls(lambda x, d: f, constant_speed=float(f), name="constant_speed")

    def frozen_form(self, x: Vector) -> Optional[EllipticForm]:
        if self.constant_speed is None:
            return None
        return EllipticForm(gram=np.eye(2) / self.constant_speed ** 2, shift=_ZERO_SHIFT)

    def rho(self, x: Vector, q: Vector) -> float:
        q = np.asarray(q, dtype=float)
        norm = math.hypot(q[0], q[1])
        f = float(self.speed(np.asarray(x, dtype=float), -q / norm))
        if not f > 0.0:
            raise MetricError(f"speed must be positive, got {f} at x={tuple(x)}")
        return norm / f


class DriftMetric(MetricModel):
    """
    Minimum-time control with unit control speed and drift b(x), ||b(x)|| < 1.

    H(x, p) = ||p|| - <b(x), p> - 1, whose zero-level set is an ellipse with a
    focus at the origin, hence

        rho(x, q) = ||q|| / (sqrt(1 - ||b||^2 + <b, q^>^2) - <b, q^>)
                  = <c, q> + sqrt(<q, G q>)

    with c = b / (1 - ||b||^2) and G = ((1 - ||b||^2) I + b b^T) / (1 - ||b||^2)^2.
    """

    name = "drift"
    has_frozen_form = True

    def __init__(self, drift: Callable[[np.ndarray], np.ndarray], name: Optional[str] = None):
        self.drift = drift
        if name:
            self.name = name

    def _drift_at(self, x: Vector) -> np.ndarray:
        b = np.asarray(self.drift(np.asarray(x, dtype=float)), dtype=float)
        e2 = float(b @ b)
        if not e2 < 1.0:
            raise MetricError(f"drift norm must be below 1, got {math.sqrt(e2)} at x={tuple(x)}")
        return b

    def frozen_form(self, x: Vector) -> EllipticForm:
        b = self._drift_at(x)
        s = 1.0 - float(b @ b)
        gram = (s * np.eye(2) + np.outer(b, b)) / (s * s)
        return EllipticForm(gram=gram, shift=b / s)

    def rho(self, x: Vector, q: Vector) -> float:
        b = self._drift_at(x)
        q = np.asarray(q, dtype=float)
        norm = math.hypot(q[0], q[1])
        beta = float(b @ q) / norm
        return norm / (math.sqrt(1.0 - float(b @ b) + beta * beta) - beta)


class CustomMetric(MetricModel):
    """
    Caller-supplied rho(x, q); convexity and homogeneity in q are the caller's
    responsibility (see ``validate_metric_model``).
    """

    name = "custom"

    def __init__(self, func: Callable[[np.ndarray, np.ndarray], float], name: Optional[str] = None):
        self.func = func
        if name:
            self.name = name

    def rho(self, x: Vector, q: Vector) -> float:
        return float(self.func(np.asarray(x, dtype=float), np.asarray(q, dtype=float)))


def eval_rho(model: MetricModel, x: Vector, q: Vector) -> float:
    """
    Evaluate rho(x, q); rho(x, 0) = 0 for every model.

    Raises:
        MetricError: when the model is inadmissible at x
    """
    if q[0] == 0.0 and q[1] == 0.0:
        return 0.0
    return model.rho(x, q)
