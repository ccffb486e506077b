"""Closed-form scalar curvature of the open probability simplex with alpha pull-back metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import SUM_TOL

__all__ = ["Distribution", "ClassicalCurvatureReport", "scal_classical", "scal_p3"]

# entries below this are rejected: the simplex is open and the curvature
# formulas blow up near the boundary for alpha < -1
MIN_ENTRY = 1e-12


@dataclass(frozen=True, eq=False)
class Distribution:
    """Point of the open probability simplex: strictly positive reals summing to 1."""

    probs: np.ndarray

    def __init__(self, probs):
        p = np.asarray(probs, dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise ValueError("distribution needs at least two entries")
        if np.any(p < MIN_ENTRY):
            raise ValueError(f"distribution entries must be >= {MIN_ENTRY}")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"distribution must sum to 1, got {p.sum()!r}")
        object.__setattr__(self, "probs", p)

    @property
    def n(self) -> int:
        return self.probs.size


def as_distribution(theta) -> Distribution:
    return theta if isinstance(theta, Distribution) else Distribution(theta)


@dataclass(frozen=True)
class ClassicalCurvatureReport:
    """Scalar curvature value with its normalization constant."""

    scal: float
    c: float
    alpha: float


def scal_classical(alpha: float, theta) -> ClassicalCurvatureReport:
    """Scalar curvature of the n-point simplex under the alpha pull-back metric.

    Scal = (1+alpha)^2 / (4 c^2) * sum_{t != s} p_t^a p_s^a
           * (1 - (p_t^(a+1) + p_s^(a+1)) / c^2),   c^2 = sum_k p_k^(a+1).

    The same expression covers alpha = 1 (the logarithmic pull-back); no
    separate branch is needed.
    """
    alpha = float(alpha)
    p = as_distribution(theta).probs
    w = p ** alpha
    u = p ** (alpha + 1.0)
    c2 = float(u.sum())
    # double sum over t != s, mirroring the formula shape; the diagonal is
    # masked out instead of subtracted, which would cancel catastrophically
    # whenever a single p_k^(alpha+1) dominates c^2
    pair = np.outer(w, w) * (1.0 - (u[:, None] + u[None, :]) / c2)
    np.fill_diagonal(pair, 0.0)
    scal = (1.0 + alpha) ** 2 / (4.0 * c2) * float(pair.sum())
    return ClassicalCurvatureReport(scal=scal, c=float(np.sqrt(c2)), alpha=alpha)


def scal_p3(alpha: float, theta) -> float:
    """Three-point simplex curvature in its compact product/quotient form.

    Scal = (1+alpha)^2 / 2 * (p1 p2 p3)^alpha / (p1^(a+1) + p2^(a+1) + p3^(a+1))^2.
    Agrees with scal_classical to roundoff.
    """
    alpha = float(alpha)
    p = as_distribution(theta).probs
    if p.size != 3:
        raise ValueError(f"scal_p3 needs a 3-point distribution, got n = {p.size}")
    num = float(np.prod(p ** alpha))
    den = float((p ** (alpha + 1.0)).sum()) ** 2
    return (1.0 + alpha) ** 2 / 2.0 * num / den
