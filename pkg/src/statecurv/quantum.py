"""Closed-form scalar curvature of real and complex state spaces with pull-back metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    AdmissibleFunction,
    Field,
    Spectrum,
    degeneracy_threshold,
    rho,
)

__all__ = [
    "QuantumCurvatureReport",
    "StateDimensions",
    "scal_quantum",
    "scal_m2",
    "state_dimensions",
]


@dataclass(frozen=True)
class QuantumCurvatureReport:
    """Scalar curvature with its four assembly terms and normalization constant.

    The terms combine per field: scal = x1 + 2*x2 + x3 for real state spaces
    and scal = x1 + 4*x2 + 2*x3 + 2*x4 for complex ones.  They are kept in
    the report because the standard sanity cases (sphere, flat, diagonal
    restriction) constrain them individually.
    """

    scal: float
    x1: float
    x2: float
    x3: float
    x4: float
    c: float
    field: Field


@dataclass(frozen=True)
class StateDimensions:
    """Manifold dimensions of the n-by-n state space over each field."""

    n: int
    d_real: int
    d_complex: int

    @staticmethod
    def of(n: int) -> "StateDimensions":
        n = int(n)
        if n < 2:
            raise ValueError(f"state space needs n >= 2, got {n}")
        return StateDimensions(n=n, d_real=(n - 1) * (n + 2) // 2, d_complex=n * n - 1)


def state_dimensions(n: int, field: Field) -> int:
    """Dimension of the n-by-n state space: (n-1)(n+2)/2 real, n^2 - 1 complex."""
    dims = StateDimensions.of(n)
    return dims.d_real if Field(field) == Field.REAL else dims.d_complex


def scal_quantum(f: AdmissibleFunction, spec: Spectrum) -> QuantumCurvatureReport:
    """Scalar curvature of the state space at a state with the given spectrum.

    Works entirely on eigenvalues: the diagonal data are d1_i = f'(l_i) and
    h_i = f''(l_i)/2, the normalization is c^2 = sum_k 1/f'(l_k)^2, and the
    off-diagonal pairs enter through the rho kernel.
    """
    lam = spec.values
    n = lam.size
    d1 = np.asarray(f.deriv1(lam), dtype=float)
    h = 0.5 * np.asarray(f.deriv2(lam), dtype=float)
    c2 = float(np.sum(1.0 / d1 ** 2))

    b = h / d1 ** 3
    e = 1.0 / (c2 * d1 ** 2)
    # double sum over i != k; masking the diagonal avoids the cancellation a
    # dominant diagonal term would cause
    pair = np.outer(b, b) * (1.0 - e[:, None] - e[None, :])
    np.fill_diagonal(pair, 0.0)
    x1 = 4.0 / c2 * float(pair.sum())

    rho_sum = 0.0
    rho_sq = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            r = rho(f, float(lam[i]), float(lam[j]))
            rho_sum += r
            rho_sq += r * r

    x2 = -2.0 / c2 * float(np.sum(b * (1.0 - e))) * rho_sum
    x3 = (rho_sum ** 2 - rho_sq) / c2
    x4 = rho_sum ** 2 / c2

    if spec.field == Field.REAL:
        scal = x1 + 2.0 * x2 + x3
    else:
        scal = x1 + 4.0 * x2 + 2.0 * x3 + 2.0 * x4
    return QuantumCurvatureReport(
        scal=scal, x1=x1, x2=x2, x3=x3, x4=x4, c=float(np.sqrt(c2)), field=spec.field
    )


def scal_m2(f: AdmissibleFunction, lambda1: float, lambda2: float, field: Field) -> float:
    """Two-by-two state space curvature in its compact two-eigenvalue form.

    Scal_real = 2*x2 and Scal_complex = 4*x2 + 2*x4 with

      x2 = p q / (p^2 + q^2)^2 * (P/p + Q/q) * (p - q) / (f(l1) - f(l2)),
      x4 = ((p - q) / (f(l1) - f(l2)))^2 / (p^2 + q^2),

    where p, q = f'(l1), f'(l2) and P, Q = f''(l1), f''(l2).  Agrees with
    scal_quantum to roundoff for distinct eigenvalues; at a degenerate pair
    the quotient is replaced by its limit f''/f' at the midpoint.
    """
    l1 = float(lambda1)
    l2 = float(lambda2)
    if not (0.0 < l1 < 1.0 and 0.0 < l2 < 1.0):
        raise ValueError("eigenvalues must lie in (0, 1)")
    if abs(l1 + l2 - 1.0) > 1e-12:
        raise ValueError(f"eigenvalues must sum to 1, got {l1 + l2!r}")
    p = float(f.deriv1(l1))
    q = float(f.deriv1(l2))
    cap_p = float(f.deriv2(l1))
    cap_q = float(f.deriv2(l2))
    s = p * p + q * q
    if abs(l1 - l2) < degeneracy_threshold(l1, l2):
        mid = 0.5 * (l1 + l2)
        ratio = float(f.deriv2(mid)) / float(f.deriv1(mid))
    else:
        ratio = (p - q) / (float(f.eval(l1)) - float(f.eval(l2)))
    x2 = p * q / s ** 2 * (cap_p / p + cap_q / q) * ratio
    x4 = ratio ** 2 / s
    return 2.0 * x2 if Field(field) == Field.REAL else 4.0 * x2 + 2.0 * x4
