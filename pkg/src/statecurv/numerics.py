"""Shared numeric substrate: admissible functions, divided differences, eigendecomposition.

Everything here is a pure function of its inputs and safe to call concurrently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Field",
    "FunctionKind",
    "AdmissibleFunction",
    "Spectrum",
    "SelfAdjointMatrix",
    "ConvergenceError",
    "DEGENERACY_RTOL",
    "degeneracy_threshold",
    "divided_difference",
    "rho",
    "eigh",
]

# |sum - 1| allowed when validating spectra and distributions
SUM_TOL = 1e-12
# |X - X*| allowed when validating self-adjointness
HERMITIAN_TOL = 1e-12
# relative eigenvalue gap below which quotients of differences lose at least
# half the significand; limit formulas (f', f'') take over there
DEGENERACY_RTOL = 1e-7


class Field(enum.Enum):
    """Scalar field of a state space: real symmetric or complex Hermitian matrices."""

    REAL = "real"
    COMPLEX = "complex"


class ConvergenceError(RuntimeError):
    """Eigendecomposition did not converge; the input is likely ill-conditioned."""


class FunctionKind(enum.Enum):
    ALPHA_POWER = "alpha_power"
    LOG = "log"
    WIGNER_YANASE = "wigner_yanase"
    IDENTITY = "identity"
    CUSTOM = "custom"


@dataclass(frozen=True)
class AdmissibleFunction:
    """Evaluator triple (f, f', f'') for a pull-back function on (0, 1).

    Admissibility requires f'(x) != 0 for every x in (0, 1).  The presets
    satisfy this by construction; a custom triple carries the caller's
    assertion that it does.  All three callables accept scalars or numpy
    arrays and evaluate elementwise.
    """

    kind: FunctionKind
    eval: Callable
    deriv1: Callable
    deriv2: Callable
    alpha: float | None = None

    @staticmethod
    def alpha_power(alpha: float) -> "AdmissibleFunction":
        """Power map x -> (2/(1-alpha)) * x**((1-alpha)/2).

        alpha = 1 is excluded; that limit is the logarithmic preset.
        """
        alpha = float(alpha)
        if alpha == 1.0:
            raise ValueError("alpha = 1 is the log preset, not a power map")
        p = (1.0 - alpha) / 2.0
        return AdmissibleFunction(
            kind=FunctionKind.ALPHA_POWER,
            eval=lambda x: np.asarray(x, dtype=float) ** p / p,
            deriv1=lambda x: np.asarray(x, dtype=float) ** (p - 1.0),
            deriv2=lambda x: (p - 1.0) * np.asarray(x, dtype=float) ** (p - 2.0),
            alpha=alpha,
        )

    @staticmethod
    def log() -> "AdmissibleFunction":
        return AdmissibleFunction(
            kind=FunctionKind.LOG,
            eval=np.log,
            deriv1=lambda x: 1.0 / np.asarray(x, dtype=float),
            deriv2=lambda x: -1.0 / np.asarray(x, dtype=float) ** 2,
            alpha=1.0,
        )

    @staticmethod
    def wigner_yanase() -> "AdmissibleFunction":
        """x -> 2*sqrt(x); the pull-back metric it induces is the Wigner-Yanase one."""
        return AdmissibleFunction(
            kind=FunctionKind.WIGNER_YANASE,
            eval=lambda x: 2.0 * np.sqrt(np.asarray(x, dtype=float)),
            deriv1=lambda x: np.asarray(x, dtype=float) ** -0.5,
            deriv2=lambda x: -0.5 * np.asarray(x, dtype=float) ** -1.5,
            alpha=0.0,
        )

    @staticmethod
    def identity() -> "AdmissibleFunction":
        return AdmissibleFunction(
            kind=FunctionKind.IDENTITY,
            eval=lambda x: np.asarray(x, dtype=float),
            deriv1=lambda x: np.ones_like(np.asarray(x, dtype=float)),
            deriv2=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        )

    @staticmethod
    def custom(eval: Callable, deriv1: Callable, deriv2: Callable) -> "AdmissibleFunction":
        """Caller-supplied triple; the caller asserts deriv1 is nowhere zero on (0, 1)."""
        return AdmissibleFunction(
            kind=FunctionKind.CUSTOM, eval=eval, deriv1=deriv1, deriv2=deriv2
        )


def _check_open_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} = {value} is outside the open interval (0, 1)")
    return value


def degeneracy_threshold(li: float, lj: float) -> float:
    """Gap below which a pair of eigenvalues is treated as degenerate."""
    return DEGENERACY_RTOL * max(1.0, abs(li), abs(lj))


def divided_difference(f: AdmissibleFunction, li: float, lj: float) -> float:
    """First divided difference (f(li) - f(lj)) / (li - lj).

    Near-equal arguments switch to f' at the midpoint, which keeps the value
    continuous across the switch and exactly symmetric in (li, lj).
    """
    li = _check_open_unit("li", li)
    lj = _check_open_unit("lj", lj)
    if abs(li - lj) < degeneracy_threshold(li, lj):
        return float(f.deriv1(0.5 * (li + lj)))
    return float((f.eval(li) - f.eval(lj)) / (li - lj))


def rho(f: AdmissibleFunction, li: float, lj: float) -> float:
    """Off-diagonal curvature kernel of a pull-back metric.

    rho_ij = -(f'(li) - f'(lj)) / ((f(li) - f(lj)) * f'(li) * f'(lj)) for a
    non-degenerate pair, with the limit -f''/f'**3 at the midpoint when the
    gap falls below the degeneracy threshold.
    """
    li = _check_open_unit("li", li)
    lj = _check_open_unit("lj", lj)
    if abs(li - lj) < degeneracy_threshold(li, lj):
        mid = 0.5 * (li + lj)
        return float(-f.deriv2(mid) / f.deriv1(mid) ** 3)
    d1i = float(f.deriv1(li))
    d1j = float(f.deriv1(lj))
    # grouping keeps the value bitwise symmetric under a swap of (li, lj)
    return -(d1i - d1j) / ((float(f.eval(li)) - float(f.eval(lj))) * (d1i * d1j))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalue list of a state, tagged with the scalar field of the space."""

    values: np.ndarray
    field: Field

    def __init__(self, values, field: Field = Field.COMPLEX):
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("spectrum needs at least two eigenvalues")
        if np.any(vals <= 0.0):
            raise ValueError("spectrum eigenvalues must be strictly positive")
        if abs(vals.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"spectrum must sum to 1, got {vals.sum()!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "field", Field(field))

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class SelfAdjointMatrix:
    """Square matrix equal to its conjugate transpose (within tolerance)."""

    entries: np.ndarray
    field: Field

    def __init__(self, entries, field: Field | None = None):
        a = np.asarray(entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("expected a square matrix")
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
            raise ValueError("matrix is not self-adjoint within tolerance")
        if field is None:
            field = Field.COMPLEX if np.iscomplexobj(a) else Field.REAL
        dtype = complex if field == Field.COMPLEX else float
        if field == Field.REAL and np.iscomplexobj(a):
            if np.max(np.abs(a.imag)) > HERMITIAN_TOL:
                raise ValueError("real field tag on a matrix with imaginary entries")
            a = a.real
        object.__setattr__(self, "entries", a.astype(dtype))
        object.__setattr__(self, "field", Field(field))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a self-adjoint matrix, eigenvalues sorted descending.

    Returns (eigenvalues, eigenvectors) with eigenvectors as columns, so that
    m = V diag(w) V*.  Accepts a SelfAdjointMatrix or a raw array (validated).
    """
    if not isinstance(m, SelfAdjointMatrix):
        m = SelfAdjointMatrix(m)
    try:
        w, v = np.linalg.eigh(m.entries)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigendecomposition failed: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
