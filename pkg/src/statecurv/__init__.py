"""Scalar curvature of probability simplices and quantum state spaces.

Closed-form curvature of pull-back geometries (power, logarithmic,
Wigner-Yanase and general admissible functions), finite-difference
differential-geometry oracles that validate every formula independently,
and majorization machinery for curvature monotonicity scans.
"""

from .classical import ClassicalCurvatureReport, Distribution, scal_classical, scal_p3
from .majorization import (
    MajorizationPath,
    TTransform,
    apply_t_transform,
    is_majorized,
    majorization_path,
)
from .numerics import (
    AdmissibleFunction,
    ConvergenceError,
    Field,
    SelfAdjointMatrix,
    Spectrum,
    divided_difference,
    eigh,
    rho,
)
from .quantum import (
    QuantumCurvatureReport,
    StateDimensions,
    scal_m2,
    scal_quantum,
    state_dimensions,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleFunction",
    "ClassicalCurvatureReport",
    "ConvergenceError",
    "Distribution",
    "Field",
    "MajorizationPath",
    "QuantumCurvatureReport",
    "SelfAdjointMatrix",
    "Spectrum",
    "StateDimensions",
    "TTransform",
    "apply_t_transform",
    "divided_difference",
    "eigh",
    "is_majorized",
    "majorization_path",
    "rho",
    "scal_classical",
    "scal_m2",
    "scal_p3",
    "scal_quantum",
    "state_dimensions",
]
