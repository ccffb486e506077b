"""Independent finite-difference differential geometry for validating closed forms.

Two routes to the scalar curvature of a chart, sharing nothing with the
closed-form modules beyond the admissible-function evaluators:

* intrinsic: metric field -> Christoffel symbols -> Riemann tensor -> double
  trace, with second-order central differences for every derivative;
* embedded: for a codimension-one chart into a flat ambient space, the unit
  normal field is differentiated along the chart to build the second
  fundamental form, and the curvature comes out of the Gauss relation.

All functions are pure in (chart, point, step) and safe to evaluate
concurrently, e.g. over scan grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import AdmissibleFunction, Field, divided_difference, eigh

__all__ = [
    "Chart",
    "MetricField",
    "StateChart",
    "simplex_chart",
    "qubit_chart",
    "diagonal_state_chart",
    "selfadjoint_basis",
    "pullback_metric_classical",
    "pullback_metric_quantum",
    "classical_metric_field",
    "quantum_metric_field",
    "state_embedding_chart",
    "intrinsic_scal_fd",
    "gauss_scal_fd",
]

DEFAULT_STEP = 1e-4
MIN_STEP = 1e-12


@dataclass(frozen=True)
class Chart:
    """Parameterized embedding u in R^m -> point of a flat ambient R^N."""

    dim: int
    ambient_dim: int
    embed: Callable[[np.ndarray], np.ndarray]
    domain_check: Callable[[np.ndarray], bool]
    boundary_distance: Callable[[np.ndarray], float] | None = None
    flat_ambient: bool = True
    name: str = ""


@dataclass(frozen=True)
class MetricField:
    """Symmetric positive-definite matrix field g(u) on an m-dimensional chart."""

    dim: int
    at: Callable[[np.ndarray], np.ndarray]
    boundary_distance: Callable[[np.ndarray], float] | None = None
    name: str = ""


@dataclass(frozen=True)
class StateChart:
    """Affine chart into the density matrices: u -> D(u) with constant tangents."""

    dim: int
    n: int
    field: Field
    state: Callable[[np.ndarray], np.ndarray]
    tangents: tuple
    domain_check: Callable[[np.ndarray], bool]
    boundary_distance: Callable[[np.ndarray], float]
    name: str = ""


# ---------------------------------------------------------------------------
# classical simplex charts


def _simplex_theta(u: np.ndarray, n: int) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (n - 1,):
        raise ValueError(f"chart point must have {n - 1} coordinates")
    return np.append(u, 1.0 - u.sum())


def _simplex_boundary_distance(u: np.ndarray, n: int) -> float:
    th = _simplex_theta(u, n)
    return float(min(th[:-1].min(initial=np.inf), th[-1] / np.sqrt(n - 1)))


def simplex_chart(alpha: float, n: int) -> Chart:
    """Simplex chart (n-1 free coordinates) embedded by the alpha power map.

    The embedding sends theta to (2/(1-alpha)) * theta**((1-alpha)/2)
    componentwise, and to log(theta) at alpha = 1.
    """
    alpha = float(alpha)
    if n < 2:
        raise ValueError("simplex chart needs n >= 2")

    def domain_check(u: np.ndarray) -> bool:
        th = _simplex_theta(u, n)
        return bool(np.all(th > 0.0))

    def embed(u: np.ndarray) -> np.ndarray:
        th = _simplex_theta(u, n)
        if not np.all(th > 0.0):
            raise ValueError(f"chart point {u!r} leaves the open simplex")
        if alpha == 1.0:
            return np.log(th)
        p = (1.0 - alpha) / 2.0
        return th ** p / p

    return Chart(
        dim=n - 1,
        ambient_dim=n,
        embed=embed,
        domain_check=domain_check,
        boundary_distance=lambda u: _simplex_boundary_distance(u, n),
        name=f"simplex(alpha={alpha}, n={n})",
    )


def pullback_metric_classical(alpha: float, u, n: int) -> np.ndarray:
    """Pull-back metric of the simplex chart, from the exact chart Jacobian.

    g_ab = sum_k theta_k^beta (d theta_k / d u_a)(d theta_k / d u_b) with
    beta = -alpha - 1; the Jacobian is the +/-1 pattern of the chart, so no
    differencing is involved.
    """
    th = _simplex_theta(np.asarray(u, dtype=float), n)
    if not np.all(th > 0.0):
        raise ValueError(f"chart point {u!r} leaves the open simplex")
    w = th ** (-float(alpha) - 1.0)
    return np.diag(w[:-1]) + w[-1]


def classical_metric_field(alpha: float, n: int) -> MetricField:
    return MetricField(
        dim=n - 1,
        at=lambda u: pullback_metric_classical(alpha, u, n),
        boundary_distance=lambda u: _simplex_boundary_distance(u, n),
        name=f"classical(alpha={alpha}, n={n})",
    )


# ---------------------------------------------------------------------------
# state charts

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def selfadjoint_basis(n: int, field: Field) -> list[np.ndarray]:
    """Symmetrized matrix-unit frame of the self-adjoint n-by-n matrices.

    Doubled diagonal units first, then symmetric off-diagonal pair sums,
    then (for the complex field) the i-antisymmetrized pair differences, so
    every element arises from the same symmetrization of matrix units.
    """
    field = Field(field)
    dtype = complex if field == Field.COMPLEX else float
    basis = []
    for i in range(n):
        m = np.zeros((n, n), dtype=dtype)
        m[i, i] = 2.0
        basis.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=dtype)
            m[i, j] = m[j, i] = 1.0
            basis.append(m)
    if field == Field.COMPLEX:
        for i in range(n):
            for j in range(i + 1, n):
                m = np.zeros((n, n), dtype=complex)
                m[i, j] = 1.0j
                m[j, i] = -1.0j
                basis.append(m)
    return basis


def qubit_chart(field: Field) -> StateChart:
    """Bloch-type chart of the 2-by-2 state space.

    Real field: D(u) = [[1/2 + u0, u1], [u1, 1/2 - u0]] with |u| < 1/2.
    Complex field: D(u) = (I + u0 sx + u1 sy + u2 sz) / 2 with |u| < 1.
    Cartesian coordinates avoid the polar coordinate singularity at the
    maximally mixed state.
    """
    field = Field(field)
    if field == Field.REAL:
        tangents = (
            np.array([[1.0, 0.0], [0.0, -1.0]]),
            np.array([[0.0, 1.0], [1.0, 0.0]]),
        )

        def state(u: np.ndarray) -> np.ndarray:
            u = np.asarray(u, dtype=float)
            return np.array([[0.5 + u[0], u[1]], [u[1], 0.5 - u[0]]])

        return StateChart(
            dim=2,
            n=2,
            field=field,
            state=state,
            tangents=tangents,
            domain_check=lambda u: bool(np.linalg.norm(u) < 0.5),
            boundary_distance=lambda u: float(0.5 - np.linalg.norm(u)),
            name="qubit(real)",
        )

    tangents = (0.5 * _SIGMA_X, 0.5 * _SIGMA_Y, 0.5 * _SIGMA_Z)

    def state(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return 0.5 * (
            np.eye(2, dtype=complex) + u[0] * _SIGMA_X + u[1] * _SIGMA_Y + u[2] * _SIGMA_Z
        )

    return StateChart(
        dim=3,
        n=2,
        field=field,
        state=state,
        tangents=tangents,
        domain_check=lambda u: bool(np.linalg.norm(u) < 1.0),
        boundary_distance=lambda u: float(1.0 - np.linalg.norm(u)),
        name="qubit(complex)",
    )


def diagonal_state_chart(n: int, field: Field = Field.REAL) -> StateChart:
    """Chart of commuting (diagonal) states; its pull-back metric is classical."""
    field = Field(field)
    dtype = complex if field == Field.COMPLEX else float
    tangents = []
    for a in range(n - 1):
        m = np.zeros((n, n), dtype=dtype)
        m[a, a] = 1.0
        m[n - 1, n - 1] = -1.0
        tangents.append(m)

    def state(u: np.ndarray) -> np.ndarray:
        return np.diag(_simplex_theta(np.asarray(u, dtype=float), n).astype(dtype))

    return StateChart(
        dim=n - 1,
        n=n,
        field=field,
        state=state,
        tangents=tuple(tangents),
        domain_check=lambda u: bool(np.all(_simplex_theta(u, n) > 0.0)),
        boundary_distance=lambda u: _simplex_boundary_distance(u, n),
        name=f"diagonal(n={n}, {field.value})",
    )


def _state_eigh(chart: StateChart, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = chart.state(u)
    w, v = eigh(d)
    if not (np.all(w > 0.0) and np.all(w < 1.0)):
        raise ValueError(f"state at {u!r} has spectrum outside (0, 1)")
    return w, v


def pullback_metric_quantum(f: AdmissibleFunction, u, chart: StateChart) -> np.ndarray:
    """Pull-back metric g_ab = Tr(df(D)(X_a) df(D)(X_b)) on a state chart.

    The derivative of the matrix function is evaluated in the eigenbasis of
    D(u): [df(X)]_ij = m_ij X~_ij where m_ij is the first divided difference
    of f on the eigenvalue pair and X~ is the tangent in that basis.
    """
    u = np.asarray(u, dtype=float)
    w, v = _state_eigh(chart, u)
    n = chart.n
    m = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            m[i, j] = m[j, i] = divided_difference(f, float(w[i]), float(w[j]))
    dfs = [m * (v.conj().T @ x @ v) for x in chart.tangents]
    g = np.empty((chart.dim, chart.dim))
    for a in range(chart.dim):
        for b in range(a, chart.dim):
            g[a, b] = g[b, a] = float(np.real(np.sum(dfs[a] * np.conj(dfs[b]))))
    return g


def quantum_metric_field(f: AdmissibleFunction, chart: StateChart) -> MetricField:
    return MetricField(
        dim=chart.dim,
        at=lambda u: pullback_metric_quantum(f, u, chart),
        boundary_distance=chart.boundary_distance,
        name=f"pullback({chart.name})",
    )


def _vec_selfadjoint(x: np.ndarray, field: Field) -> np.ndarray:
    """Orthonormal real coordinates of a self-adjoint matrix.

    The coordinatization is an isometry: Tr(XY) equals the Euclidean dot
    product of the coordinate vectors, which keeps the ambient space flat in
    the canonical sense.
    """
    n = x.shape[0]
    coords = [float(np.real(x[i, i])) for i in range(n)]
    root2 = np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            coords.append(root2 * float(np.real(x[i, j])))
    if field == Field.COMPLEX:
        for i in range(n):
            for j in range(i + 1, n):
                coords.append(root2 * float(np.imag(x[i, j])))
    return np.array(coords)


def state_embedding_chart(f: AdmissibleFunction, chart: StateChart) -> Chart:
    """Embedding chart u -> coordinates of f(D(u)) in the flat ambient space."""
    n = chart.n
    ambient = n * (n + 1) // 2 if chart.field == Field.REAL else n * n

    def embed(u: np.ndarray) -> np.ndarray:
        w, v = _state_eigh(chart, np.asarray(u, dtype=float))
        fd = (v * np.asarray(f.eval(w), dtype=float)) @ v.conj().T
        return _vec_selfadjoint(fd, chart.field)

    return Chart(
        dim=chart.dim,
        ambient_dim=ambient,
        embed=embed,
        domain_check=chart.domain_check,
        boundary_distance=chart.boundary_distance,
        name=f"embedded({chart.name})",
    )


# ---------------------------------------------------------------------------
# finite-difference machinery


def _resolve_step(obj, u: np.ndarray, h: float | None) -> float:
    if h is None:
        h = DEFAULT_STEP
        if obj.boundary_distance is not None:
            dist = float(obj.boundary_distance(u))
            if dist <= 0.0:
                raise ValueError(f"point {u!r} is outside the chart domain")
            # shrink only near the boundary: stencils reach at most 2h from u
            h *= min(1.0, 25.0 * dist)
    h = float(h)
    if h <= MIN_STEP:
        raise ValueError(f"step {h} underflows the usable range")
    return h


def _shifted(u: np.ndarray, axis: int, delta: float) -> np.ndarray:
    v = u.copy()
    v[axis] += delta
    return v


def _metric_jet(metric: MetricField, u: np.ndarray, h: float):
    m = metric.dim
    g = np.asarray(metric.at(u), dtype=float)
    dg = np.empty((m, m, m))
    for k in range(m):
        dg[k] = (metric.at(_shifted(u, k, h)) - metric.at(_shifted(u, k, -h))) / (2.0 * h)
    return g, dg


def _christoffel(metric: MetricField, u: np.ndarray, h: float):
    g, dg = _metric_jet(metric, u, h)
    try:
        np.linalg.cholesky(g)
        ginv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"metric is singular or indefinite at {u!r}") from exc
    lower = 0.5 * (np.einsum("ijm->mij", dg) + np.einsum("jim->mij", dg) - dg)
    return np.einsum("km,mij->kij", ginv, lower), ginv


def intrinsic_scal_fd(metric: MetricField, u, h: float | None = None) -> float:
    """Scalar curvature of a metric field by central differences.

    Differentiates the metric for the Christoffel symbols, differentiates
    those for the curvature tensor
    R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj,
    then double-traces: Scal = g^jl R^k_jkl.
    """
    u = np.asarray(u, dtype=float)
    h = _resolve_step(metric, u, h)
    m = metric.dim
    gamma, ginv = _christoffel(metric, u, h)
    dgamma = np.empty((m, m, m, m))
    for k in range(m):
        plus, _ = _christoffel(metric, _shifted(u, k, h), h)
        minus, _ = _christoffel(metric, _shifted(u, k, -h), h)
        dgamma[k] = (plus - minus) / (2.0 * h)
    riemann = (
        np.einsum("kilj->ijkl", dgamma)
        - np.einsum("likj->ijkl", dgamma)
        + np.einsum("ikm,mlj->ijkl", gamma, gamma)
        - np.einsum("ilm,mkj->ijkl", gamma, gamma)
    )
    ricci = np.einsum("kjkl->jl", riemann)
    return float(np.einsum("jl,jl->", ginv, ricci))


def _chart_jacobian(chart: Chart, u: np.ndarray, h: float) -> np.ndarray:
    rows = [
        (chart.embed(_shifted(u, a, h)) - chart.embed(_shifted(u, a, -h))) / (2.0 * h)
        for a in range(chart.dim)
    ]
    return np.array(rows)


def _unit_normal(chart: Chart, u: np.ndarray, h: float) -> np.ndarray:
    """Unit normal of a codimension-one chart via the cofactor cross product.

    The cofactor vector is a polynomial in the Jacobian entries, hence a
    smooth function of u with a globally consistent orientation; no sign
    alignment between neighboring stencil points is needed.
    """
    jac = _chart_jacobian(chart, u, h)
    n = np.empty(chart.ambient_dim)
    for i in range(chart.ambient_dim):
        n[i] = (-1.0) ** i * np.linalg.det(np.delete(jac, i, axis=1))
    norm = np.linalg.norm(n)
    scale = np.linalg.norm(jac)
    if norm <= 1e-12 * max(1.0, scale ** chart.dim):
        raise ValueError(f"degenerate Jacobian at {u!r}")
    return n / norm


def gauss_scal_fd(chart: Chart, u, h: float | None = None) -> float:
    """Scalar curvature of a codimension-one chart from its normal field.

    Builds FD tangents, differentiates the unit normal along each chart
    direction for the shape bilinear form S(X, Y) = -<d_X N, Y>, expresses S
    in an orthonormal tangent frame, and assembles
    Scal = (tr S)^2 - tr(S^2), valid because the ambient space is flat.
    """
    u = np.asarray(u, dtype=float)
    if not chart.flat_ambient:
        raise ValueError("the Gauss-relation route requires a flat ambient space")
    if chart.ambient_dim != chart.dim + 1:
        raise ValueError(
            f"codimension-one chart required, got dim {chart.dim} in "
            f"ambient {chart.ambient_dim}"
        )
    if not chart.domain_check(u):
        raise ValueError(f"point {u!r} is outside the chart domain")
    h = _resolve_step(chart, u, h)

    jac = _chart_jacobian(chart, u, h)
    gram = jac @ jac.T
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"degenerate Jacobian at {u!r}") from exc

    m = chart.dim
    dnormal = np.empty((m, chart.ambient_dim))
    for a in range(m):
        plus = _unit_normal(chart, _shifted(u, a, h), h)
        minus = _unit_normal(chart, _shifted(u, a, -h), h)
        dnormal[a] = (plus - minus) / (2.0 * h)
    shape = -dnormal @ jac.T
    shape = 0.5 * (shape + shape.T)
    ortho = np.linalg.solve(chol, np.linalg.solve(chol, shape.T).T)
    return float(np.trace(ortho) ** 2 - np.sum(ortho * ortho.T))
