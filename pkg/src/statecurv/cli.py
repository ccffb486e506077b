"""Command-line front-end: curvature reports, monotonicity scans, verification.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import enum
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import classical, majorization, oracle, quantum
from .numerics import AdmissibleFunction, Field, Spectrum

__all__ = [
    "ScanGeometry",
    "ScanConfig",
    "ScanRow",
    "ScanSeries",
    "monotone_flag",
    "scan_p3",
    "scan_m2",
    "run_verification",
    "main",
]

DEFAULT_ALPHAS = (-0.9, -0.5, -0.1, 0.1, 0.5, 0.9)
DEFAULT_GRID = 101
M2_EDGE = 1e-3  # pure and maximally mixed states sit outside the open manifold
MONOTONE_TOL = 1e-12


class ScanGeometry(enum.Enum):
    P3 = "P3"
    M2_REAL = "M2Real"
    M2_COMPLEX = "M2Complex"


@dataclass(frozen=True)
class ScanRow:
    alpha: float
    parameter: float
    scal: float
    monotone_flag: str


@dataclass(frozen=True)
class ScanSeries:
    alpha: float
    monotone_flag: str
    rows: tuple[ScanRow, ...]


@dataclass(frozen=True)
class ScanConfig:
    geometry: ScanGeometry
    alphas: tuple[float, ...]
    grid: int
    output_path: str | None = None
    format: str = "csv"
    base: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.grid < 2:
            raise ValueError("grid must be >= 2")
        if not self.alphas:
            raise ValueError("alphas must be non-empty")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.geometry == ScanGeometry.P3:
            if self.base is None:
                raise ValueError("P3 scans need a base distribution")
            if not self.base[0] > self.base[1]:
                raise ValueError("P3 scans need a base with a1 > a2")
        object.__setattr__(self, "alphas", tuple(sorted(float(a) for a in self.alphas)))


def alpha_function(alpha: float) -> AdmissibleFunction:
    """Admissible function of the alpha family (the log preset at alpha = 1)."""
    return AdmissibleFunction.log() if alpha == 1.0 else AdmissibleFunction.alpha_power(alpha)


def monotone_flag(values, tol: float = MONOTONE_TOL) -> str:
    """Grid-resolution monotonicity of a series: a finding, not a proof."""
    diffs = np.diff(np.asarray(values, dtype=float))
    up = bool(np.any(diffs > tol))
    down = bool(np.any(diffs < -tol))
    if up and down:
        return "non-monotone"
    if up:
        return "increasing"
    if down:
        return "decreasing"
    return "constant"


def scan_p3(base, alphas, grid: int) -> list[ScanSeries]:
    """Sample the 3-point simplex curvature along the two-coordinate mixing segment.

    The base (a1, a2, a3) with a1 > a2 is mixed as (a1 - x, a2 + x, a3) for x
    on a uniform grid over [0, (a1 - a2) / 2]; x = 0 is the base itself and
    the right endpoint is the fully averaged pair.
    """
    a = classical.as_distribution(base).probs
    if a.size != 3:
        raise ValueError("P3 scans need a 3-point base distribution")
    if not a[0] > a[1]:
        raise ValueError("P3 scans need a base with a1 > a2")
    xs = np.linspace(0.0, (a[0] - a[1]) / 2.0, int(grid))
    series = []
    for alpha in sorted(float(v) for v in alphas):
        values = [
            classical.scal_p3(alpha, np.array([a[0] - x, a[1] + x, a[2]])) for x in xs
        ]
        flag = monotone_flag(values)
        rows = tuple(
            ScanRow(alpha=alpha, parameter=float(x), scal=float(v), monotone_flag=flag)
            for x, v in zip(xs, values)
        )
        series.append(ScanSeries(alpha=alpha, monotone_flag=flag, rows=rows))
    return series


def scan_m2(field: Field, alphas, grid: int, edge: float = M2_EDGE) -> list[ScanSeries]:
    """Sample the 2-by-2 state curvature over the mixing parameter r.

    Eigenvalues are ((1 + r) / 2, (1 - r) / 2) for r on a uniform grid in
    (edge, 1 - edge); larger r means less mixed.
    """
    field = Field(field)
    rs = np.linspace(edge, 1.0 - edge, int(grid))
    series = []
    for alpha in sorted(float(v) for v in alphas):
        f = alpha_function(alpha)
        values = [
            quantum.scal_m2(f, (1.0 + r) / 2.0, (1.0 - r) / 2.0, field) for r in rs
        ]
        flag = monotone_flag(values)
        rows = tuple(
            ScanRow(alpha=alpha, parameter=float(r), scal=float(v), monotone_flag=flag)
            for r, v in zip(rs, values)
        )
        series.append(ScanSeries(alpha=alpha, monotone_flag=flag, rows=rows))
    return series


# ---------------------------------------------------------------------------
# emission


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(series: list[ScanSeries], geometry: str, field: str, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(["geometry", "field", "alpha", "parameter", "scal"])
    for s in series:
        for row in s.rows:
            writer.writerow([geometry, field, _fmt(row.alpha), _fmt(row.parameter), _fmt(row.scal)])


def _scan_payload(series: list[ScanSeries], geometry: str, field: str) -> dict:
    return {
        "geometry": geometry,
        "field": field,
        "series": [
            {
                "alpha": s.alpha,
                "monotone_flag": s.monotone_flag,
                "rows": [{"parameter": r.parameter, "scal": r.scal} for r in s.rows],
            }
            for s in series
        ],
    }


def _emit_scan(series, geometry: str, field: str, fmt: str, output_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(_scan_payload(series, geometry, field), indent=2) + "\n"
        if output_path:
            with open(output_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        if output_path:
            with open(output_path, "w", newline="") as fh:
                _write_csv(series, geometry, field, fh)
        else:
            _write_csv(series, geometry, field, sys.stdout)
    for s in series:
        print(f"# alpha={_fmt(s.alpha)} flag={s.monotone_flag}", file=sys.stderr)


# ---------------------------------------------------------------------------
# verification harness


def _random_distribution(rng: np.random.Generator, n: int, margin: float = 0.02) -> np.ndarray:
    while True:
        p = rng.dirichlet(np.ones(n))
        if p.min() >= margin:
            return p


def _rel_err(computed: float, expected: float) -> float:
    return abs(computed - expected) / max(1.0, abs(expected))


def _check(name: str, value: float, tol: float) -> dict:
    return {"name": name, "max_rel_err": float(value), "tolerance": tol, "passed": bool(value <= tol)}


def run_verification(seed: int, trials: int) -> dict:
    """Re-run the closed-form / oracle cross checks on random fixtures.

    Deterministic in (seed, trials); the summary lists the worst error seen
    per check family against its tolerance.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    checks = []

    err = 0.0
    for n in range(2, 7):
        for _ in range(trials):
            got = classical.scal_classical(0.0, _random_distribution(rng, n)).scal
            err = max(err, _rel_err(got, (n - 1) * (n - 2) / 4.0))
    checks.append(_check("classical_sphere_alpha0", err, 1e-10))

    err = 0.0
    for n in (2, 3, 4):
        for _ in range(trials):
            err = max(err, abs(classical.scal_classical(-1.0, _random_distribution(rng, n)).scal))
    checks.append(_check("classical_flat_alpha_minus1", err, 1e-10))

    err = 0.0
    for alpha in np.linspace(-3.0, 3.0, 13):
        for _ in range(max(1, trials // 4)):
            err = max(err, abs(classical.scal_classical(float(alpha), _random_distribution(rng, 2)).scal))
    checks.append(_check("classical_n2_vanishing", err, 1e-10))

    wy = AdmissibleFunction.wigner_yanase()
    err = 0.0
    for n in (2, 3, 4):
        for field in (Field.REAL, Field.COMPLEX):
            d = quantum.state_dimensions(n, field)
            for _ in range(trials):
                spec = Spectrum(_random_distribution(rng, n), field)
                err = max(err, _rel_err(quantum.scal_quantum(wy, spec).scal, d * (d - 1) / 4.0))
    checks.append(_check("wigner_yanase_sphere", err, 1e-10))

    ident = AdmissibleFunction.identity()
    err = 0.0
    for n in (2, 3, 4):
        for field in (Field.REAL, Field.COMPLEX):
            for _ in range(trials):
                spec = Spectrum(_random_distribution(rng, n), field)
                err = max(err, abs(quantum.scal_quantum(ident, spec).scal))
    checks.append(_check("identity_flat", err, 1e-10))

    err = 0.0
    for _ in range(trials * 5):
        alpha = float(rng.uniform(-2.0, 2.0))
        theta = _random_distribution(rng, 3)
        rep = classical.scal_classical(alpha, theta)
        err = max(err, _rel_err(classical.scal_p3(alpha, theta), rep.scal))
    checks.append(_check("p3_consistency", err, 1e-12))

    err = 0.0
    fields = (Field.REAL, Field.COMPLEX)
    for _ in range(trials * 5):
        f = alpha_function(float(rng.uniform(-2.0, 0.95)))
        l1 = float(rng.uniform(0.55, 0.9))
        spec = Spectrum([l1, 1.0 - l1], fields[int(rng.integers(2))])
        got = quantum.scal_m2(f, l1, 1.0 - l1, spec.field)
        err = max(err, _rel_err(got, quantum.scal_quantum(f, spec).scal))
    checks.append(_check("m2_consistency", err, 1e-12))

    err = 0.0
    for _ in range(trials * 5):
        alpha = float(rng.uniform(-2.0, 2.0))
        theta = _random_distribution(rng, int(rng.integers(2, 5)))
        rep = quantum.scal_quantum(alpha_function(alpha), Spectrum(theta, Field.REAL))
        err = max(err, _rel_err(rep.x1, classical.scal_classical(alpha, theta).scal))
    checks.append(_check("diagonal_restriction", err, 1e-10))

    err = 0.0
    for _ in range(trials):
        f = alpha_function(float(rng.uniform(-1.5, 0.9)))
        lam = float(rng.uniform(0.15, 0.45))
        thr = 1e-7
        wide = Spectrum([lam + 0.505 * thr, lam - 0.505 * thr, 1.0 - 2 * lam], Field.COMPLEX)
        narrow = Spectrum([lam + 0.495 * thr, lam - 0.495 * thr, 1.0 - 2 * lam], Field.COMPLEX)
        a = quantum.scal_quantum(f, wide).scal
        b = quantum.scal_quantum(f, narrow).scal
        err = max(err, _rel_err(a, b))
    checks.append(_check("degeneracy_continuity", err, 1e-6))

    violations = 0
    for _ in range(trials * 10):
        n = int(rng.integers(2, 6))
        x = _random_distribution(rng, n)
        k, l = rng.choice(n, size=2, replace=False)
        t = majorization.TTransform(int(k), int(l), float(rng.uniform(0.0, 1.0)))
        if not majorization.is_majorized(majorization.apply_t_transform(x, t), x):
            violations += 1
    checks.append(_check("t_transform_majorizes", float(violations), 0.0))

    violations = 0
    for _ in range(trials):
        n = int(rng.integers(3, 6))
        b = _random_distribution(rng, n)
        a = b
        for _ in range(3):
            k, l = rng.choice(n, size=2, replace=False)
            a = majorization.apply_t_transform(
                a, majorization.TTransform(int(k), int(l), float(rng.uniform(0.0, 1.0)))
            )
        path = majorization.majorization_path(a, b, steps=2)
        for lo, hi in zip(path.steps, path.steps[1:]):
            if not majorization.is_majorized(lo, hi):
                violations += 1
            if int(np.sum(lo.probs != hi.probs)) > 2:
                violations += 1
    checks.append(_check("majorization_paths", float(violations), 0.0))

    npts = max(1, min(trials, 5))
    err_i = 0.0
    err_g = 0.0
    for n in (2, 3):
        for alpha in (-0.5, 0.5):
            metric = oracle.classical_metric_field(alpha, n)
            chart = oracle.simplex_chart(alpha, n)
            for _ in range(npts):
                theta = _random_distribution(rng, n, margin=0.15)
                u = theta[:-1]
                want = classical.scal_classical(alpha, theta).scal
                err_i = max(err_i, _rel_err(oracle.intrinsic_scal_fd(metric, u), want))
                err_g = max(err_g, _rel_err(oracle.gauss_scal_fd(chart, u), want))
    checks.append(_check("oracle_classical_intrinsic", err_i, 1e-4))
    checks.append(_check("oracle_classical_gauss", err_g, 1e-4))

    err_i = 0.0
    err_g = 0.0
    for field in (Field.REAL, Field.COMPLEX):
        state = oracle.qubit_chart(field)
        for f in (AdmissibleFunction.alpha_power(0.5), AdmissibleFunction.log()):
            metric = oracle.quantum_metric_field(f, state)
            chart = oracle.state_embedding_chart(f, state)
            radius = 0.5 if field == Field.REAL else 1.0
            for _ in range(npts):
                direction = rng.normal(size=state.dim)
                direction /= np.linalg.norm(direction)
                u = direction * radius * float(rng.uniform(0.3, 0.7))
                r = float(np.linalg.norm(u)) / radius
                want = quantum.scal_m2(f, (1 + r) / 2, (1 - r) / 2, field)
                err_i = max(err_i, _rel_err(oracle.intrinsic_scal_fd(metric, u), want))
                err_g = max(err_g, _rel_err(oracle.gauss_scal_fd(chart, u), want))
    checks.append(_check("oracle_m2_intrinsic", err_i, 1e-4))
    checks.append(_check("oracle_m2_gauss", err_g, 1e-4))

    return {
        "seed": int(seed),
        "trials": int(trials),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise ValueError(f"could not parse {text!r} as comma-separated reals") from exc


def _parse_function(spec: str) -> AdmissibleFunction:
    if spec == "log":
        return AdmissibleFunction.log()
    if spec == "wy":
        return AdmissibleFunction.wigner_yanase()
    if spec == "id":
        return AdmissibleFunction.identity()
    if spec.startswith("alpha:"):
        return AdmissibleFunction.alpha_power(float(spec.split(":", 1)[1]))
    raise ValueError(f"unknown function spec {spec!r}; use alpha:<val>, log, wy or id")


def _cmd_classical(args) -> int:
    report = classical.scal_classical(args.alpha, _parse_floats(args.theta))
    print(json.dumps({"scal": report.scal, "c": report.c, "alpha": report.alpha}, indent=2))
    return 0


def _cmd_quantum(args) -> int:
    spec = Spectrum(_parse_floats(args.spectrum), Field(args.field))
    report = quantum.scal_quantum(_parse_function(args.f), spec)
    payload = {
        "scal": report.scal,
        "x1": report.x1,
        "x2": report.x2,
        "x3": report.x3,
        "x4": report.x4,
        "c": report.c,
        "field": report.field.value,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_scan_p3(args) -> int:
    base = _parse_floats(args.base)
    config = ScanConfig(
        geometry=ScanGeometry.P3,
        alphas=tuple(_parse_floats(args.alphas)),
        grid=args.grid,
        output_path=args.output,
        format=args.format,
        base=tuple(base),
    )
    series = scan_p3(base, config.alphas, config.grid)
    _emit_scan(series, "P3", "classical", config.format, config.output_path)
    return 0


def _cmd_scan_m2(args) -> int:
    field = Field(args.field)
    geometry = ScanGeometry.M2_REAL if field == Field.REAL else ScanGeometry.M2_COMPLEX
    config = ScanConfig(
        geometry=geometry,
        alphas=tuple(_parse_floats(args.alphas)),
        grid=args.grid,
        output_path=args.output,
        format=args.format,
    )
    series = scan_m2(field, config.alphas, config.grid)
    _emit_scan(series, "M2", field.value, config.format, config.output_path)
    return 0


def _cmd_verify(args) -> int:
    if args.trials < 1:
        print("error: trials must be >= 1", file=sys.stderr)
        return 2
    summary = run_verification(args.seed, args.trials)
    print(json.dumps(summary, indent=2))
    return 0 if summary["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statecurv",
        description="Scalar curvature of probability simplices and quantum state "
        "spaces under pull-back metrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical", help="curvature of the n-point simplex")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", required=True, help="comma-separated probabilities")
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("quantum", help="curvature of the n-by-n state space")
    p.add_argument("--f", required=True, help="alpha:<val>, log, wy or id")
    p.add_argument("--spectrum", required=True, help="comma-separated eigenvalues")
    p.add_argument("--field", choices=["real", "complex"], required=True)
    p.set_defaults(func=_cmd_quantum)

    p = sub.add_parser("scan-p3", help="curvature along the 3-point mixing segment")
    p.add_argument("--base", default="0.5,0.3,0.2", help="base distribution a1,a2,a3 with a1 > a2")
    p.add_argument("--alphas", default=",".join(str(a) for a in DEFAULT_ALPHAS))
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_scan_p3)

    p = sub.add_parser("scan-m2", help="curvature of 2-by-2 states over the mixing parameter")
    p.add_argument("--field", choices=["real", "complex"], required=True)
    p.add_argument("--alphas", default=",".join(str(a) for a in DEFAULT_ALPHAS))
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_scan_m2)

    p = sub.add_parser("verify", help="cross-check closed forms against the oracles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
