"""Majorization order, T-transforms, and mixing paths between comparable distributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import Distribution, as_distribution

__all__ = [
    "PREFIX_TOL",
    "TTransform",
    "MajorizationPath",
    "is_majorized",
    "apply_t_transform",
    "majorization_path",
]

# absolute slack on prefix-sum comparisons: majorization gates scans, and
# finite-difference-level noise must not flip the predicate
PREFIX_TOL = 1e-12


@dataclass(frozen=True)
class TTransform:
    """Averaging of two coordinates with convex weight t (0-based indices k != l)."""

    k: int
    l: int
    t: float

    def __post_init__(self):
        if self.k == self.l:
            raise ValueError("T-transform needs two distinct indices")
        if self.k < 0 or self.l < 0:
            raise ValueError("indices must be non-negative")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t}")


@dataclass(frozen=True)
class MajorizationPath:
    """Ordered distributions c_1 ... c_d with c_z majorized by c_{z+1}.

    Adjacent elements differ in at most two coordinates.
    """

    steps: tuple[Distribution, ...]


def _sorted_desc(values: np.ndarray) -> np.ndarray:
    # stable descending sort: ties keep original index order
    return values[np.argsort(-values, kind="stable")]


def is_majorized(a, b, tol: float = PREFIX_TOL) -> bool:
    """True iff every prefix sum of sorted-descending a is <= that of b."""
    va = as_distribution(a).probs
    vb = as_distribution(b).probs
    if va.size != vb.size:
        raise ValueError(f"length mismatch: {va.size} vs {vb.size}")
    pa = np.cumsum(_sorted_desc(va))
    pb = np.cumsum(_sorted_desc(vb))
    return bool(np.all(pa[:-1] <= pb[:-1] + tol))


def apply_t_transform(x, transform: TTransform) -> Distribution:
    """Average coordinates k and l of x with weight t; the result is majorized by x."""
    v = as_distribution(x).probs.copy()
    k, l, t = transform.k, transform.l, transform.t
    if k >= v.size or l >= v.size:
        raise IndexError(f"transform indices ({k}, {l}) out of range for n = {v.size}")
    xk, xl = v[k], v[l]
    v[k] = t * xk + (1.0 - t) * xl
    v[l] = (1.0 - t) * xk + t * xl
    return Distribution(v)


def majorization_path(a, b, steps: int = 1) -> MajorizationPath:
    """Chain of T-transforms from a up to b, valid whenever a is majorized by b.

    Works on the descending-sorted representatives of the endpoints (the
    order is the normalization the majorization relation sees).  One
    T-transform per mismatched coordinate, at most n - 1 in total; each
    transform is optionally refined into `steps` sub-steps so scans can
    sample the connecting segment densely.
    """
    steps = int(steps)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    a_sorted = _sorted_desc(as_distribution(a).probs)
    b_sorted = _sorted_desc(as_distribution(b).probs)
    if a_sorted.size != b_sorted.size:
        raise ValueError(f"length mismatch: {a_sorted.size} vs {b_sorted.size}")
    if not is_majorized(a_sorted, b_sorted):
        raise ValueError("majorization_path requires a to be majorized by b")

    if np.array_equal(a_sorted, b_sorted):
        return MajorizationPath(steps=(Distribution(a_sorted),))

    # walk from b down to a, fixing one mismatched sorted coordinate per
    # transform; the donor is the last over-target position, which keeps the
    # working vector descending and its positions aligned with the target
    points: list[np.ndarray] = [b_sorted.copy()]
    cur = b_sorted.copy()
    for _ in range(a_sorted.size + 1):
        order = np.argsort(-cur, kind="stable")
        cs = cur[order]
        mismatched = np.nonzero(cs != a_sorted)[0]
        if mismatched.size == 0:
            break
        over = np.nonzero(cs > a_sorted)[0]
        j_s = int(over[-1])
        under = np.nonzero((cs < a_sorted) & (np.arange(cs.size) > j_s))[0]
        if under.size == 0:
            raise RuntimeError("majorization path lost its receiving coordinate")
        k_s = int(under[0])
        gap_j = cs[j_s] - a_sorted[j_s]
        gap_k = a_sorted[k_s] - cs[k_s]
        delta = min(gap_j, gap_k)
        t = 1.0 - delta / (cs[j_s] - cs[k_s])
        j, k = int(order[j_s]), int(order[k_s])

        target = cur.copy()
        if mismatched.size == 2:
            # last transform: land exactly on the remaining target values
            target[j] = a_sorted[j_s]
            target[k] = a_sorted[k_s]
        else:
            target[j] = a_sorted[j_s] if delta == gap_j else cur[j] - delta
            target[k] = a_sorted[k_s] if delta == gap_k else cur[k] + delta

        for m in range(1, steps):
            tm = 1.0 - (m / steps) * (1.0 - t)
            mid = cur.copy()
            mid[j] = tm * cur[j] + (1.0 - tm) * cur[k]
            mid[k] = (1.0 - tm) * cur[j] + tm * cur[k]
            points.append(mid)
        points.append(target)
        cur = target
    else:
        raise RuntimeError("majorization path did not converge")

    points.reverse()
    return MajorizationPath(steps=tuple(Distribution(p) for p in points))
