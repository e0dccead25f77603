"""
Exact projection onto box ∩ {<w, x> = c} for one positive weight row.

h(lam) = sum_i w_i clamp(y_i - lam w_i) is non-increasing and piecewise linear
with breakpoints (y_i - 1)/w_i and (y_i + 1)/w_i.
"""

import numpy as np

from gdpart_core.errors import InfeasibleProjectionError
from gdpart_core.projection.base import ProjectionResult, clamp


def _h(y: np.ndarray, w: np.ndarray, lam: float) -> float:
    return float(w @ clamp(y - lam * w))


def solve_multiplier_1d(y: np.ndarray, w: np.ndarray, c: float):
    """
    Return (lam, evaluations) with h(lam) = c.

    Binary search over the sorted breakpoints locates the segment holding the
    root; the root follows from the linear form of h on that segment.
    """
    total = float(w.sum())
    tol = 1e-10 * max(total, 1e-300)
    if c > total + tol or c < -total - tol:
        raise InfeasibleProjectionError(
            f"target {c:.6g} outside achievable range [-{total:.6g}, {total:.6g}]"
        )
    if y.shape[0] == 0:
        return 0.0, 0

    breakpoints = np.sort(np.concatenate([(y - 1.0) / w, (y + 1.0) / w]))
    evaluations = 0

    # Smallest k with h(breakpoints[k]) <= c
    lo, hi = 0, breakpoints.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        evaluations += 1
        if _h(y, w, breakpoints[mid]) <= c:
            hi = mid
        else:
            lo = mid + 1
    k = lo

    if k == 0:
        return float(breakpoints[0]), evaluations
    if k == breakpoints.shape[0]:
        return float(breakpoints[-1]), evaluations

    left, right = breakpoints[k - 1], breakpoints[k]
    probe = 0.5 * (left + right)
    z = y - probe * w
    upper = z >= 1.0
    lower = z <= -1.0
    free = ~(upper | lower)

    slope = float(w[free] @ w[free])
    if slope == 0.0:
        return float(right), evaluations
    offset = float(w[upper].sum() - w[lower].sum() + w[free] @ y[free])
    lam = (offset - c) / slope
    return float(min(max(lam, left), right)), evaluations


def project_exact_1d(y, w, c: float) -> ProjectionResult:
    """
    Project y onto box ∩ {<w, x> = c}.

    Raises:
        InfeasibleProjectionError: |c| > sum(w)
        ValueError: non-positive weights or length mismatch
    """
    y = np.asarray(y, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if y.shape != w.shape:
        raise ValueError(f"point has shape {y.shape}, weights have shape {w.shape}")
    if np.any(w <= 0):
        raise ValueError("exact 1D projection needs strictly positive weights")

    lam, evaluations = solve_multiplier_1d(y, w, float(c))
    x = clamp(y - lam * w)
    return ProjectionResult(x=x, lam=np.array([lam]), method='exact_1d', iterations=evaluations)
