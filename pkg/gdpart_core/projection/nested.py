"""
Nested binary search for the multipliers of d equality constraints.

For a prefix lam_1..lam_t, Delta_t(lam_t) is the value of constraint t once
constraints t+1..d are met by the inner searches. Delta_t is monotone in lam_t;
its direction is read off the bracket ends.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from gdpart_core.errors import InfeasibleProjectionError
from gdpart_core.projection.base import ProjectionResult, clamp
from gdpart_core.projection.exact_1d import solve_multiplier_1d

logger = logging.getLogger(__name__)

MAX_EXPANSIONS = 60


def default_initial_bound(y: np.ndarray, weights: np.ndarray) -> float:
    """max_i(|y_i| + 1) / min_ij w^j_i."""
    if y.size == 0:
        return 1.0
    return float((np.abs(y).max() + 1.0) / weights.min())


class _NestedSearch:

    def __init__(self, weights, targets, delta, initial_bound, growth):
        self.weights = weights
        self.targets = targets
        self.delta = delta
        self.initial_bound = initial_bound
        self.growth = growth
        self.tol = 1e-12 * weights.sum(axis=1)
        self.evaluations = 0

    def _value(self, shifted: np.ndarray, t: int, lam_t: float) -> Tuple[float, List[float]]:
        moved = shifted - lam_t * self.weights[t]
        rest = self.solve(moved, t + 1)
        x = clamp(moved - np.asarray(rest) @ self.weights[t + 1:]) if rest else clamp(moved)
        return float(self.weights[t] @ x), rest

    def solve(self, shifted: np.ndarray, t: int) -> List[float]:
        """Multipliers for constraints t..d-1 given the already shifted point."""
        d = self.weights.shape[0]
        if t == d:
            return []
        if t == d - 1:
            self.evaluations += 1
            lam, _ = solve_multiplier_1d(shifted, self.weights[t], self.targets[t])
            return [lam]

        target = self.targets[t]
        lo, hi = -self.initial_bound, self.initial_bound
        f_lo, rest_lo = self._value(shifted, t, lo)
        f_hi, rest_hi = self._value(shifted, t, hi)
        expansions = 0
        while not (min(f_lo, f_hi) - self.tol[t] <= target <= max(f_lo, f_hi) + self.tol[t]):
            if expansions == MAX_EXPANSIONS:
                raise InfeasibleProjectionError(
                    f"multiplier {t} not bracketed after {MAX_EXPANSIONS} expansions (|lam| <= {hi:.3g})"
                )
            lo, hi = lo * self.growth, hi * self.growth
            f_lo, rest_lo = self._value(shifted, t, lo)
            f_hi, rest_hi = self._value(shifted, t, hi)
            expansions += 1

        decreasing = f_lo >= f_hi
        best: Optional[Tuple[float, List[float]]] = None
        while hi - lo > self.delta:
            mid = 0.5 * (lo + hi)
            f_mid, rest_mid = self._value(shifted, t, mid)
            best = (mid, rest_mid)
            if abs(f_mid - target) <= self.tol[t]:
                break
            if (f_mid > target) == decreasing:
                lo = mid
            else:
                hi = mid
        if best is None:
            mid = 0.5 * (lo + hi)
            best = (mid, self._value(shifted, t, mid)[1])
        return [best[0]] + best[1]


def nested_projection(
        y,
        weights,
        targets,
        delta: float = 1e-9,
        initial_bound: Optional[float] = None,
        growth: float = 2.0,
) -> ProjectionResult:
    """
    Project y onto box ∩ {<w^j, x> = c_j, j = 1..d} by nested binary search.

    Args:
        y: point to project
        weights: d x n strictly positive rows
        targets: c_1..c_d
        delta: precision of each multiplier
        initial_bound: first bracket half-width (default max(|y|+1)/min w)
        growth: bracket expansion factor

    Raises:
        InfeasibleProjectionError: a bracket could not be found
    """
    y = np.asarray(y, dtype=np.float64)
    weights = np.atleast_2d(np.asarray(weights, dtype=np.float64))
    targets = np.asarray(targets, dtype=np.float64).reshape(-1)
    if weights.shape[1] != y.shape[0] or targets.shape[0] != weights.shape[0]:
        raise ValueError("point, weights and targets disagree on shape")
    if weights.size and np.any(weights <= 0):
        raise ValueError("nested search needs strictly positive weights")
    if growth <= 1.0:
        raise ValueError(f"growth must exceed 1, got {growth}")

    if initial_bound is None:
        initial_bound = default_initial_bound(y, weights)
    search = _NestedSearch(weights, targets, delta, initial_bound, growth)
    lam = np.asarray(search.solve(y, 0), dtype=np.float64)
    x = clamp(y - lam @ weights) if lam.size else clamp(y)
    logger.debug(f"nested search: d={weights.shape[0]}, {search.evaluations} inner solves")
    return ProjectionResult(x=x, lam=lam, method='nested', iterations=search.evaluations)
