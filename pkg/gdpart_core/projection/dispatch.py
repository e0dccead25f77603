"""
project_K: projection onto K = box ∩ slabs by any of the available methods.

The exact and nested methods guess the sign of every multiplier. A dimension
guessed 0 is dropped; a dimension guessed +/- becomes the equality
<w^j, x> = b_j +/- eps W_j. A guess is accepted when the solved multipliers
carry the guessed signs and the dropped slabs hold.
"""

import itertools
import logging
from typing import Callable, List, Tuple

import numpy as np

from gdpart_core.errors import InfeasibleProjectionError
from gdpart_core.projection.base import (
    BalanceSpec, ProjectionProblem, ProjectionResult, EXACT_TOL, ITERATIVE_TOL, METHODS, clamp,
)
from gdpart_core.projection.exact_1d import project_exact_1d
from gdpart_core.projection.exact_2d import project_exact_2d
from gdpart_core.projection.iterative import (
    alternating_projection, dykstra_projection, ONE_SHOT, TO_CONVERGENCE, DEFAULT_MAX_ROUNDS,
)
from gdpart_core.projection.nested import nested_projection

logger = logging.getLogger(__name__)

EqualitySolver = Callable[[np.ndarray, np.ndarray, np.ndarray], ProjectionResult]


def sign_patterns(d: int) -> List[Tuple[int, ...]]:
    """All patterns over {0, +1, -1}^d, most zeros first."""
    patterns = list(itertools.product((0, 1, -1), repeat=d))
    return sorted(patterns, key=lambda p: -sum(1 for s in p if s == 0))


def _exact_equalities(y: np.ndarray, weights: np.ndarray, targets: np.ndarray, seed: int) -> ProjectionResult:
    if weights.shape[0] == 1:
        return project_exact_1d(y, weights[0], targets[0])
    return project_exact_2d(y, weights[0], weights[1], targets[0], targets[1], seed=seed)


def _nested_equalities(y: np.ndarray, weights: np.ndarray, targets: np.ndarray, seed: int) -> ProjectionResult:
    return nested_projection(y, weights, targets)


def project_by_sign_patterns(y: np.ndarray, spec: BalanceSpec, solve, method: str, seed: int = 0) -> ProjectionResult:
    """Enumerate multiplier sign guesses and keep the closest accepted candidate."""
    best = None
    best_distance = np.inf
    tried = 0
    sign_tol = 1e-9 * max(1.0, float(np.abs(y).max()) if y.size else 1.0)

    for pattern in sign_patterns(spec.d):
        active = [j for j, s in enumerate(pattern) if s != 0]
        signs = np.array([pattern[j] for j in active], dtype=np.float64)
        lam = np.zeros(spec.d)
        tried += 1

        if active:
            targets = spec.shifts[active] + signs * spec.radius[active]
            try:
                solved = solve(y, spec.weights[active], targets, seed)
            except InfeasibleProjectionError:
                continue
            if solved.lam is None or np.any(solved.lam * signs < -sign_tol):
                continue
            lam[active] = solved.lam
            x = solved.x
        else:
            x = clamp(y)

        dropped = [j for j, s in enumerate(pattern) if s == 0]
        if dropped:
            violation = spec.residuals(x)[dropped]
            if np.any(violation > EXACT_TOL * np.maximum(spec.totals[dropped], 1.0)):
                continue

        distance = float(np.linalg.norm(x - y))
        # Ties keep the earlier pattern, which has at least as many zeros
        if distance < best_distance - 1e-12 * max(1.0, distance):
            best = ProjectionResult(x=x, lam=lam, method=method, iterations=tried,
                                    residuals=spec.residuals(x))
            best_distance = distance

    if best is None:
        raise InfeasibleProjectionError(f"no multiplier sign pattern is feasible (d={spec.d})")
    best.iterations = tried
    return best


def project_K(
        y,
        spec: BalanceSpec,
        method: str = 'exact',
        tol: float = None,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
        seed: int = 0,
) -> ProjectionResult:
    """
    Project y onto box ∩ slabs.

    Args:
        y: point (length spec.n)
        spec: slabs
        method: one of exact, alternating_one_shot, alternating, dykstra, nested
        tol: tolerance of the iterative methods (default 1e-6)
        max_rounds: round cap of the iterative methods
        seed: sampler seed of the exact 2D projection

    Raises:
        ValueError: unknown method or shape mismatch
        InfeasibleProjectionError: K is empty
        ConvergenceError: an iterative method hit max_rounds
    """
    y = ProjectionProblem(y, spec).y
    if method not in METHODS:
        raise ValueError(f"unknown projection method '{method}' (expected one of {', '.join(METHODS)})")
    tol = ITERATIVE_TOL if tol is None else tol

    if method == 'alternating_one_shot':
        return alternating_projection(y, spec, ONE_SHOT, tol, max_rounds)
    if method == 'alternating':
        return alternating_projection(y, spec, TO_CONVERGENCE, tol, max_rounds)
    if method == 'dykstra':
        return dykstra_projection(y, spec, tol, max_rounds)

    if spec.n == 0:
        if np.any(spec.residuals(y) > EXACT_TOL * np.maximum(spec.totals, 1.0)):
            raise InfeasibleProjectionError("no free coordinates left to meet the slab centers")
        return ProjectionResult(x=y.copy(), lam=np.zeros(spec.d), method=method)

    if method == 'exact' and spec.d <= 2:
        return project_by_sign_patterns(y, spec, _exact_equalities, 'exact', seed)
    return project_by_sign_patterns(y, spec, _nested_equalities, 'nested', seed)
