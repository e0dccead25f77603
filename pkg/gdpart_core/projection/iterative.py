"""
Iterative projections built from the box and the individual slabs.

Alternating projection is cheap and lands close to K; Dykstra's correction
vectors make the same sweep converge to the true Euclidean projection.
"""

import logging
import math

import numpy as np

from gdpart_core.errors import ConvergenceError
from gdpart_core.projection.base import BalanceSpec, ProjectionResult, EXACT_TOL, ITERATIVE_TOL, clamp

logger = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 10000

ONE_SHOT = 'one_shot'
TO_CONVERGENCE = 'to_convergence'


def project_box(y) -> np.ndarray:
    return clamp(np.asarray(y, dtype=np.float64))


def project_hyperplane(y, w, c: float) -> np.ndarray:
    """Euclidean projection onto {<w, x> = c}."""
    y = np.asarray(y, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    norm_sq = float(w @ w)
    if norm_sq == 0.0:
        raise ValueError("cannot project onto a hyperplane with a zero normal")
    return y - ((float(w @ y) - c) / norm_sq) * w


def _project_slab(z: np.ndarray, w: np.ndarray, norm_sq: float, lower: float, upper: float) -> np.ndarray:
    value = float(w @ z)
    if value > upper:
        return z - ((value - upper) / norm_sq) * w
    if value < lower:
        return z - ((value - lower) / norm_sq) * w
    return z


def alternating_projection(
        y,
        spec: BalanceSpec,
        mode: str = TO_CONVERGENCE,
        tol: float = ITERATIVE_TOL,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> ProjectionResult:
    """
    Project onto each slab center plane <w^j, x> = b_j in turn, then onto the box.

    one_shot runs a single round and reports the slab residuals of its output.
    to_convergence repeats rounds until the displacement is at most tol * sqrt(n)
    and the point lies in K.

    Raises:
        ConvergenceError: max_rounds exhausted outside K (to_convergence only)
    """
    if mode not in (ONE_SHOT, TO_CONVERGENCE):
        raise ValueError(f"unknown alternating mode '{mode}'")
    x = np.asarray(y, dtype=np.float64).copy()
    if spec.n == 0:
        return ProjectionResult(x=x, lam=None, method=f"alternating_{mode}", residuals=np.zeros(spec.d))

    threshold = tol * math.sqrt(spec.n)
    rounds = 0
    while True:
        previous = x
        for j in range(spec.d):
            x = project_hyperplane(x, spec.weights[j], spec.shifts[j])
        x = clamp(x)
        rounds += 1
        residuals = spec.residuals(x)
        if mode == ONE_SHOT:
            return ProjectionResult(x=x, lam=None, method='alternating_one_shot',
                                    iterations=1, converged=spec.contains(x, tol), residuals=residuals)
        settled = np.linalg.norm(x - previous) <= threshold
        if settled and spec.contains(x, tol):
            return ProjectionResult(x=x, lam=None, method='alternating',
                                    iterations=rounds, residuals=residuals)
        if rounds >= max_rounds:
            result = ProjectionResult(x=x, lam=None, method='alternating',
                                      iterations=rounds, converged=False, residuals=residuals)
            raise ConvergenceError(
                f"alternating projection left K after {rounds} rounds "
                f"(max residual {residuals.max():.3g})", result,
            )


def dykstra_projection(
        y,
        spec: BalanceSpec,
        tol: float = ITERATIVE_TOL,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> ProjectionResult:
    """
    Dykstra's method over the d slabs and the box.

    The slab correction vectors are multiples of w^j; at convergence those
    multiples are the KKT multipliers and are returned in `lam`.

    `tol` bounds the per-round displacement only. A converged result always
    lies in K to within EXACT_TOL * W_j.

    Raises:
        ConvergenceError: max_rounds exhausted
    """
    y = np.asarray(y, dtype=np.float64)
    x = y.copy()
    d, n = spec.d, spec.n
    if n == 0:
        return ProjectionResult(x=x, lam=np.zeros(d), method='dykstra', residuals=np.zeros(d))

    norms = np.einsum('ij,ij->i', spec.weights, spec.weights)
    if np.any(norms == 0.0):
        raise ValueError("cannot project onto a slab with a zero weight row")
    lower, upper = spec.lower, spec.upper
    corrections = np.zeros((d + 1, n))
    threshold = tol * math.sqrt(n)

    for rounds in range(1, max_rounds + 1):
        previous = x
        for j in range(d):
            z = x + corrections[j]
            x = _project_slab(z, spec.weights[j], norms[j], lower[j], upper[j])
            corrections[j] = z - x
        z = x + corrections[d]
        x = clamp(z)
        corrections[d] = z - x

        if np.linalg.norm(x - previous) <= threshold and spec.contains(x, EXACT_TOL):
            lam = np.einsum('ij,ij->i', corrections[:d], spec.weights) / norms
            return ProjectionResult(x=x, lam=lam, method='dykstra', iterations=rounds,
                                    residuals=spec.residuals(x))

    lam = np.einsum('ij,ij->i', corrections[:d], spec.weights) / norms
    result = ProjectionResult(x=x, lam=lam, method='dykstra', iterations=max_rounds,
                              converged=False, residuals=spec.residuals(x))
    raise ConvergenceError(f"Dykstra projection did not converge in {max_rounds} rounds", result)
