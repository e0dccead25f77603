"""
Building blocks of one gradient ascent iteration: objective, noise and the
step length search.
"""

import logging
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from gdpart_core.graph import Graph
from gdpart_core.projection import BalanceSpec, ProjectionResult, project_K

logger = logging.getLogger(__name__)

Projector = Callable[[np.ndarray], ProjectionResult]


def fractional_objective(g: Graph, x) -> float:
    """1/2 * sum over edges (u, v) of (x_u x_v + 1)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != g.n:
        raise ValueError(f"vector has length {x.shape[0]}, graph has n={g.n}")
    if g.m == 0:
        return 0.0
    edges = g.edge_array
    return float(0.5 * np.sum(x[edges[:, 0]] * x[edges[:, 1]] + 1.0))


def gd_noise(x, eta: float, rng: np.random.Generator, fixed: Optional[np.ndarray] = None) -> np.ndarray:
    """
    z = x + N(0, eta^2) per free coordinate.

    Draws are taken for every coordinate so the stream does not depend on the
    fixed mask; fixed coordinates discard theirs.
    """
    if eta < 0:
        raise ValueError(f"noise scale must be >= 0, got {eta}")
    x = np.asarray(x, dtype=np.float64)
    if eta == 0:
        return x.copy()
    noise = rng.normal(0.0, eta, size=x.shape[0])
    if fixed is not None:
        noise[fixed] = 0.0
    return x + noise


class StepResult(NamedTuple):
    x: np.ndarray
    gamma: float
    saturated: bool
    projection: Optional[ProjectionResult]


def adaptive_step(
        z,
        gradient,
        target_length: float,
        spec: Optional[BalanceSpec] = None,
        method: str = 'alternating_one_shot',
        project: Optional[Projector] = None,
        band: Tuple[float, float] = (0.5, 1.5),
        max_bisection_steps: int = 20,
        max_doublings: int = 60,
) -> StepResult:
    """
    Choose gamma so that ||P(z + gamma * gradient) - z|| falls in band * target_length.

    The first guess is target_length / ||gradient||. Too short a move doubles
    gamma until the band is reached or the displacement stops growing (the
    projection saturates); too long a move bisects between the last short and
    long gammas.

    Returns:
        StepResult(x, gamma, saturated, projection); a zero gradient gives
        (z, 0.0, False, None)
    """
    if target_length <= 0:
        raise ValueError(f"target_length must be > 0, got {target_length}")
    z = np.asarray(z, dtype=np.float64)
    gradient = np.asarray(gradient, dtype=np.float64)
    if project is None:
        if spec is None:
            raise ValueError("adaptive_step needs a spec or a projector")
        project = lambda point: project_K(point, spec, method)

    norm = float(np.linalg.norm(gradient))
    if norm == 0.0:
        return StepResult(z.copy(), 0.0, False, None)

    low, high = band[0] * target_length, band[1] * target_length

    def attempt(gamma: float):
        result = project(z + gamma * gradient)
        return result, float(np.linalg.norm(result.x - z))

    gamma = target_length / norm
    result, moved = attempt(gamma)
    if low <= moved <= high:
        return StepResult(result.x, gamma, False, result)

    short_gamma = 0.0
    if moved < low:
        for _ in range(max_doublings):
            short_gamma = gamma
            longer, longer_moved = attempt(2.0 * gamma)
            if longer_moved <= moved * (1.0 + 1e-9):
                logger.debug(f"step saturated at displacement {moved:.4g} (target {target_length:.4g})")
                return StepResult(result.x, gamma, True, result)
            gamma, result, moved = 2.0 * gamma, longer, longer_moved
            if moved >= low:
                break
        if moved < low:
            return StepResult(result.x, gamma, True, result)
        if moved <= high:
            return StepResult(result.x, gamma, False, result)

    lo, hi = short_gamma, gamma
    for _ in range(max_bisection_steps):
        mid = 0.5 * (lo + hi)
        result, moved = attempt(mid)
        gamma = mid
        if low <= moved <= high:
            break
        if moved < low:
            lo = mid
        else:
            hi = mid
    return StepResult(result.x, gamma, False, result)
