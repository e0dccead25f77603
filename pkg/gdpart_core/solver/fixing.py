"""
Vertex fixing: freeze near-integral coordinates and shift the slab centers.

Once fixed, a vertex keeps its sign for the rest of the run. The free
coordinates then see slab j as |<w^j_free, x_free> - c_j| <= eps W_j with
c_j = b_j - sum over fixed i of w^j_i x_i.
"""

import logging
from typing import Tuple

import numpy as np

from gdpart_core.errors import InfeasibleFixingError
from gdpart_core.projection import BalanceSpec
from gdpart_core.solver.state import FractionalSolution

logger = logging.getLogger(__name__)


def free_shifts(solution: FractionalSolution, spec: BalanceSpec) -> np.ndarray:
    """Slab centers seen by the free coordinates."""
    fixed = solution.fixed
    return spec.shifts - spec.weights[:, fixed] @ solution.x[fixed]


def fix_vertices(
        solution: FractionalSolution,
        spec: BalanceSpec,
        tau: float,
) -> Tuple[FractionalSolution, np.ndarray]:
    """
    Fix every free vertex with |x_i| >= tau at sign(x_i).

    Args:
        solution: current state (not modified)
        spec: slabs over all coordinates, carrying the base centers b_j
        tau: threshold in (0, 1]

    Returns:
        (updated solution, slab centers for the free coordinates)

    Raises:
        InfeasibleFixingError: the free weight cannot bring some slab back in range
    """
    if not 0.0 < tau <= 1.0:
        raise ValueError(f"fix threshold must lie in (0, 1], got {tau}")

    updated = solution.copy()
    newly = updated.free & (np.abs(updated.x) >= tau)
    if newly.any():
        updated.x[newly] = np.sign(updated.x[newly])
        updated.fixed = updated.fixed | newly
        logger.debug(f"fixed {int(newly.sum())} vertices ({updated.fixed_count} total)")

    shifts = free_shifts(updated, spec)
    free_mass = spec.weights[:, updated.free].sum(axis=1)
    slack = spec.radius + free_mass
    for j in range(spec.d):
        if abs(shifts[j]) > slack[j] * (1 + 1e-12) + 1e-12:
            raise InfeasibleFixingError(
                f"dimension {j}: fixed vertices leave {shifts[j]:.6g} to compensate "
                f"but the free vertices carry only {free_mass[j]:.6g} (+{spec.radius[j]:.6g} slack)",
                dimension=j,
            )
    return updated, shifts
