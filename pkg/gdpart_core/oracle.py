"""
Brute-force references for small instances.

Both routines enumerate the whole search space and share no code with the
solvers they check beyond the data types.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from gdpart_core.errors import InfeasibleProjectionError, InfeasiblePartitionError
from gdpart_core.graph import Graph
from gdpart_core.partition import Partition, Provenance

logger = logging.getLogger(__name__)

MAX_PROJECTION_N = 10
MAX_PROJECTION_D = 3
MAX_PARTITION_N = 20
_CHUNK = 1 << 16


@dataclass
class KKTDuals:
    """Box duals mu_i and slab multipliers lam_j of an accepted KKT point."""
    mu: np.ndarray
    lam: np.ndarray


def brute_force_projection(
        y,
        weights,
        epsilon: float,
        shifts=None,
        totals=None,
        tol: float = 1e-9,
) -> Tuple[np.ndarray, KKTDuals]:
    """
    Projection onto box ∩ slabs by enumerating every KKT activity pattern.

    Each coordinate is at -1, free or at +1; each slab is inactive, tight at its
    upper side or tight at its lower side. With the pattern fixed the free
    coordinates are x = y - W_A^T lam, which leaves a small linear system in the
    active multipliers. All 3^n box patterns are solved at once per slab pattern.

    Raises:
        InfeasibleProjectionError: no pattern passes the KKT checks
    """
    y = np.asarray(y, dtype=np.float64)
    weights = np.atleast_2d(np.asarray(weights, dtype=np.float64))
    d, n = weights.shape
    if n > MAX_PROJECTION_N or d > MAX_PROJECTION_D:
        raise ValueError(f"oracle is limited to n <= {MAX_PROJECTION_N}, d <= {MAX_PROJECTION_D}")
    totals = weights.sum(axis=1) if totals is None else np.asarray(totals, dtype=np.float64)
    shifts = np.zeros(d) if shifts is None else np.asarray(shifts, dtype=np.float64)
    radius = epsilon * totals
    scale = max(1.0, float(np.abs(y).max()) if n else 1.0)

    boxes = np.array(list(itertools.product((-1, 0, 1), repeat=n)), dtype=np.float64).reshape(-1, n)
    free = boxes == 0
    fixed_values = boxes

    best_x, best_duals, best_distance = None, None, np.inf
    for pattern in itertools.product((0, 1, -1), repeat=d):
        active = [j for j in range(d) if pattern[j] != 0]
        signs = np.array([pattern[j] for j in active], dtype=np.float64)
        w_active = weights[active]
        a = len(active)

        if a:
            targets = shifts[active] + signs * radius[active]
            gram = np.einsum('ai,pi,bi->pab', w_active, free.astype(np.float64), w_active)
            rhs = (free * y) @ w_active.T + fixed_values @ w_active.T - targets
            determinant = np.linalg.det(gram)
            solvable = np.abs(determinant) > 1e-12 * max(1.0, float(np.abs(w_active).max())) ** (2 * a)
            safe_gram = np.where(solvable[:, None, None], gram, np.eye(a)[None, :, :])
            lam = np.linalg.solve(safe_gram, rhs[:, :, None])[:, :, 0]
        else:
            solvable = np.ones(boxes.shape[0], dtype=bool)
            lam = np.zeros((boxes.shape[0], 0))

        pull = lam @ w_active if a else np.zeros_like(boxes)
        x = np.where(free, y - pull, fixed_values)
        mu = np.where(boxes > 0, y - 1.0 - pull, np.where(boxes < 0, -(y + 1.0 - pull), 0.0))

        ok = solvable.copy()
        ok &= np.all(np.abs(x) <= 1.0 + tol * scale, axis=1)
        ok &= np.all(mu >= -tol * scale, axis=1)
        if a:
            ok &= np.all(lam * signs >= -tol * scale, axis=1)
            slab_fit = np.abs(x @ w_active.T - targets) <= tol * np.maximum(totals[active], 1.0) * scale
            ok &= np.all(slab_fit, axis=1)
        dropped = [j for j in range(d) if pattern[j] == 0]
        if dropped:
            offset = np.abs(x @ weights[dropped].T - shifts[dropped])
            ok &= np.all(offset <= radius[dropped] + tol * np.maximum(totals[dropped], 1.0), axis=1)

        for row in np.flatnonzero(ok):
            distance = float(np.linalg.norm(x[row] - y))
            if distance < best_distance - 1e-12:
                full_lam = np.zeros(d)
                full_lam[active] = lam[row]
                best_x = np.clip(x[row], -1.0, 1.0)
                best_duals = KKTDuals(mu=np.maximum(mu[row], 0.0), lam=full_lam)
                best_distance = distance

    if best_x is None:
        raise InfeasibleProjectionError("no KKT pattern is feasible")
    return best_x, best_duals


def brute_force_partition(g: Graph, ws, epsilon: float, k: int = 2) -> Tuple[Partition, int]:
    """
    Best epsilon-balanced bisection by exhaustive scan.

    Assignments are scanned in lexicographic order (vertex 0 most significant),
    so ties resolve to the lexicographically smallest assignment.

    Raises:
        InfeasiblePartitionError: no assignment is epsilon-balanced
    """
    if k != 2:
        raise ValueError("the exhaustive oracle handles bisection only")
    n = g.n
    if n > MAX_PARTITION_N:
        raise ValueError(f"oracle is limited to n <= {MAX_PARTITION_N}")
    values = ws.values
    totals = values.sum(axis=1)
    limit = epsilon * totals + 1e-9 * totals
    edges = g.edge_array
    shifts_by_vertex = np.arange(n - 1, -1, -1, dtype=np.int64)

    best_code: Optional[int] = None
    best_uncut = -1
    for start in range(0, 1 << n, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        bits = (codes[:, None] >> shifts_by_vertex[None, :]) & 1
        signs = 1.0 - 2.0 * bits
        balanced = np.all(np.abs(signs @ values.T) <= limit, axis=1)
        if not balanced.any():
            continue
        uncut = (bits[:, edges[:, 0]] == bits[:, edges[:, 1]]).sum(axis=1) if edges.size else np.zeros(codes.size, dtype=np.int64)
        uncut = np.where(balanced, uncut, -1)
        row = int(np.argmax(uncut))
        if uncut[row] > best_uncut:
            best_uncut = int(uncut[row])
            best_code = int(codes[row])

    if best_code is None:
        raise InfeasiblePartitionError(f"no {epsilon}-balanced bisection of {n} vertices exists", path='oracle')
    assignment = (best_code >> shifts_by_vertex) & 1
    return Partition(2, assignment, Provenance('brute_force')), best_uncut
