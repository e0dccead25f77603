"""
Exact projection onto box ∩ {<w1, x> = c1} ∩ {<w2, x> = c2}.

Works in the (lam1, lam2) multiplier plane. Coordinate i changes clamp regime on
the boundary lines y_i - lam1 w1_i - lam2 w2_i = +-1; between these lines both
constraint functions are linear.

Design Decisions:
1. Phase one is a randomized binary search on lam1 over the lam1-coordinates of
   line intersections. Delta(lam1) solves the inner problem for lam2 exactly and
   compares <w1, x> with c1. The search ends with a strip (l, r) that contains
   no intersection.
2. Intersections are sampled in three regimes: random line pairs while the
   strip is crowded, then a precomputed set S of the crossings inside the strip,
   then an explicit shrinking list. Each regime draws 4n samples before it
   demotes to the next.
3. Phase two sweeps the regions of the strip from bottom to top. The 2x2 system
   coefficients change by a rank-one term at each crossed line, so all regions
   are screened with cumulative sums and only the survivors are solved exactly.
4. Both monotonicity assumptions are run; the feasible answer closest to y wins.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from gdpart_core.errors import InfeasibleProjectionError, ConvergenceError
from gdpart_core.projection.base import BalanceSpec, ProjectionResult, clamp
from gdpart_core.projection.exact_1d import solve_multiplier_1d
from gdpart_core.utils import make_rng, STREAM_SAMPLING

logger = logging.getLogger(__name__)

COLLINEARITY_LIMIT = 1.0 - 1e-12
SAMPLES_PER_VERTEX = 4


class _TooManyCrossings(Exception):
    pass


def _inversion_pairs(p: np.ndarray, cap: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    All position pairs (a, b), a < b, with p[a] > p[b] for a permutation p.

    Bottom-up merge: at each level, every element of a right half is paired
    with the larger elements of the left half of its block.
    """
    size = p.shape[0]
    vals = p.astype(np.int64).copy()
    origin = np.arange(size, dtype=np.int64)
    positions = np.arange(size, dtype=np.int64)
    firsts, seconds = [], []
    found = 0
    width = 1
    while width < size:
        block = positions // (2 * width)
        in_right = (positions // width) % 2 == 1
        left_pos = np.flatnonzero(~in_right)
        right_pos = np.flatnonzero(in_right)
        if right_pos.size:
            left_keys = block[left_pos] * size + vals[left_pos]
            right_block = block[right_pos] * size
            start = np.searchsorted(left_keys, right_block + vals[right_pos], side='right')
            end = np.searchsorted(left_keys, right_block + size, side='left')
            counts = end - start
            level_total = int(counts.sum())
            found += level_total
            if found > cap:
                raise _TooManyCrossings()
            if level_total:
                first_slot = np.cumsum(counts) - counts
                flat = np.repeat(start - first_slot, counts) + np.arange(level_total)
                firsts.append(origin[left_pos[flat]])
                seconds.append(origin[np.repeat(right_pos, counts)])
        order = np.argsort(block * size + vals, kind='stable')
        vals = vals[order]
        origin = origin[order]
        width *= 2

    if not firsts:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(firsts), np.concatenate(seconds)


class _IntersectionSampler:
    """Draws lam1-coordinates of line intersections strictly inside a strip."""

    def __init__(self, slopes: np.ndarray, intercepts: np.ndarray, rng: np.random.Generator):
        self.slopes = slopes
        self.intercepts = intercepts
        self.rng = rng
        self.lines = slopes.shape[0]
        self.batch = SAMPLES_PER_VERTEX * max(self.lines // 2, 1)
        self.mode = 'pairs'
        self.candidates: Optional[np.ndarray] = None

    def _crossing_point(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (self.intercepts[b] - self.intercepts[a]) / (self.slopes[a] - self.slopes[b])

    def _pair_hits(self, l: float, r: float) -> np.ndarray:
        a = self.rng.integers(0, self.lines, self.batch)
        b = self.rng.integers(0, self.lines, self.batch)
        keep = self.slopes[a] != self.slopes[b]
        a, b = a[keep], b[keep]
        points = self._crossing_point(a, b)
        return points[(points > l) & (points < r)]

    def _border_keys(self, border: float):
        if border == -math.inf:
            return [-self.slopes, self.intercepts]
        if border == math.inf:
            return [self.slopes, self.intercepts]
        return [self.slopes * border + self.intercepts]

    def crossings(self, l: float, r: float, cap: int) -> np.ndarray:
        """lam1-coordinates of every intersection strictly inside (l, r)."""
        left_keys = self._border_keys(l)
        right_keys = self._border_keys(r)
        order_left = np.lexsort(tuple(reversed(left_keys + right_keys)))
        order_right = np.lexsort(tuple(reversed(right_keys + left_keys)))
        rank_right = np.empty(self.lines, dtype=np.int64)
        rank_right[order_right] = np.arange(self.lines)

        first, second = _inversion_pairs(rank_right[order_left], cap)
        if first.size == 0:
            return np.zeros(0)
        points = self._crossing_point(order_left[first], order_left[second])
        return np.sort(points[(points > l) & (points < r)])

    def sample(self, l: float, r: float) -> Optional[float]:
        if self.mode == 'pairs':
            cap = int(SAMPLES_PER_VERTEX * self.lines * math.log2(self.lines + 1)) + 64
            while True:
                hits = self._pair_hits(l, r)
                if hits.size:
                    return float(self.rng.choice(hits))
                try:
                    self.candidates = self.crossings(l, r, cap)
                    break
                except _TooManyCrossings:
                    self.batch *= 4
            self.mode = 'set'

        if self.mode == 'set':
            if self.candidates.size >= self.lines // 2:
                drawn = self.candidates[self.rng.integers(0, self.candidates.size, self.batch)]
                hits = drawn[(drawn > l) & (drawn < r)]
                if hits.size:
                    return float(self.rng.choice(hits))
            self.mode = 'explicit'

        self.candidates = self.candidates[(self.candidates > l) & (self.candidates < r)]
        if self.candidates.size == 0:
            return None
        return float(self.rng.choice(self.candidates))


def _representative(l: float, r: float) -> float:
    if math.isinf(l) and math.isinf(r):
        return 0.0
    if math.isinf(l):
        return r - max(1.0, abs(r))
    if math.isinf(r):
        return l + max(1.0, abs(l))
    return 0.5 * (l + r)


class _Exact2DSolver:
    """One projection instance; holds the boundary lines and the inner solver."""

    def __init__(self, y, w1, w2, c1, c2, seed):
        self.y, self.w1, self.w2 = y, w1, w2
        self.c = np.array([c1, c2])
        self.n = y.shape[0]
        self.seed = seed
        self.tol = 1e-10 * np.array([max(np.abs(w1).sum(), 1.0), w2.sum()])

        # Line index l < n: coordinate l leaves +1; l >= n: coordinate l-n reaches -1
        signs = np.concatenate([np.ones(self.n), -np.ones(self.n)])
        tiled_y = np.concatenate([y, y])
        tiled_w1 = np.concatenate([w1, w1])
        tiled_w2 = np.concatenate([w2, w2])
        self.slopes = -tiled_w1 / tiled_w2
        self.intercepts = (tiled_y - signs) / tiled_w2
        self.evaluations = 0

    def delta(self, lam1: float) -> Tuple[float, float]:
        """<w1, x> with lam2 chosen so that <w2, x> = c2."""
        self.evaluations += 1
        shifted = self.y - lam1 * self.w1
        lam2, _ = solve_multiplier_1d(shifted, self.w2, self.c[1])
        return float(self.w1 @ clamp(shifted - lam2 * self.w2)), lam2

    def residual_ok(self, lam1: float, lam2: float) -> bool:
        x = clamp(self.y - lam1 * self.w1 - lam2 * self.w2)
        values = np.array([self.w1 @ x, self.w2 @ x])
        return bool(np.all(np.abs(values - self.c) <= self.tol * 10))

    # ==================== PHASE 1 ====================

    def narrow_strip(self, increasing: bool):
        """Binary search on lam1; returns ('hit', lam1, lam2) or ('strip', l, r)."""
        rng = make_rng(self.seed, STREAM_SAMPLING, int(increasing))
        sampler = _IntersectionSampler(self.slopes, self.intercepts, rng)
        l, r = -math.inf, math.inf
        while True:
            lam1 = sampler.sample(l, r)
            if lam1 is None:
                return 'strip', l, r
            value, lam2 = self.delta(lam1)
            if abs(value - self.c[0]) <= self.tol[0]:
                return 'hit', lam1, lam2
            too_high = value > self.c[0]
            if too_high == increasing:
                r = lam1
            else:
                l = lam1

    # ==================== PHASE 2 ====================

    def sweep(self, l: float, r: float) -> Optional[Tuple[float, float]]:
        """First region (bottom to top) whose linear system has a solution inside it."""
        n = self.n
        probe = _representative(l, r)
        heights = self.slopes * probe + self.intercepts
        order = np.argsort(heights, kind='stable')

        coord = order % n
        entering = order < n
        wa, wb, yv = self.w1[coord], self.w2[coord], self.y[coord]

        # Crossing a +1 line frees the coordinate, crossing a -1 line saturates it at -1
        sign = np.where(entering, 1.0, -1.0)
        da1 = np.where(entering, wa * (yv - 1.0), -wa * (yv + 1.0))
        da2 = np.where(entering, wb * (yv - 1.0), -wb * (yv + 1.0))
        a1 = self.w1.sum() + np.concatenate([[0.0], np.cumsum(da1)])
        a2 = self.w2.sum() + np.concatenate([[0.0], np.cumsum(da2)])
        m11 = np.concatenate([[0.0], np.cumsum(sign * wa * wa)])
        m12 = np.concatenate([[0.0], np.cumsum(sign * wa * wb)])
        m22 = np.concatenate([[0.0], np.cumsum(sign * wb * wb)])

        r1, r2 = a1 - self.c[0], a2 - self.c[1]
        det = m11 * m22 - m12 * m12
        solvable = np.abs(det) > 1e-12 * np.maximum(np.abs(m11 * m22), 1e-300)
        safe = np.where(solvable, det, 1.0)
        lam1 = (r1 * m22 - m12 * r2) / safe
        lam2 = (m11 * r2 - m12 * r1) / safe

        slack = 1e-6 * (1.0 + np.abs(lam1) + np.abs(lam2))
        inside = solvable & (lam1 >= l - slack) & (lam1 <= r + slack)
        lines_s, lines_b = self.slopes[order], self.intercepts[order]
        below = np.concatenate([[-np.inf], lines_s * lam1[1:] + lines_b])
        above = np.concatenate([lines_s * lam1[:-1] + lines_b, [np.inf]])
        inside &= (lam2 >= below - slack) & (lam2 <= above + slack)

        for region in np.flatnonzero(inside):
            refined = self._solve_region(order, int(region))
            if refined is not None and self.residual_ok(*refined):
                return refined
        return None

    def _solve_region(self, order: np.ndarray, crossed: int) -> Optional[Tuple[float, float]]:
        """Recompute the region's system from its clamp states and solve it."""
        n = self.n
        state = np.zeros(n, dtype=np.int8)  # 0 at +1, 1 free, 2 at -1
        np.add.at(state, order[:crossed] % n, 1)
        upper, free, lower = state == 0, state == 1, state == 2
        basis = np.vstack([self.w1, self.w2])
        offsets = basis[:, upper].sum(axis=1) - basis[:, lower].sum(axis=1) + basis[:, free] @ self.y[free]
        gram = basis[:, free] @ basis[:, free].T
        try:
            lam = np.linalg.solve(gram, offsets - self.c)
        except np.linalg.LinAlgError:
            return None
        return float(lam[0]), float(lam[1])

    def run(self, increasing: bool) -> Optional[Tuple[float, float]]:
        outcome = self.narrow_strip(increasing)
        if outcome[0] == 'hit':
            return outcome[1], outcome[2]
        return self.sweep(outcome[1], outcome[2])


def _box_system_feasible(weights: np.ndarray, targets: np.ndarray) -> bool:
    """LP check that box ∩ {W x = c} is nonempty."""
    n = weights.shape[1]
    outcome = linprog(np.zeros(n), A_eq=weights, b_eq=targets, bounds=(-1.0, 1.0), method='highs')
    return outcome.status != 2


def _fallback(y, w1, w2, c1, c2, reason: str) -> ProjectionResult:
    from gdpart_core.projection.iterative import dykstra_projection

    weights, targets = np.vstack([w1, w2]), np.array([c1, c2])
    if not _box_system_feasible(weights, targets):
        raise InfeasibleProjectionError(f"no point of the box meets both targets ({reason})")
    logger.warning(f"exact 2D projection falls back to Dykstra: {reason}")
    try:
        result = dykstra_projection(y, BalanceSpec.equalities(weights, targets), tol=1e-12, max_rounds=100000)
    except ConvergenceError as e:
        raise InfeasibleProjectionError(f"Dykstra fallback did not converge ({reason})") from e
    result.method = 'exact_2d/dykstra'
    return result


def project_exact_2d(y, w1, w2, c1: float, c2: float, seed: int = 0) -> ProjectionResult:
    """
    Project y onto box ∩ {<w1, x> = c1} ∩ {<w2, x> = c2}.

    Args:
        y: point to project
        w1: first weight row (any sign)
        w2: second weight row, strictly positive
        c1, c2: equality targets
        seed: seed of the intersection sampler

    Raises:
        InfeasibleProjectionError: the constraint set is empty
    """
    y = np.asarray(y, dtype=np.float64)
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    if not (y.shape == w1.shape == w2.shape):
        raise ValueError("point and weight rows must have equal length")
    if np.any(w2 <= 0):
        raise ValueError("second weight row must be strictly positive")

    norm1, norm2 = np.linalg.norm(w1), np.linalg.norm(w2)
    if norm1 == 0.0 or abs(w1 @ w2) / (norm1 * norm2) > COLLINEARITY_LIMIT:
        return _fallback(y, w1, w2, c1, c2, 'weight rows are collinear')

    solver = _Exact2DSolver(y, w1, w2, float(c1), float(c2), seed)
    candidates = []
    for increasing in (True, False):
        found = solver.run(increasing)
        if found is not None:
            candidates.append(found)

    if not candidates:
        return _fallback(y, w1, w2, c1, c2, 'no region holds a solution')

    def distance(lam):
        return float(np.linalg.norm(clamp(y - lam[0] * w1 - lam[1] * w2) - y))

    lam1, lam2 = min(candidates, key=distance)
    x = clamp(y - lam1 * w1 - lam2 * w2)
    return ProjectionResult(
        x=x, lam=np.array([lam1, lam2]), method='exact_2d', iterations=solver.evaluations,
    )
