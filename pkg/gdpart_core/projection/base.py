"""
Shared types for projecting a point onto K = box ∩ slabs.

Slab j reads |<w^j, x> - b_j| <= epsilon * W_j. The box is [-1, 1]^n.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# Feasibility tolerances, relative to W_j for slabs
EXACT_TOL = 1e-9
ITERATIVE_TOL = 1e-6

METHODS = ('exact', 'alternating_one_shot', 'alternating', 'dykstra', 'nested')


def clamp(z):
    """min(1, max(-1, z)) for scalars and arrays."""
    return np.clip(z, -1.0, 1.0)


@dataclass(frozen=True, eq=False)
class BalanceSpec:
    """
    Balance constraints over a set of coordinates.

    Attributes:
        weights: d x n weight rows (restricted to the coordinates being projected)
        totals: W_j scaling the tolerance (may exceed the row sums when some
            vertices are fixed and left out of `weights`)
        epsilon: relative imbalance tolerance
        shifts: slab centers b_j
    """
    weights: np.ndarray
    totals: np.ndarray
    epsilon: float = 0.0
    shifts: Optional[np.ndarray] = None

    def __post_init__(self):
        weights = np.atleast_2d(np.asarray(self.weights, dtype=np.float64))
        object.__setattr__(self, 'weights', weights)
        totals = np.asarray(self.totals, dtype=np.float64).reshape(-1)
        object.__setattr__(self, 'totals', totals)
        shifts = (np.zeros(weights.shape[0]) if self.shifts is None
                  else np.asarray(self.shifts, dtype=np.float64).reshape(-1))
        object.__setattr__(self, 'shifts', shifts)

        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if totals.shape[0] != weights.shape[0] or shifts.shape[0] != weights.shape[0]:
            raise ValueError("weights, totals and shifts disagree on the dimension count")
        if np.any(np.abs(shifts) > totals * (1 + self.epsilon) * (1 + 1e-12) + 1e-12):
            raise ValueError("slab center outside [-W_j, W_j]")

    @classmethod
    def from_weight_set(cls, ws, epsilon: float, shifts=None) -> 'BalanceSpec':
        return cls(ws.values, ws.totals, epsilon, shifts)

    @classmethod
    def equalities(cls, weights, targets) -> 'BalanceSpec':
        """Zero-width slabs <w^j, x> = c_j."""
        weights = np.atleast_2d(np.asarray(weights, dtype=np.float64))
        targets = np.asarray(targets, dtype=np.float64).reshape(-1)
        totals = np.maximum(weights.sum(axis=1), np.abs(targets))
        return cls(weights, totals, 0.0, targets)

    @property
    def d(self) -> int:
        return int(self.weights.shape[0])

    @property
    def n(self) -> int:
        return int(self.weights.shape[1])

    @property
    def radius(self) -> np.ndarray:
        return self.epsilon * self.totals

    @property
    def lower(self) -> np.ndarray:
        return self.shifts - self.radius

    @property
    def upper(self) -> np.ndarray:
        return self.shifts + self.radius

    def slab_values(self, x: np.ndarray) -> np.ndarray:
        return self.weights @ x

    def residuals(self, x: np.ndarray) -> np.ndarray:
        """Per-dimension slab violation max(0, |<w^j, x> - b_j| - eps W_j)."""
        return np.maximum(np.abs(self.slab_values(x) - self.shifts) - self.radius, 0.0)

    def contains(self, x: np.ndarray, tol: float = EXACT_TOL) -> bool:
        if x.size and np.max(np.abs(x)) > 1.0 + 1e-12:
            return False
        return bool(np.all(self.residuals(x) <= tol * np.maximum(self.totals, 1.0)))

    def restrict(self, free: np.ndarray, shifts: np.ndarray) -> 'BalanceSpec':
        """Spec on the `free` coordinates with new centers; totals are kept."""
        return BalanceSpec(self.weights[:, free], self.totals, self.epsilon, shifts)


@dataclass(frozen=True, eq=False)
class ProjectionProblem:
    """A point y together with the constraints it is projected onto."""
    y: np.ndarray
    spec: BalanceSpec

    def __post_init__(self):
        y = np.asarray(self.y, dtype=np.float64)
        object.__setattr__(self, 'y', y)
        if y.ndim != 1 or y.shape[0] != self.spec.n:
            raise ValueError(f"point has shape {y.shape}, constraints cover {self.spec.n} coordinates")


@dataclass
class ProjectionResult:
    """
    Output of a projection.

    `lam` holds the signed multipliers when the method tracks them (exact,
    nested, dykstra); alternating projection leaves it as None.
    """
    x: np.ndarray
    lam: Optional[np.ndarray]
    method: str
    iterations: int = 0
    converged: bool = True
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def distance(self, y: np.ndarray) -> float:
        return float(np.linalg.norm(self.x - y))
