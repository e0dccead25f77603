"""
Partition of a vertex set into k parts.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np


@dataclass(frozen=True)
class Provenance:
    """How a partition was produced."""
    algorithm: str
    seed: Optional[int] = None
    config_digest: Optional[str] = None

    def to_dict(self) -> Dict:
        """Fields of a partition file header."""
        return {'algorithm': self.algorithm, 'seed': self.seed, 'config': self.config_digest}


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of each internal vertex index to a part in [0, k)."""
    k: int
    assignment: np.ndarray
    provenance: Provenance = field(default_factory=lambda: Provenance('unknown'))

    def __post_init__(self):
        assignment = np.asarray(self.assignment, dtype=np.int64)
        object.__setattr__(self, 'assignment', assignment)
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if assignment.ndim != 1:
            raise ValueError("assignment must be one-dimensional")
        if assignment.size and (assignment.min() < 0 or assignment.max() >= self.k):
            bad = int(np.flatnonzero((assignment < 0) | (assignment >= self.k))[0])
            raise ValueError(f"vertex index {bad} has part {assignment[bad]} outside [0, {self.k})")

    @property
    def n(self) -> int:
        return int(self.assignment.shape[0])

    def part_sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def members(self, part: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == part)

    def __repr__(self) -> str:
        return f"Partition(k={self.k}, sizes={self.part_sizes().tolist()}, algorithm={self.provenance.algorithm})"
