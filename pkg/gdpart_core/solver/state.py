"""
Solver state: the fractional point and the per-iteration trace.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd

TRACE_COLUMNS = ['iter', 'objective', 'step_len', 'max_imbalance', 'fixed_count', 'gamma', 'saturated']


@dataclass
class FractionalSolution:
    """
    Point x in [-1, 1]^n of the relaxation plus the fixed-vertex mask.

    Fixed vertices hold x_i = +1 or -1 exactly; their sign is x_i itself.
    """
    x: np.ndarray
    fixed: np.ndarray
    objective: float = 0.0

    @classmethod
    def zeros(cls, n: int) -> 'FractionalSolution':
        return cls(x=np.zeros(n), fixed=np.zeros(n, dtype=bool), objective=0.0)

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def free(self) -> np.ndarray:
        return ~self.fixed

    @property
    def fixed_count(self) -> int:
        return int(self.fixed.sum())

    @property
    def fixed_signs(self) -> np.ndarray:
        """+1/-1 on fixed vertices, 0 elsewhere."""
        return np.where(self.fixed, np.sign(self.x), 0.0)

    def copy(self) -> 'FractionalSolution':
        return FractionalSolution(self.x.copy(), self.fixed.copy(), self.objective)


@dataclass
class IterationRecord:
    iteration: int
    objective: float
    step_len: float
    imbalance: List[float]
    fixed_count: int
    gamma: float = 0.0
    saturated: bool = False

    @property
    def max_imbalance(self) -> float:
        return max(self.imbalance) if self.imbalance else 0.0


@dataclass
class IterationTrace:
    """Per-iteration records of one solver run."""
    records: List[IterationRecord] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)
    method_fallbacks: int = 0
    restarts: int = 0

    def append(self, record: IterationRecord):
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def final(self) -> Optional[IterationRecord]:
        return self.records[-1] if self.records else None

    def objectives(self) -> np.ndarray:
        return np.array([r.objective for r in self.records])

    def to_dataframe(self) -> pd.DataFrame:
        rows = [
            {
                'iter': r.iteration,
                'objective': r.objective,
                'step_len': r.step_len,
                'max_imbalance': r.max_imbalance,
                'fixed_count': r.fixed_count,
                'gamma': r.gamma,
                'saturated': int(r.saturated),
            }
            for r in self.records
        ]
        return pd.DataFrame(rows, columns=TRACE_COLUMNS)
