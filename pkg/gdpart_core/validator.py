"""
Pre-solve validator - checks that an epsilon-balanced k-partition can exist.
Detects hard conflicts before any gradient iteration runs.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from gdpart_core.errors import InfeasiblePartitionError
from gdpart_core.weights import WeightSet

logger = logging.getLogger(__name__)

PART_COUNT = 'part_count'
HEAVY_VERTEX = 'heavy_vertex'
BALANCE_WINDOW = 'balance_window'


@dataclass(frozen=True)
class FeasibilityViolation:
    """
    A necessary condition the instance breaks.

    Attributes:
        check: part_count, heavy_vertex or balance_window
        dimension: label of the weight row (None for part_count)
        value: offending quantity (k, the vertex weight, or the smallest
            attainable part weight)
        bound: (low, high) range that `value` had to fall in
        vertex_index: heaviest vertex (heavy_vertex only)
    """
    check: str
    message: str
    value: float
    bound: Tuple[float, float]
    dimension: Optional[str] = None
    vertex_index: Optional[int] = None


@dataclass
class FeasibilityReport:
    """Outcome of the pre-solve checks for one (weights, k, epsilon) instance."""
    n: int
    k: int
    epsilon: float
    violations: List[FeasibilityViolation] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def blocked_dimensions(self) -> List[str]:
        """Labels of the weight rows with at least one violation."""
        seen = []
        for violation in self.violations:
            if violation.dimension is not None and violation.dimension not in seen:
                seen.append(violation.dimension)
        return seen

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'k': self.k,
            'epsilon': self.epsilon,
            'feasible': self.feasible,
            'violations': [
                {**asdict(v), 'bound': list(v.bound)} for v in self.violations
            ],
        }


def _integral_gcd(row: np.ndarray) -> Optional[int]:
    """gcd of a row of integer-valued weights, or None if any weight is fractional."""
    if not np.all(np.equal(np.floor(row), row)) or row.max() > 2 ** 53:
        return None
    return int(np.gcd.reduce(row.astype(np.int64)))


class PartitionFeasibilityValidator:
    """
    Necessary conditions for an epsilon-balanced k-partition.

    Checks for:
    1. k outside [1, n]
    2. A single vertex heavier than a full part in some dimension
    3. Integral weight rows whose attainable part weights miss the balance window
       (e.g. unit weights, epsilon = 0 and k not dividing n)
    """

    def __init__(self, ws: WeightSet, k: int, epsilon: float):
        self.ws = ws
        self.k = k
        self.epsilon = epsilon

    def validate(self) -> FeasibilityReport:
        report = FeasibilityReport(self.ws.n, self.k, self.epsilon)
        self._check_part_count(report)
        if report.feasible:
            self._check_heavy_vertices(report)
            self._check_integral_windows(report)
        if report.feasible:
            logger.info(f"Feasibility checks passed: n={self.ws.n}, d={self.ws.d}, k={self.k}, eps={self.epsilon}")
        else:
            logger.warning(
                f"Feasibility checks failed: {len(report.violations)} violations "
                f"in dimensions {report.blocked_dimensions() or '-'}"
            )
        return report

    def validate_or_raise(self) -> FeasibilityReport:
        report = self.validate()
        if not report.feasible:
            raise InfeasiblePartitionError(
                '; '.join(v.message for v in report.violations), path='root', report=report,
            )
        return report

    # ==================== CHECKS ====================

    def _check_part_count(self, report: FeasibilityReport):
        if 1 <= self.k <= self.ws.n:
            return
        message = (f"k must be >= 1, got {self.k}" if self.k < 1
                   else f"k={self.k} exceeds the vertex count {self.ws.n}")
        report.violations.append(FeasibilityViolation(PART_COUNT, message, float(self.k), (1.0, float(self.ws.n))))

    def _check_heavy_vertices(self, report: FeasibilityReport):
        if self.k == 1:
            return
        for j, label in enumerate(self.ws.labels):
            row = self.ws.values[j]
            capacity = (1 + self.epsilon) * self.ws.totals[j] / self.k
            heaviest = int(np.argmax(row))
            if row[heaviest] > capacity * (1 + 1e-12):
                report.violations.append(FeasibilityViolation(
                    HEAVY_VERTEX,
                    f"vertex index {heaviest} weighs {row[heaviest]:.6g} in dimension '{label}', "
                    f"more than a part may hold ({capacity:.6g})",
                    float(row[heaviest]), (0.0, float(capacity)),
                    dimension=label, vertex_index=heaviest,
                ))

    def _check_integral_windows(self, report: FeasibilityReport):
        if self.k == 1:
            return
        for j, label in enumerate(self.ws.labels):
            unit = _integral_gcd(self.ws.values[j])
            if unit is None:
                continue
            total = Fraction(int(self.ws.totals[j].round()))
            eps = Fraction(self.epsilon).limit_denominator(10 ** 9)
            low = (1 - eps) * total / self.k
            high = (1 + eps) * total / self.k
            smallest = math.ceil(low / unit) * unit
            if smallest > high:
                report.violations.append(FeasibilityViolation(
                    BALANCE_WINDOW,
                    f"dimension '{label}': no part weight in multiples of {unit} lies in "
                    f"[{float(low):.6g}, {float(high):.6g}]",
                    float(smallest), (float(low), float(high)),
                    dimension=label,
                ))
