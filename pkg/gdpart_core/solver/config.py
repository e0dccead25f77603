"""
GD Solver Configuration
Defines iteration counts, step control, projection choice and fixing rules.
"""

from dataclasses import dataclass, asdict, replace
from typing import Optional
import math

from gdpart_core.projection.base import METHODS
from gdpart_core.utils import config_digest


@dataclass
class GdConfig:
    """Projected gradient ascent hyperparameters."""

    # ==================== ITERATIONS ====================
    iterations: int = 100
    epsilon: float = 0.05  # Relative imbalance tolerance per dimension

    # ==================== NOISE ====================
    noise_std: Optional[float] = None  # None -> 1/sqrt(n)
    noise_iterations: int = 1          # Leading iterations that receive noise
    restart_on_stationary: bool = True  # Re-noise after two zero steps in a row

    # ==================== STEP CONTROL ====================
    step_mode: str = 'target_length'  # 'target_length' or 'fixed'
    step_size: Optional[float] = None  # Fixed gamma (step_mode='fixed')
    target_length: Optional[float] = None  # None -> 2*sqrt(n)/iterations
    step_band_low: float = 0.5   # Accepted displacement band, as a fraction of target
    step_band_high: float = 1.5
    max_bisection_steps: int = 20
    max_doublings: int = 60

    # ==================== PROJECTION ====================
    projection: str = 'alternating_one_shot'
    finishing_projection: str = 'alternating'  # Used in the last finishing_rounds iterations
    finishing_rounds: int = 3
    projection_tol: float = 1e-6
    projection_max_rounds: int = 10000

    # ==================== VERTEX FIXING ====================
    fixing_enabled: bool = True
    fix_threshold: float = 0.99  # |x_i| >= tau freezes vertex i at sign(x_i)

    # ==================== ROUNDING ====================
    round_trials: int = 8

    # ==================== RUNTIME ====================
    seed: int = 0
    max_workers: int = 1  # Concurrent sibling subproblems in recursive partitioning
    log_interval: int = 10

    def validate(self) -> 'GdConfig':
        """Raise ValueError on inconsistent settings; returns self for chaining."""
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not 0.0 < self.fix_threshold <= 1.0:
            raise ValueError(f"fix_threshold must lie in (0, 1], got {self.fix_threshold}")
        if self.step_mode not in ('target_length', 'fixed'):
            raise ValueError(f"unknown step_mode '{self.step_mode}'")
        if self.step_mode == 'fixed' and (self.step_size is None or self.step_size < 0):
            raise ValueError("fixed step mode needs a non-negative step_size")
        if self.target_length is not None and self.target_length <= 0:
            raise ValueError(f"target_length must be > 0, got {self.target_length}")
        if self.noise_std is not None and self.noise_std < 0:
            raise ValueError(f"noise_std must be >= 0, got {self.noise_std}")
        for name in ('projection', 'finishing_projection'):
            if getattr(self, name) not in METHODS:
                raise ValueError(f"unknown {name} '{getattr(self, name)}'")
        if self.round_trials < 1:
            raise ValueError(f"round_trials must be >= 1, got {self.round_trials}")
        if self.max_workers < 1:
            raise ValueError(f"max_workers must be >= 1, got {self.max_workers}")
        return self

    def get_noise_std(self, n: int) -> float:
        if self.noise_std is not None:
            return self.noise_std
        return 1.0 / math.sqrt(n) if n else 0.0

    def get_target_length(self, n: int) -> float:
        if self.target_length is not None:
            return self.target_length
        return 2.0 * math.sqrt(n) / self.iterations

    def get_projection_method(self, iteration: int) -> str:
        """Finishing method for the last `finishing_rounds` iterations, regular otherwise."""
        if iteration >= self.iterations - self.finishing_rounds:
            return self.finishing_projection
        return self.projection

    def with_overrides(self, **changes) -> 'GdConfig':
        return replace(self, **changes)

    def digest(self) -> str:
        """Short digest used in partition provenance; worker count excluded."""
        payload = asdict(self)
        payload.pop('max_workers')
        payload.pop('log_interval')
        return config_digest(payload)


# Default configuration instance
DEFAULT_GD_CONFIG = GdConfig()
