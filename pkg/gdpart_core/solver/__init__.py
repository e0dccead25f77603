"""
Projected gradient ascent solver for the balanced partitioning relaxation.
"""

from gdpart_core.solver.config import GdConfig, DEFAULT_GD_CONFIG
from gdpart_core.solver.state import FractionalSolution, IterationRecord, IterationTrace
from gdpart_core.solver.steps import fractional_objective, gd_noise, adaptive_step, StepResult
from gdpart_core.solver.fixing import fix_vertices, free_shifts
from gdpart_core.solver.gd_engine import GDEngine, run_gd

__all__ = [
    'GdConfig',
    'DEFAULT_GD_CONFIG',
    'FractionalSolution',
    'IterationRecord',
    'IterationTrace',
    'fractional_objective',
    'gd_noise',
    'adaptive_step',
    'StepResult',
    'fix_vertices',
    'free_shifts',
    'GDEngine',
    'run_gd',
]
