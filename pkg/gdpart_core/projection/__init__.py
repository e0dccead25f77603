"""
Projection onto the box intersected with the balance slabs.
"""

from gdpart_core.projection.base import (
    BalanceSpec,
    ProjectionProblem,
    ProjectionResult,
    METHODS,
    clamp,
)
from gdpart_core.projection.exact_1d import project_exact_1d
from gdpart_core.projection.exact_2d import project_exact_2d
from gdpart_core.projection.iterative import (
    project_box,
    project_hyperplane,
    alternating_projection,
    dykstra_projection,
)
from gdpart_core.projection.nested import nested_projection
from gdpart_core.projection.dispatch import project_K

__all__ = [
    'BalanceSpec',
    'ProjectionProblem',
    'ProjectionResult',
    'METHODS',
    'clamp',
    'project_exact_1d',
    'project_exact_2d',
    'project_box',
    'project_hyperplane',
    'alternating_projection',
    'dykstra_projection',
    'nested_projection',
    'project_K',
]
