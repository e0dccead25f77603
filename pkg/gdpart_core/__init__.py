"""
gdpart core: multi-dimensional balanced graph partitioning by projected
gradient descent on a quadratic relaxation.
"""

from gdpart_core.errors import (
    GDPartError,
    InputError,
    GraphFormatError,
    WeightError,
    PartitionFormatError,
    InfeasibleError,
    InfeasibleProjectionError,
    InfeasibleFixingError,
    InfeasiblePartitionError,
    ConvergenceError,
)
from gdpart_core.graph import Graph, adjacency_multiply, induced_subgraph, estimate_lambda_max
from gdpart_core.weights import (
    WeightSet,
    unit_weights,
    degree_weights,
    neighbor_degree_sum_weights,
    pagerank_weights,
    parse_weight_spec,
    build_weight_set,
)
from gdpart_core.partition import Partition, Provenance
from gdpart_core.projection import BalanceSpec, ProjectionResult, project_K
from gdpart_core.solver import GdConfig, DEFAULT_GD_CONFIG, GDEngine, run_gd
from gdpart_core.partitioner import (
    randomized_round,
    round_best_of,
    bisect,
    RecursivePartitioner,
    recursive_partition,
    hash_partition,
)
from gdpart_core.metrics import edge_locality, cut_size, imbalance, summarize
from gdpart_core.validator import FeasibilityReport, FeasibilityViolation, PartitionFeasibilityValidator

__version__ = '0.1.0'

__all__ = [
    'GDPartError',
    'InputError',
    'GraphFormatError',
    'WeightError',
    'PartitionFormatError',
    'InfeasibleError',
    'InfeasibleProjectionError',
    'InfeasibleFixingError',
    'InfeasiblePartitionError',
    'ConvergenceError',
    'Graph',
    'adjacency_multiply',
    'induced_subgraph',
    'estimate_lambda_max',
    'WeightSet',
    'unit_weights',
    'degree_weights',
    'neighbor_degree_sum_weights',
    'pagerank_weights',
    'parse_weight_spec',
    'build_weight_set',
    'Partition',
    'Provenance',
    'BalanceSpec',
    'ProjectionResult',
    'project_K',
    'GdConfig',
    'DEFAULT_GD_CONFIG',
    'GDEngine',
    'run_gd',
    'randomized_round',
    'round_best_of',
    'bisect',
    'RecursivePartitioner',
    'recursive_partition',
    'hash_partition',
    'edge_locality',
    'cut_size',
    'imbalance',
    'summarize',
    'PartitionFeasibilityValidator',
    'FeasibilityReport',
    'FeasibilityViolation',
]
