"""
From fractional solutions to partitions.

Randomized rounding turns x into a bisection; recursive bisection builds k
parts; hashing gives the baseline.

Design Decisions:
1. A rounding is accepted when every dimension's imbalance is at most
   eps + 4 * sqrt(max w / W). Among accepted roundings the one with the most
   uncut edges wins; with none accepted the least violating one is returned
   and flagged.
2. General k splits each node into ceil(k/2) and floor(k/2) parts. The slab
   center b_j = (ceil(k/2) - floor(k/2)) / k * W_j steers the weight ratio.
3. Nodes of one recursion level are independent; they run on a thread pool
   and every node draws from its own seed (seed XOR node code), so the result
   does not depend on the worker count.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from gdpart_core.errors import InfeasibleError, InfeasiblePartitionError
from gdpart_core.graph import Graph, induced_subgraph
from gdpart_core.metrics import imbalance as partition_imbalance
from gdpart_core.partition import Partition, Provenance
from gdpart_core.solver import GdConfig, DEFAULT_GD_CONFIG, FractionalSolution, IterationTrace, run_gd
from gdpart_core.utils import make_rng, stable_hash, STREAM_ROUNDING
from gdpart_core.weights import WeightSet

logger = logging.getLogger(__name__)


# ==================== ROUNDING ====================

def randomized_round(solution: FractionalSolution, rng: np.random.Generator) -> Partition:
    """Vertex i joins part 0 with probability (1 + x_i) / 2; fixed vertices follow their sign."""
    x = solution.x
    draws = rng.random(x.shape[0])
    in_first = draws < (1.0 + x) / 2.0
    in_first = np.where(solution.fixed, x > 0, in_first)
    return Partition(2, np.where(in_first, 0, 1), Provenance('rounding'))


def bisection_imbalance(ws: WeightSet, assignment: np.ndarray, shifts: Optional[np.ndarray] = None) -> np.ndarray:
    """|<w^j, s> - b_j| / W_j with s = +1 on part 0 and -1 on part 1."""
    signs = 1.0 - 2.0 * np.asarray(assignment, dtype=np.float64)
    centers = np.zeros(ws.d) if shifts is None else np.asarray(shifts, dtype=np.float64)
    return np.abs(ws.values @ signs - centers) / ws.totals


def rounding_slack(ws: WeightSet) -> np.ndarray:
    """4 * sqrt(max_i w^j_i / W_j) per dimension."""
    return 4.0 * np.sqrt(ws.values.max(axis=1) / ws.totals)


@dataclass
class RoundingResult:
    partition: Partition
    uncut: int
    imbalance: np.ndarray
    within_tolerance: bool
    trials: int


def round_best_of(
        solution: FractionalSolution,
        graph: Graph,
        weights: WeightSet,
        epsilon: float,
        trials: int,
        rng: np.random.Generator,
        shifts: Optional[np.ndarray] = None,
) -> RoundingResult:
    """
    Best of `trials` independent roundings.

    Returns:
        RoundingResult; `within_tolerance` is False when no rounding met the
        acceptance slack and the least violating one was kept
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    limit = epsilon + rounding_slack(weights)
    edges = graph.edge_array

    best: Optional[RoundingResult] = None
    best_violation = np.inf
    for _ in range(trials):
        partition = randomized_round(solution, rng)
        assignment = partition.assignment
        uncut = int(np.count_nonzero(assignment[edges[:, 0]] == assignment[edges[:, 1]])) if edges.size else 0
        balance = bisection_imbalance(weights, assignment, shifts)
        violation = float(np.max(balance - limit))
        accepted = violation <= 0.0

        if accepted:
            if best is None or not best.within_tolerance or uncut > best.uncut:
                best = RoundingResult(partition, uncut, balance, True, trials)
        elif (best is None or not best.within_tolerance) and violation < best_violation:
            best = RoundingResult(partition, uncut, balance, False, trials)
            best_violation = violation

    if not best.within_tolerance:
        logger.warning(f"no rounding out of {trials} met the balance slack (max imbalance {best.imbalance.max():.4g})")
    return best


def bisect(
        graph: Graph,
        weights: WeightSet,
        config: GdConfig = DEFAULT_GD_CONFIG,
        shifts: Optional[np.ndarray] = None,
) -> Tuple[RoundingResult, FractionalSolution, IterationTrace]:
    """run_gd followed by round_best_of, both driven by config.seed."""
    solution, trace = run_gd(graph, weights, config, shifts=shifts)
    rng = make_rng(config.seed, STREAM_ROUNDING)
    rounding = round_best_of(solution, graph, weights, config.epsilon, config.round_trials, rng, shifts)
    return rounding, solution, trace


# ==================== RECURSIVE BISECTION ====================

@dataclass
class RecursionNode:
    members: np.ndarray  # Indices into the full graph
    k: int
    first_label: int
    code: int = 0
    path: str = 'root'

    @property
    def left_k(self) -> int:
        return math.ceil(self.k / 2)

    @property
    def right_k(self) -> int:
        return self.k // 2


@dataclass
class NodeSummary:
    path: str
    n: int
    k: int
    objective: float
    uncut: int
    imbalance: List[float]
    within_tolerance: bool


@dataclass
class PartitionReport:
    partition: Partition
    imbalance: np.ndarray
    nodes: List[NodeSummary] = field(default_factory=list)
    traces: dict = field(default_factory=dict)


class RecursivePartitioner:
    """
    k-way partitioning by recursive bisection.

    Workflow:
    1. Root node holds every vertex and all k labels
    2. Each level: bisect every node with k > 1 (in parallel), split its labels
    3. Nodes with k = 1 become parts
    4. Report the k-way imbalance of the assembled partition
    """

    def __init__(self, graph: Graph, weights: WeightSet, k: int, config: GdConfig = DEFAULT_GD_CONFIG):
        weights.check_matches(graph)
        if k < 1 or k > max(graph.n, 1):
            raise ValueError(f"k must lie in [1, n={graph.n}], got {k}")
        self.graph = graph
        self.weights = weights
        self.k = k
        self.config = config.validate()
        self.report: Optional[PartitionReport] = None

    def run(self) -> Partition:
        assignment = np.zeros(self.graph.n, dtype=np.int64)
        nodes = [RecursionNode(np.arange(self.graph.n), self.k, 0)]
        summaries: List[NodeSummary] = []
        traces = {}

        with ThreadPoolExecutor(max_workers=self.config.max_workers) as pool:
            while nodes:
                leaves = [node for node in nodes if node.k == 1]
                for leaf in leaves:
                    assignment[leaf.members] = leaf.first_label
                splitting = [node for node in nodes if node.k > 1]
                outcomes = list(pool.map(self._split, splitting))

                nodes = []
                for node, (children, summary, trace) in zip(splitting, outcomes):
                    summaries.append(summary)
                    traces[node.path] = trace
                    nodes.extend(children)

        partition = Partition(
            self.k, assignment,
            Provenance('gd', self.config.seed, self.config.digest()),
        )
        final_imbalance = partition_imbalance(self.weights, partition)
        logger.info(
            f"{self.k}-way partition done: imbalance "
            + ', '.join(f"{label}={value:.4g}" for label, value in zip(self.weights.labels, final_imbalance))
        )
        self.report = PartitionReport(partition, final_imbalance, summaries, traces)
        return partition

    def _split(self, node: RecursionNode):
        sub, mapping = induced_subgraph(self.graph, node.members)
        sub_weights = self.weights.restrict(mapping)
        centers = (node.left_k - node.right_k) / node.k * sub_weights.totals
        node_config = self.config.with_overrides(seed=self.config.seed ^ node.code)

        try:
            rounding, solution, trace = bisect(sub, sub_weights, node_config, shifts=centers)
        except InfeasibleError as e:
            raise InfeasiblePartitionError(str(e), path=node.path) from e

        in_left = rounding.partition.assignment == 0
        left, right = mapping[in_left], mapping[~in_left]
        if left.size < node.left_k or right.size < node.right_k:
            raise InfeasiblePartitionError(
                f"bisection produced sides of {left.size} and {right.size} vertices "
                f"for {node.left_k} and {node.right_k} parts", path=node.path,
            )

        children = [
            RecursionNode(left, node.left_k, node.first_label, 2 * node.code + 1, f"{node.path}/L"),
            RecursionNode(right, node.right_k, node.first_label + node.left_k, 2 * node.code + 2, f"{node.path}/R"),
        ]
        summary = NodeSummary(
            path=node.path, n=sub.n, k=node.k, objective=solution.objective,
            uncut=rounding.uncut, imbalance=rounding.imbalance.tolist(),
            within_tolerance=rounding.within_tolerance,
        )
        return children, summary, trace


def recursive_partition(graph: Graph, weights: WeightSet, k: int, config: GdConfig = DEFAULT_GD_CONFIG) -> Partition:
    """k-way partition by recursive bisection; see RecursivePartitioner."""
    return RecursivePartitioner(graph, weights, k, config).run()


# ==================== BASELINE ====================

def hash_partition(graph: Graph, k: int, seed: int = 0) -> Partition:
    """part = stable_hash(external_id, seed) mod k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    parts = stable_hash(graph.ids, seed) % np.uint64(k)
    return Partition(k, parts.astype(np.int64), Provenance('hash', seed))
