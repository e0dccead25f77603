"""
Vertex weight functions defining the balance constraints.

A WeightSet holds d strictly positive rows w^1..w^d over the vertices of one
graph, together with the per-row totals W_j.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from gdpart_core.errors import WeightError
from gdpart_core.graph import Graph

logger = logging.getLogger(__name__)

DEFAULT_PAGERANK_DAMPING = 0.85
DEFAULT_PAGERANK_ITERATIONS = 30

WEIGHT_TOKENS = ('unit', 'degree', 'nbrdeg', 'pagerank')


@dataclass(frozen=True, eq=False)
class WeightSet:
    """d rows x n columns of positive vertex weights."""
    values: np.ndarray
    labels: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        values = np.atleast_2d(np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, 'values', values)
        labels = tuple(self.labels) or tuple(f"w{j + 1}" for j in range(values.shape[0]))
        if len(labels) != values.shape[0]:
            raise ValueError(f"{len(labels)} labels for {values.shape[0]} weight rows")
        object.__setattr__(self, 'labels', labels)

        if values.size and not np.all(np.isfinite(values)):
            raise WeightError("weights must be finite")
        bad = np.argwhere(values <= 0)
        if bad.size:
            j, i = (int(v) for v in bad[0])
            raise WeightError(
                f"non-positive weight {values[j, i]} for vertex index {i} in dimension '{labels[j]}'",
                vertex_id=i, dimension=labels[j],
            )

    @property
    def d(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])

    @cached_property
    def totals(self) -> np.ndarray:
        return self.values.sum(axis=1)

    def append(self, row: Sequence[float], label: str) -> 'WeightSet':
        """New WeightSet with one more dimension."""
        row = np.asarray(row, dtype=np.float64)
        if self.d and row.shape[0] != self.n:
            raise ValueError(f"row has length {row.shape[0]}, weight set has n={self.n}")
        stacked = np.vstack([self.values, row]) if self.d else row[np.newaxis, :]
        return WeightSet(stacked, self.labels + (label,))

    def restrict(self, indices) -> 'WeightSet':
        """Weights of a vertex subset (totals are recomputed over the subset)."""
        return WeightSet(self.values[:, np.asarray(indices, dtype=np.int64)], self.labels)

    def check_matches(self, g: Graph):
        if self.n != g.n:
            raise WeightError(f"weight set covers {self.n} vertices, graph has {g.n}")

    @classmethod
    def from_rows(cls, rows: List[np.ndarray], labels: Sequence[str]) -> 'WeightSet':
        return cls(np.vstack(rows), tuple(labels))


# ==================== WEIGHT FUNCTIONS ====================

def _require_no_isolated(g: Graph, kind: str):
    isolated = g.isolated_vertices()
    if isolated.size:
        vertex = int(g.ids[isolated[0]])
        raise WeightError(
            f"vertex {vertex} is isolated; {kind} weights would be non-positive "
            f"({isolated.size} isolated vertices, see --drop-isolated)",
            vertex_id=vertex, dimension=kind,
        )


def unit_weights(n: int) -> np.ndarray:
    if n < 1:
        raise WeightError("cannot build weights for an empty graph")
    return np.ones(n, dtype=np.float64)


def degree_weights(g: Graph) -> np.ndarray:
    """Row of vertex degrees; the total is exactly 2m."""
    _require_no_isolated(g, 'degree')
    return g.degrees.astype(np.float64)


def neighbor_degree_sum_weights(g: Graph) -> np.ndarray:
    """Sum of the neighbors' degrees for each vertex."""
    _require_no_isolated(g, 'nbrdeg')
    return g.adjacency @ g.degrees.astype(np.float64)


def pagerank_weights(
        g: Graph,
        damping: float = DEFAULT_PAGERANK_DAMPING,
        iterations: int = DEFAULT_PAGERANK_ITERATIONS,
) -> np.ndarray:
    """
    Fixed-iteration PageRank on the undirected graph.

    Each vertex spreads its score equally over its neighbors; teleport mass is
    (1 - damping) / n. Starts from the uniform vector.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must lie in (0, 1), got {damping}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    _require_no_isolated(g, 'pagerank')

    n = g.n
    inverse_degree = 1.0 / g.degrees.astype(np.float64)
    scores = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    for _ in range(iterations):
        scores = teleport + damping * (g.adjacency @ (scores * inverse_degree))
    return scores


# ==================== SPEC GRAMMAR ====================

@dataclass
class WeightToken:
    """One parsed entry of a weight spec such as 'pagerank:0.9:50'."""
    name: str
    damping: float = DEFAULT_PAGERANK_DAMPING
    iterations: int = DEFAULT_PAGERANK_ITERATIONS

    @property
    def label(self) -> str:
        if self.name != 'pagerank':
            return self.name
        return f"pagerank:{self.damping:g}:{self.iterations}"


def parse_weight_spec(spec: str) -> List[WeightToken]:
    """
    Parse 'unit,degree,nbrdeg,pagerank[:damping[:iters]]'.

    Raises:
        ValueError: unknown token or bad pagerank parameters
    """
    tokens = []
    for raw in (part.strip() for part in spec.split(',')):
        if not raw:
            raise ValueError(f"empty token in weight spec '{spec}'")
        name, *params = raw.split(':')
        if name not in WEIGHT_TOKENS:
            raise ValueError(f"unknown weight token '{name}' (expected one of {', '.join(WEIGHT_TOKENS)})")
        if params and name != 'pagerank':
            raise ValueError(f"weight token '{name}' takes no parameters")
        token = WeightToken(name)
        try:
            if len(params) >= 1:
                token.damping = float(params[0])
            if len(params) >= 2:
                token.iterations = int(params[1])
        except ValueError:
            raise ValueError(f"bad pagerank parameters in '{raw}'") from None
        if len(params) > 2:
            raise ValueError(f"too many parameters in '{raw}'")
        tokens.append(token)
    return tokens


def build_weight_set(g: Graph, spec: str) -> WeightSet:
    """Evaluate a weight spec on a graph."""
    rows, labels = [], []
    for token in parse_weight_spec(spec):
        if token.name == 'unit':
            row = unit_weights(g.n)
        elif token.name == 'degree':
            row = degree_weights(g)
        elif token.name == 'nbrdeg':
            row = neighbor_degree_sum_weights(g)
        else:
            row = pagerank_weights(g, token.damping, token.iterations)
        rows.append(row)
        labels.append(token.label)
    logger.info(f"Built {len(rows)} weight rows for n={g.n}: {', '.join(labels)}")
    return WeightSet.from_rows(rows, labels)
