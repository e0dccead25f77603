"""
Undirected simple graph in compressed adjacency form.

The adjacency matrix A of the relaxation lives here; `adjacency_multiply`
(A @ x) is the gradient kernel of the solver.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from gdpart_core.utils import as_vector, make_rng, STREAM_PERTURBATION

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Immutable undirected simple graph.

    Attributes:
        offsets: per-vertex adjacency start indices, length n+1
        neighbors: concatenated sorted adjacency lists, length 2m
        ids: external id of each internal index (strictly increasing; int64,
            or uint64 when some id is 2^63 or more)
        self_loops_dropped: self-loops discarded while building
    """
    offsets: np.ndarray
    neighbors: np.ndarray
    ids: np.ndarray
    self_loops_dropped: int = 0

    # ==================== CONSTRUCTION ====================

    @classmethod
    def from_edges(
            cls,
            n: int,
            edges: Iterable[Tuple[int, int]],
            ids: Optional[np.ndarray] = None,
    ) -> 'Graph':
        """
        Build from internal-index edges; duplicates, orientation and self-loops are normalized.

        Args:
            n: vertex count
            edges: (u, v) pairs with 0 <= u, v < n
            ids: external ids (defaults to 0..n-1)
        """
        pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        pairs = pairs.reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise ValueError(f"edge endpoint out of range [0, {n})")

        loops = pairs[:, 0] == pairs[:, 1]
        self_loops = int(loops.sum())
        pairs = pairs[~loops]

        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        matrix = sp.coo_matrix(
            (np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(n, n)
        ).tocsr()
        matrix.sum_duplicates()
        matrix.sort_indices()

        if ids is None:
            ids = np.arange(n, dtype=np.int64)
        ids = np.asarray(ids)
        if ids.dtype != np.uint64:
            ids = ids.astype(np.int64)
        if ids.shape[0] != n:
            raise ValueError(f"ids has length {ids.shape[0]}, expected {n}")

        return cls(
            offsets=matrix.indptr.astype(np.int64),
            neighbors=matrix.indices.astype(np.int64),
            ids=ids,
            self_loops_dropped=self_loops,
        )

    @classmethod
    def from_networkx(cls, nx_graph) -> 'Graph':
        """Convert a networkx graph whose nodes are integers (used as external ids)."""
        nodes = np.array(sorted(int(v) for v in nx_graph.nodes()), dtype=np.int64)
        index = {int(v): i for i, v in enumerate(nodes)}
        edges = [(index[int(u)], index[int(v)]) for u, v in nx_graph.edges()]
        return cls.from_edges(len(nodes), edges, ids=nodes)

    @classmethod
    def empty(cls) -> 'Graph':
        return cls.from_edges(0, [])

    # ==================== BASIC PROPERTIES ====================

    @property
    def n(self) -> int:
        return int(self.offsets.shape[0] - 1)

    @property
    def m(self) -> int:
        return int(self.neighbors.shape[0] // 2)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix (float64 CSR)."""
        data = np.ones(self.neighbors.shape[0], dtype=np.float64)
        return sp.csr_matrix((data, self.neighbors, self.offsets), shape=(self.n, self.n))

    @cached_property
    def id_map(self) -> Dict[int, int]:
        """External id -> internal index."""
        return {int(external): i for i, external in enumerate(self.ids)}

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Each undirected edge once as a (m, 2) array with u < v."""
        sources = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = sources < self.neighbors
        return np.stack([sources[keep], self.neighbors[keep]], axis=1)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def index_of(self, external_id: int) -> int:
        try:
            return self.id_map[int(external_id)]
        except KeyError:
            raise KeyError(f"vertex id {external_id} is not in the graph") from None

    def isolated_vertices(self) -> np.ndarray:
        """Internal indices of degree-0 vertices."""
        return np.flatnonzero(self.degrees == 0)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def adjacency_multiply(g: Graph, x) -> np.ndarray:
    """
    Return A @ x, i.e. output[i] = sum of x[j] over neighbors j of i.

    Raises:
        ValueError: if len(x) != g.n
    """
    vector = as_vector(x, g.n, 'vector')
    if g.n == 0:
        return np.zeros(0)
    return g.adjacency @ vector


def induced_subgraph(g: Graph, members) -> Tuple[Graph, np.ndarray]:
    """
    Subgraph on `members`, keeping external ids.

    Returns:
        (subgraph, mapping) where mapping[i] is the parent index of sub-vertex i
    """
    mapping = np.unique(np.asarray(members, dtype=np.int64))
    if mapping.size and (mapping[0] < 0 or mapping[-1] >= g.n):
        raise ValueError(f"member index out of range [0, {g.n})")
    if mapping.size == 0:
        return Graph.empty(), mapping

    block = g.adjacency[mapping][:, mapping].tocsr()
    block.sort_indices()
    sub = Graph(
        offsets=block.indptr.astype(np.int64),
        neighbors=block.indices.astype(np.int64),
        ids=g.ids[mapping],
    )
    return sub, mapping


def estimate_lambda_max(g: Graph, iterations: int = 100, seed: int = 0) -> float:
    """
    Power-iteration estimate of the spectral norm of A.

    This is the Lipschitz constant L of the gradient of f(x) = x^T A x / 2.
    """
    if g.n == 0 or g.m == 0:
        return 0.0
    rng = make_rng(seed, STREAM_PERTURBATION, 0)
    v = rng.standard_normal(g.n)
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(iterations):
        w = g.adjacency @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        estimate = norm
        v = w / norm
    return float(estimate)
