"""
Synthetic graph families used for evaluation and tests.
Thin wrappers over networkx generators returning gdpart Graphs.
"""

import networkx as nx

from gdpart_core.graph import Graph


def erdos_renyi(n: int, avg_degree: float, seed: int = 0) -> Graph:
    """G(n, p) with p chosen for the requested expected average degree."""
    p = min(1.0, avg_degree / max(n - 1, 1))
    return Graph.from_networkx(nx.fast_gnp_random_graph(n, p, seed=seed))


def planted_partition(n: int, blocks: int, p_in: float, p_out: float, seed: int = 0) -> Graph:
    """Stochastic block model with `blocks` equal blocks (sizes differ by at most one)."""
    sizes = [n // blocks + (1 if b < n % blocks else 0) for b in range(blocks)]
    probabilities = [
        [p_in if a == b else p_out for b in range(blocks)]
        for a in range(blocks)
    ]
    sbm = nx.stochastic_block_model(sizes, probabilities, seed=seed)
    return Graph.from_networkx(nx.convert_node_labels_to_integers(sbm))


def disjoint_cliques(count: int, size: int) -> Graph:
    """`count` vertex-disjoint copies of K_size."""
    union = nx.disjoint_union_all([nx.complete_graph(size) for _ in range(count)])
    return Graph.from_networkx(union)


def dumbbell(clique_size: int) -> Graph:
    """Two cliques joined by a single bridge edge."""
    return Graph.from_networkx(nx.barbell_graph(clique_size, 0))
