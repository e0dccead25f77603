"""
Partition quality measures: edge locality, cut size and per-dimension imbalance.
"""

from typing import Dict, List

import numpy as np

from gdpart_core.graph import Graph
from gdpart_core.partition import Partition
from gdpart_core.weights import WeightSet


def _check_cover(n: int, p: Partition):
    if p.n != n:
        raise ValueError(f"partition covers {p.n} vertices, expected {n}")


def uncut_edges(g: Graph, p: Partition) -> int:
    _check_cover(g.n, p)
    if g.m == 0:
        return 0
    edges = g.edge_array
    return int(np.count_nonzero(p.assignment[edges[:, 0]] == p.assignment[edges[:, 1]]))


def cut_size(g: Graph, p: Partition) -> int:
    return g.m - uncut_edges(g, p)


def edge_locality(g: Graph, p: Partition) -> float:
    """Fraction of edges inside a part; 1.0 for an edgeless graph."""
    if g.m == 0:
        _check_cover(g.n, p)
        return 1.0
    return uncut_edges(g, p) / g.m


def part_weights(ws: WeightSet, p: Partition) -> np.ndarray:
    """d x k matrix of part weights."""
    _check_cover(ws.n, p)
    return np.vstack([np.bincount(p.assignment, weights=row, minlength=p.k) for row in ws.values])


def imbalance(ws: WeightSet, p: Partition) -> np.ndarray:
    """max_i w^j(V_i) / (W_j / k) - 1 for every dimension j."""
    weights = part_weights(ws, p)
    return weights.max(axis=1) / (ws.totals / p.k) - 1.0


def summarize(g: Graph, ws: WeightSet, p: Partition) -> Dict:
    """Plain-dict metrics (input of the JSON report)."""
    values = imbalance(ws, p)
    cut = cut_size(g, p)
    return {
        'n': g.n,
        'm': g.m,
        'k': p.k,
        'locality': edge_locality(g, p),
        'cut_edges': cut,
        'imbalance': [
            {'label': label, 'value': float(value)}
            for label, value in zip(ws.labels, values)
        ],
        'part_sizes': p.part_sizes().tolist(),
    }
