"""
Edge-list importer for SNAP-style graph files.

One "u v" pair of non-negative integer ids per line; extra columns are ignored.
Ids up to 2^64 - 1 are accepted; a file with an id of 2^63 or more is held as uint64.
"""

import logging

import numpy as np
import pandas as pd

from gdpart_core.errors import GraphFormatError
from gdpart_core.graph import Graph
from gdpart_core.importers.base_importer import BaseImporter, Source

logger = logging.getLogger(__name__)

_INTEGER = r'\d+'
_UINT64_MAX = 2 ** 64 - 1


class EdgeListImporter(BaseImporter):
    """Builds a Graph from edge-list text, remapping external ids to 0..n-1."""

    def _parse_ids(self, cells: pd.Series) -> np.ndarray:
        try:
            return cells.astype(np.int64).to_numpy()
        except (OverflowError, ValueError):
            pass
        numbers = cells.map(int)
        too_wide = (numbers > _UINT64_MAX).to_numpy()
        if too_wide.any():
            row = int(np.flatnonzero(too_wide)[0])
            raise GraphFormatError(
                f"vertex id {cells.iloc[row]} exceeds 64 bits",
                line_number=self.line_number(row), source=self.source_name,
            )
        return np.array(numbers.tolist(), dtype=np.uint64)

    def import_text(self, text: str) -> Graph:
        table = self.read_table(text)
        if table.empty:
            logger.info(f"{self.source_name}: empty edge list")
            return Graph.empty()
        if table.shape[1] < 2:
            table[1] = np.nan

        endpoints = []
        for column in (0, 1):
            cells = table[column]
            valid = cells.notna() & cells.astype(str).str.fullmatch(_INTEGER)
            if not valid.all():
                row = int(np.flatnonzero(~valid.to_numpy())[0])
                token = cells.iloc[row]
                message = ('missing second vertex id' if pd.isna(token)
                           else f"'{token}' is not a non-negative integer id")
                raise GraphFormatError(message, line_number=self.line_number(row), source=self.source_name)
            endpoints.append(self._parse_ids(cells))

        # Mixed widths: every id is non-negative, so uint64 holds both columns
        if any(column.dtype == np.uint64 for column in endpoints):
            endpoints = [column.astype(np.uint64) for column in endpoints]
        u, v = endpoints
        ids = np.unique(np.concatenate([u, v]))
        pairs = np.stack([np.searchsorted(ids, u), np.searchsorted(ids, v)], axis=1)
        graph = Graph.from_edges(ids.shape[0], pairs, ids=ids)

        self.result.self_loops = graph.self_loops_dropped
        self.result.duplicates = int(pairs.shape[0] - graph.self_loops_dropped - graph.m)
        logger.info(
            f"{self.source_name}: {self.result.records_read} rows, n={graph.n}, m={graph.m}, "
            f"{self.result.self_loops} self-loops dropped, {self.result.duplicates} duplicate edges collapsed"
        )
        return graph


def load_edge_list(source: Source) -> Graph:
    """
    Load an undirected simple graph from an edge list.

    Raises:
        GraphFormatError: a data line does not hold two integer ids, or an id
            exceeds 64 bits (names the line)
    """
    return EdgeListImporter().load(source)
