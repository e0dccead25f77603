"""
Weights importer: "external_id w1 ... wd" per line.

An optional first-line header "# external_id label1 ... labeld" names the
dimensions.
"""

import logging

import numpy as np
import pandas as pd

from gdpart_core.errors import WeightError
from gdpart_core.graph import Graph
from gdpart_core.importers.base_importer import BaseImporter, Source
from gdpart_core.weights import WeightSet

logger = logging.getLogger(__name__)


class WeightsImporter(BaseImporter):
    """Reads a weight table and aligns it with a graph's vertices."""

    def __init__(self, graph: Graph):
        super().__init__()
        self.graph = graph

    def import_text(self, text: str) -> WeightSet:
        table = self.read_table(text)
        if table.empty:
            raise WeightError(f"{self.source_name}: no weight rows")
        if table.shape[1] < 2:
            raise WeightError(f"{self.source_name}: rows need an id and at least one weight")

        ids = pd.to_numeric(table[0], errors='coerce')
        values = table.iloc[:, 1:].apply(pd.to_numeric, errors='coerce')
        broken = ids.isna() | values.isna().any(axis=1)
        if broken.any():
            row = int(np.flatnonzero(broken.to_numpy())[0])
            raise WeightError(
                f"{self.source_name}:{self.line_number(row)}: malformed weight row",
                row_number=self.line_number(row),
            )
        matrix = values.to_numpy(dtype=np.float64)
        bad = np.argwhere(~(matrix > 0))
        if bad.size:
            row = int(bad[0][0])
            raise WeightError(
                f"{self.source_name}:{self.line_number(row)}: non-positive weight "
                f"{matrix[row, bad[0][1]]} for vertex {int(ids.iloc[row])}",
                vertex_id=int(ids.iloc[row]), row_number=self.line_number(row),
            )

        external = [int(value) for value in ids.tolist()]
        positions = np.full(self.graph.n, -1, dtype=np.int64)
        for row, external_id in enumerate(external):
            index = self.graph.id_map.get(external_id)
            if index is None:
                raise WeightError(
                    f"{self.source_name}:{self.line_number(row)}: vertex {external_id} is not in the graph",
                    vertex_id=int(external_id), row_number=self.line_number(row),
                )
            if positions[index] >= 0:
                raise WeightError(
                    f"{self.source_name}:{self.line_number(row)}: duplicate row for vertex {external_id}",
                    vertex_id=int(external_id), row_number=self.line_number(row),
                )
            positions[index] = row
        missing = np.flatnonzero(positions < 0)
        if missing.size:
            vertex = int(self.graph.ids[missing[0]])
            raise WeightError(f"{self.source_name}: no weights for vertex {vertex}", vertex_id=vertex)

        header = self.header_tokens()
        d = matrix.shape[1]
        labels = tuple(header[1:1 + d]) if len(header) == d + 1 else tuple(f"w{j + 1}" for j in range(d))
        logger.info(f"{self.source_name}: loaded {d} weight rows for {self.graph.n} vertices")
        return WeightSet(matrix[positions].T, labels)


def load_weights(source: Source, graph: Graph) -> WeightSet:
    """
    Load a weight table for `graph`.

    Raises:
        WeightError: malformed or non-positive row (names the line), unknown or missing vertex
    """
    return WeightsImporter(graph).load(source)
