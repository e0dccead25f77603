"""
Partition importer: "external_id part_index" per line.

A header "# k=<k> ..." fixes the part count; otherwise k = max index + 1.
"""

import logging
from typing import Optional

import numpy as np
import pandas as pd

from gdpart_core.errors import PartitionFormatError
from gdpart_core.graph import Graph
from gdpart_core.importers.base_importer import BaseImporter, Source
from gdpart_core.partition import Partition, Provenance

logger = logging.getLogger(__name__)


class PartitionImporter(BaseImporter):

    def __init__(self, graph: Graph, k: Optional[int] = None):
        super().__init__()
        self.graph = graph
        self.k = k

    def _header_fields(self) -> dict:
        fields = {}
        for token in self.header_tokens():
            if '=' in token:
                key, value = token.split('=', 1)
                fields[key] = value
        return fields

    def import_text(self, text: str) -> Partition:
        table = self.read_table(text)
        if table.empty and self.graph.n:
            raise PartitionFormatError(f"{self.source_name}: no partition rows")
        if not table.empty and table.shape[1] < 2:
            raise PartitionFormatError(f"{self.source_name}: rows need an id and a part index")

        header = self._header_fields()
        k = self.k if self.k is not None else (int(header['k']) if 'k' in header else None)

        assignment = np.full(self.graph.n, -1, dtype=np.int64)
        if not table.empty:
            ids = pd.to_numeric(table[0], errors='coerce')
            parts = pd.to_numeric(table[1], errors='coerce')
            broken = ids.isna() | parts.isna() | (parts < 0) | (parts != parts.round())
            if broken.any():
                row = int(np.flatnonzero(broken.to_numpy())[0])
                raise PartitionFormatError(f"{self.source_name}:{self.line_number(row)}: malformed partition row")
            external = [int(value) for value in ids.tolist()]
            for row, (external_id, part) in enumerate(zip(external, parts.astype(np.int64))):
                index = self.graph.id_map.get(external_id)
                if index is None:
                    raise PartitionFormatError(
                        f"{self.source_name}:{self.line_number(row)}: vertex {external_id} is not in the graph",
                        vertex_id=int(external_id),
                    )
                if k is not None and part >= k:
                    raise PartitionFormatError(
                        f"{self.source_name}:{self.line_number(row)}: vertex {external_id} has part {part} >= k={k}",
                        vertex_id=int(external_id),
                    )
                assignment[index] = part

        missing = np.flatnonzero(assignment < 0)
        if missing.size:
            vertex = int(self.graph.ids[missing[0]])
            raise PartitionFormatError(f"{self.source_name}: vertex {vertex} has no part", vertex_id=vertex)
        if k is None:
            k = int(assignment.max()) + 1 if assignment.size else 1

        seed = header.get('seed')
        provenance = Provenance(
            header.get('algorithm', 'file'),
            int(seed) if seed not in (None, 'None') else None,
            header.get('config'),
        )
        return Partition(k, assignment, provenance)


def load_partition(source: Source, graph: Graph, k: Optional[int] = None) -> Partition:
    """
    Load a partition of `graph`.

    Raises:
        PartitionFormatError: unknown or missing vertex, or part index >= k
    """
    return PartitionImporter(graph, k).load(source)
