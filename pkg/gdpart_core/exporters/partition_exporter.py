"""
Partition TSV exporter: "external_id<TAB>part_index", sorted by external id.
"""

import pandas as pd

from gdpart_core.exporters.base_exporter import BaseExporter, Target, header_line
from gdpart_core.graph import Graph
from gdpart_core.partition import Partition


class PartitionExporter(BaseExporter):

    def __init__(self, graph: Graph):
        self.graph = graph

    def export(self, payload: Partition, output: Target = None, **kwargs) -> str:
        if payload.n != self.graph.n:
            raise ValueError(f"partition covers {payload.n} vertices, graph has {self.graph.n}")
        df = pd.DataFrame({'id': self.graph.ids, 'part': payload.assignment}).sort_values('id', kind='stable')

        with self.open_output(output) as handle:
            handle.write(header_line({'k': payload.k, **payload.provenance.to_dict()}))
            df.to_csv(handle, sep='\t', header=False, index=False, lineterminator='\n')
        return self.target_name(output)


def save_partition(p: Partition, graph: Graph, output: Target = None) -> str:
    return PartitionExporter(graph).export(p, output)
