"""
Edge list exporter: one "u v" line per undirected edge, external ids, u < v internally.
"""

import pandas as pd

from gdpart_core.exporters.base_exporter import BaseExporter, Target
from gdpart_core.graph import Graph


class EdgeListExporter(BaseExporter):

    def export(self, payload: Graph, output: Target = None, **kwargs) -> str:
        edges = payload.edge_array
        df = pd.DataFrame({'u': payload.ids[edges[:, 0]], 'v': payload.ids[edges[:, 1]]})
        with self.open_output(output) as handle:
            handle.write(f"# n={payload.n} m={payload.m}\n")
            df.to_csv(handle, sep='\t', header=False, index=False, lineterminator='\n')
        return self.target_name(output)


def save_edge_list(g: Graph, output: Target = None) -> str:
    """Write `g` so that load_edge_list reads back the same edge set (isolated vertices are lost)."""
    return EdgeListExporter().export(g, output)
