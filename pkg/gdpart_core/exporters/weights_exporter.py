"""
Weights TSV exporter: "# external_id label1 ... labeld" header, one row per vertex.
"""

import pandas as pd

from gdpart_core.exporters.base_exporter import BaseExporter, Target, resolve_float_format
from gdpart_core.graph import Graph
from gdpart_core.weights import WeightSet

DEFAULT_FLOAT_FORMAT = '%.17g'


class WeightsExporter(BaseExporter):

    def __init__(self, graph: Graph):
        self.graph = graph

    def export(self, payload: WeightSet, output: Target = None, **kwargs) -> str:
        payload.check_matches(self.graph)
        float_format = resolve_float_format(kwargs.get('float_format'), DEFAULT_FLOAT_FORMAT)

        df = pd.DataFrame(payload.values.T, columns=list(payload.labels))
        df.insert(0, 'external_id', self.graph.ids)
        df = df.sort_values('external_id', kind='stable')

        with self.open_output(output) as handle:
            handle.write('# ' + ' '.join(df.columns) + '\n')
            df.to_csv(
                handle, sep='\t', header=False, index=False,
                float_format=float_format, lineterminator='\n',
            )
        return self.target_name(output)


def save_weights(ws: WeightSet, graph: Graph, output: Target = None, float_format: str = None) -> str:
    return WeightsExporter(graph).export(ws, output, float_format=float_format)
