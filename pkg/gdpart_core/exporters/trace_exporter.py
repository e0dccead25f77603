"""
Trace CSV exporter.

Columns: iter, objective, step_len, max_imbalance, fixed_count, gamma, saturated.
"""

from gdpart_core.exporters.base_exporter import BaseExporter, Target, resolve_float_format
from gdpart_core.solver.state import IterationTrace

DEFAULT_FLOAT_FORMAT = '%.12g'


class TraceExporter(BaseExporter):

    def export(self, payload: IterationTrace, output: Target = None, **kwargs) -> str:
        float_format = resolve_float_format(kwargs.get('float_format'), DEFAULT_FLOAT_FORMAT)
        with self.open_output(output) as handle:
            payload.to_dataframe().to_csv(handle, index=False, float_format=float_format, lineterminator='\n')
        return self.target_name(output)


def save_trace(trace: IterationTrace, output: Target = None, float_format: str = None) -> str:
    return TraceExporter().export(trace, output, float_format=float_format)
