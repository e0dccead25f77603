"""
Export modules for partitions, weights, graphs, traces, reports and plots.
"""

from gdpart_core.exporters.base_exporter import BaseExporter
from gdpart_core.exporters.partition_exporter import PartitionExporter, save_partition
from gdpart_core.exporters.weights_exporter import WeightsExporter, save_weights
from gdpart_core.exporters.edge_list_exporter import EdgeListExporter, save_edge_list
from gdpart_core.exporters.trace_exporter import TraceExporter, save_trace
from gdpart_core.exporters.json_exporter import JSONExporter, save_json
from gdpart_core.exporters.plot_exporter import PlotExporter, load_trace_csv, plot_trace

__all__ = [
    'BaseExporter',
    'PartitionExporter', 'save_partition',
    'WeightsExporter', 'save_weights',
    'EdgeListExporter', 'save_edge_list',
    'TraceExporter', 'save_trace',
    'JSONExporter', 'save_json',
    'PlotExporter', 'load_trace_csv', 'plot_trace',
]
