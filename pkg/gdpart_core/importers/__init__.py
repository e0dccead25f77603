"""
Importers for graph, weight and partition files.
"""

from gdpart_core.importers.base_importer import BaseImporter, ImportResult
from gdpart_core.importers.edge_list_importer import EdgeListImporter, load_edge_list
from gdpart_core.importers.weights_importer import WeightsImporter, load_weights
from gdpart_core.importers.partition_importer import PartitionImporter, load_partition

__all__ = [
    'BaseImporter',
    'ImportResult',
    'EdgeListImporter',
    'load_edge_list',
    'WeightsImporter',
    'load_weights',
    'PartitionImporter',
    'load_partition',
]
