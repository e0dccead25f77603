import io
import json

import networkx as nx
import numpy as np
import pandas as pd
import pytest

from gdpart_core.errors import PartitionFormatError, WeightError
from gdpart_core.exporters import load_trace_csv, plot_trace, save_json, save_partition, save_trace, save_weights
from gdpart_core.importers import load_edge_list, load_partition, load_weights
from gdpart_core.partition import Partition, Provenance
from gdpart_core.partitioner import hash_partition
from gdpart_core.solver.state import IterationRecord, IterationTrace, TRACE_COLUMNS
from gdpart_core.weights import build_weight_set

from tests.conftest import graph_of


@pytest.fixture
def edge():
    return graph_of(nx.path_graph(2))


def sample_trace(rows: int = 5) -> IterationTrace:
    trace = IterationTrace(labels=['unit', 'degree'])
    for i in range(rows):
        trace.append(IterationRecord(
            iteration=i, objective=10.0 + i, step_len=1.0 / (i + 1),
            imbalance=[0.01 * i, 0.02], fixed_count=i, gamma=0.5, saturated=(i == 2),
        ))
    return trace


class TestWeightsFiles:

    def test_load(self, edge):
        ws = load_weights(io.StringIO("0 1.0 2.0\n1 1.0 3.0\n"), edge)
        assert ws.totals.tolist() == [2.0, 5.0]
        assert ws.labels == ('w1', 'w2')

    def test_header_names_dimensions(self, edge):
        ws = load_weights(io.StringIO("# external_id unit load\n1 1 4\n0 1 2\n"), edge)
        assert ws.labels == ('unit', 'load')
        assert ws.values.tolist() == [[1.0, 1.0], [2.0, 4.0]]

    def test_zero_weight(self, edge):
        with pytest.raises(WeightError) as info:
            load_weights(io.StringIO("0 1.0 2.0\n1 0.0 3.0\n"), edge)
        assert info.value.row_number == 2
        assert info.value.vertex_id == 1

    @pytest.mark.parametrize('text', [
        "0 1.0\n1 abc\n",
        "0 1.0\n5 1.0\n",
        "0 1.0\n0 2.0\n",
        "0 1.0\n",
        "",
    ])
    def test_rejects(self, edge, text):
        with pytest.raises(WeightError):
            load_weights(io.StringIO(text), edge)

    def test_saved_weights_load_back_exactly(self, tmp_path, star3):
        ws = build_weight_set(star3, 'unit,pagerank')
        path = tmp_path / 'out' / 'weights.tsv'
        save_weights(ws, star3, path)
        assert path.read_text().splitlines()[0] == '# external_id unit pagerank:0.85:30'
        loaded = load_weights(path, star3)
        assert np.array_equal(loaded.values, ws.values)
        assert loaded.labels == ws.labels


class TestPartitionFiles:

    def test_save_with_provenance(self, tmp_path, path4):
        p = Partition(2, [0, 0, 1, 1], Provenance('gd', 7, 'abc123'))
        path = tmp_path / 'p.tsv'
        save_partition(p, path4, path)
        lines = path.read_text().splitlines()
        assert lines[0] == '# k=2 algorithm=gd seed=7 config=abc123'
        assert lines[1:] == ['0\t0', '1\t0', '2\t1', '3\t1']

        loaded = load_partition(path, path4)
        assert loaded.assignment.tolist() == [0, 0, 1, 1]
        assert loaded.provenance == p.provenance

    def test_rows_sorted_by_external_id(self):
        g = load_edge_list(io.StringIO("10 3\n3 7\n"))
        buffer = io.StringIO()
        save_partition(Partition(1, np.zeros(g.n)), g, buffer)
        ids = [int(line.split('\t')[0]) for line in buffer.getvalue().splitlines()[1:]]
        assert ids == [3, 7, 10]

    def test_unsigned_64_bit_ids_round_trip(self, tmp_path):
        g = load_edge_list(io.StringIO("18446744073709551615 5\n9223372036854775808 5\n"))
        path = tmp_path / 'wide.tsv'
        save_partition(Partition(2, [0, 1, 1], Provenance('hash', 3)), g, path)
        assert path.read_text().splitlines()[1:] == [
            '5\t0', '9223372036854775808\t1', '18446744073709551615\t1',
        ]
        assert load_partition(path, g).assignment.tolist() == [0, 1, 1]
        assert hash_partition(g, 4, 0).assignment.shape == (3,)

    def test_k_from_max_index(self, path4):
        loaded = load_partition(io.StringIO("0 2\n1 0\n2 1\n3 0\n"), path4)
        assert loaded.k == 3
        assert loaded.provenance.algorithm == 'file'

    def test_header_k_allows_empty_parts(self, path4):
        loaded = load_partition(io.StringIO("# k=4\n0 0\n1 0\n2 1\n3 1\n"), path4)
        assert loaded.k == 4
        assert loaded.part_sizes().tolist() == [2, 2, 0, 0]

    @pytest.mark.parametrize('text', [
        "0 0\n1 0\n2 1\n",
        "0 0\n1 0\n2 1\n9 1\n",
        "0 0\n1 0\n2 -1\n3 1\n",
        "0 0\n1 x\n2 1\n3 1\n",
        "# k=2\n0 0\n1 0\n2 1\n3 2\n",
    ])
    def test_rejects(self, path4, text):
        with pytest.raises(PartitionFormatError):
            load_partition(io.StringIO(text), path4)

    def test_unknown_vertex_is_named(self, path4):
        with pytest.raises(PartitionFormatError) as info:
            load_partition(io.StringIO("0 0\n1 0\n2 1\n9 1\n"), path4)
        assert info.value.vertex_id == 9


class TestTraceFiles:

    def test_columns(self, tmp_path):
        path = tmp_path / 'trace.csv'
        save_trace(sample_trace(), path)
        df = pd.read_csv(path)
        assert list(df.columns) == TRACE_COLUMNS
        assert df['iter'].tolist() == [0, 1, 2, 3, 4]
        assert df['max_imbalance'].tolist() == pytest.approx([0.02, 0.02, 0.02, 0.03, 0.04])
        assert df['saturated'].tolist() == [0, 0, 1, 0, 0]

    def test_empty_trace_has_header_only(self, tmp_path):
        path = tmp_path / 'trace.csv'
        save_trace(IterationTrace(), path)
        assert path.read_text().strip() == ','.join(TRACE_COLUMNS)

    def test_plot(self, tmp_path):
        csv = tmp_path / 'trace.csv'
        save_trace(sample_trace(), csv)
        image = tmp_path / 'plots' / 'trace.png'
        plot_trace(str(csv), image, title='test run')
        assert image.stat().st_size > 0

    def test_plot_needs_iterations_and_a_path(self, tmp_path):
        with pytest.raises(ValueError):
            plot_trace(IterationTrace(), tmp_path / 'empty.png')
        with pytest.raises(ValueError):
            plot_trace(sample_trace(), None)

    def test_load_trace_csv_checks_columns(self, tmp_path):
        path = tmp_path / 'bad.csv'
        path.write_text("iter,objective\n0,1.0\n")
        with pytest.raises(ValueError):
            load_trace_csv(path)


def test_save_json(tmp_path):
    path = tmp_path / 'report.json'
    save_json({'locality': 0.5, 'k': 2}, path)
    assert json.loads(path.read_text()) == {'locality': 0.5, 'k': 2}
