import json

import networkx as nx
import pytest

from gdpart_cli.config import get_settings
from gdpart_cli.main import EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK, main
from gdpart_core.importers import load_partition, load_edge_list

TWO_TRIANGLES = "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n"


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ('LOG_LEVEL', 'DEFAULT_THREADS', 'DEFAULT_ROUND_TRIALS', 'DEFAULT_WEIGHT_SPEC', 'FLOAT_FORMAT'):
        monkeypatch.delenv(f'GDPART_{name}', raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def write(path, text):
    path.write_text(text)
    return str(path)


def random_edge_list(path, n=60, p=0.1, seed=1):
    g = nx.gnp_random_graph(n, p, seed=seed)
    nx.add_path(g, range(n))
    return write(path, ''.join(f"{u} {v}\n" for u, v in g.edges()))


class TestPartitionCommand:

    def test_two_triangles(self, tmp_path, capsys):
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES)
        out = tmp_path / 'p.tsv'
        code = main(['partition', '--graph', graph, '--k', '2', '--epsilon', '0', '--seed', '7', '--out', str(out)])
        assert code == EXIT_OK
        partition = load_partition(out, load_edge_list(graph))
        assert partition.part_sizes().tolist() == [3, 3]
        report = json.loads(capsys.readouterr().out)
        assert report['algorithm'] == 'gd'
        assert report['seed'] == 7
        assert report['part_sizes'] == [3, 3]

    def test_stdout_partition_sends_report_to_stderr(self, tmp_path, capsys):
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES)
        assert main(['partition', '--graph', graph, '--k', '1']) == EXIT_OK
        captured = capsys.readouterr()
        assert captured.out.splitlines()[0].startswith('# k=1 algorithm=gd seed=0')
        assert json.loads(captured.err)['locality'] == 1.0

    def test_odd_unit_bisection_is_infeasible(self, tmp_path, capsys):
        graph = write(tmp_path / 'g.txt', "0 1\n1 2\n")
        code = main(['partition', '--graph', graph, '--epsilon', '0', '--weight-spec', 'unit'])
        assert code == EXIT_INFEASIBLE
        err = capsys.readouterr().err
        assert 'infeasible' in err
        assert '"check": "balance_window"' in err
        assert '"feasible": false' in err

    def test_missing_graph_flag(self):
        assert main(['partition']) == EXIT_ERROR

    def test_missing_graph_file(self, tmp_path):
        assert main(['partition', '--graph', str(tmp_path / 'absent.txt')]) == EXIT_ERROR

    def test_unknown_weight_token(self, tmp_path):
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES)
        assert main(['partition', '--graph', graph, '--weight-spec', 'unit,mass']) == EXIT_ERROR

    def test_weights_and_spec_are_exclusive(self, tmp_path):
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES)
        assert main(['partition', '--graph', graph, '--weights', 'w.tsv', '--weight-spec', 'unit']) == EXIT_ERROR

    def test_thread_count_does_not_change_output(self, tmp_path):
        graph = random_edge_list(tmp_path / 'g.txt')
        outputs = []
        for threads in ('1', '4'):
            out, trace = tmp_path / f'p{threads}.tsv', tmp_path / f't{threads}.csv'
            code = main(['partition', '--graph', graph, '--k', '4', '--iters', '30', '--seed', '3',
                         '--threads', threads, '--out', str(out), '--trace', str(trace)])
            assert code == EXIT_OK
            outputs.append((out.read_bytes(), trace.read_bytes()))
        assert outputs[0] == outputs[1]

    def test_trace_then_plot(self, tmp_path):
        graph = random_edge_list(tmp_path / 'g.txt')
        trace, image = tmp_path / 't.csv', tmp_path / 't.png'
        assert main(['partition', '--graph', graph, '--iters', '20', '--out', str(tmp_path / 'p.tsv'),
                     '--trace', str(trace)]) == EXIT_OK
        assert trace.read_text().splitlines()[0].startswith('iter,objective,step_len,max_imbalance')
        assert main(['plot', '--trace', str(trace), '--out', str(image)]) == EXIT_OK
        assert image.stat().st_size > 0

    def test_drop_isolated(self, tmp_path):
        # Vertex 9 appears only in a self-loop, which is dropped on load
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES + "9 9\n")
        out = tmp_path / 'p.tsv'
        code = main(['partition', '--graph', graph, '--epsilon', '0', '--seed', '7',
                     '--drop-isolated', '--out', str(out)])
        assert code == EXIT_OK
        assert load_partition(out, load_edge_list(graph)).n == 7


class TestMetricsCommand:

    def test_single_part(self, tmp_path, capsys):
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES)
        part = write(tmp_path / 'p.tsv', ''.join(f"{v} 0\n" for v in range(6)))
        assert main(['metrics', '--graph', graph, '--partition', part]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report['locality'] == 1.0
        assert report['k'] == 1
        assert report['algorithm'] == 'file'

    def test_part_out_of_range(self, tmp_path):
        graph = write(tmp_path / 'g.txt', TWO_TRIANGLES)
        part = write(tmp_path / 'p.tsv', "# k=2\n0 0\n1 0\n2 0\n3 1\n4 1\n5 5\n")
        assert main(['metrics', '--graph', graph, '--partition', part]) == EXIT_ERROR

    def test_reproduces_partition_report(self, tmp_path, capsys):
        graph = random_edge_list(tmp_path / 'g.txt')
        out = tmp_path / 'p.tsv'
        assert main(['partition', '--graph', graph, '--k', '3', '--iters', '30', '--out', str(out)]) == EXIT_OK
        partition_report = json.loads(capsys.readouterr().out)
        report_path = tmp_path / 'metrics.json'
        assert main(['metrics', '--graph', graph, '--partition', str(out), '--out', str(report_path)]) == EXIT_OK
        assert json.loads(report_path.read_text()) == partition_report


class TestWeightsCommand:

    def weights_rows(self, path):
        lines = path.read_text().splitlines()
        return lines[0], [[float(v) for v in line.split('\t')[1:]] for line in lines[1:]]

    def test_unit(self, tmp_path):
        graph = write(tmp_path / 'g.txt', "0 1\n1 2\n")
        out = tmp_path / 'w.tsv'
        assert main(['weights', '--graph', graph, '--spec', 'unit', '--out', str(out)]) == EXIT_OK
        header, rows = self.weights_rows(out)
        assert header == '# external_id unit'
        assert rows == [[1.0], [1.0], [1.0]]

    def test_degree_on_path(self, tmp_path):
        graph = write(tmp_path / 'g.txt', "0 1\n1 2\n")
        out = tmp_path / 'w.tsv'
        assert main(['weights', '--graph', graph, '--spec', 'degree', '--out', str(out)]) == EXIT_OK
        assert self.weights_rows(out)[1] == [[1.0], [2.0], [1.0]]

    def test_pagerank_on_cycle(self, tmp_path):
        graph = write(tmp_path / 'g.txt', "0 1\n1 2\n2 3\n3 0\n")
        out = tmp_path / 'w.tsv'
        assert main(['weights', '--graph', graph, '--spec', 'pagerank', '--out', str(out)]) == EXIT_OK
        header, rows = self.weights_rows(out)
        assert header == '# external_id pagerank:0.85:30'
        assert [row[0] for row in rows] == pytest.approx([0.25] * 4, abs=1e-12)

    def test_degree_needs_edges(self, tmp_path):
        graph = write(tmp_path / 'g.txt', "0 1\n2 2\n")
        assert main(['weights', '--graph', graph, '--spec', 'degree']) == EXIT_ERROR


class TestHashCommand:

    def test_writes_partition(self, tmp_path, capsys):
        graph = random_edge_list(tmp_path / 'g.txt')
        out = tmp_path / 'h.tsv'
        assert main(['hash', '--graph', graph, '--k', '3', '--seed', '5', '--out', str(out)]) == EXIT_OK
        assert out.read_text().splitlines()[0] == '# k=3 algorithm=hash seed=5'
        assert json.loads(capsys.readouterr().out)['algorithm'] == 'hash'
