"""
gdpart command-line entry point.

Commands:
    partition  GD partition of an edge list into k balanced parts
    metrics    recompute locality, cut and imbalance of a partition file
    weights    write a weights TSV from a weight spec
    hash       hash-baseline partition
    plot       render a trace CSV

Exit status: 0 success, 1 input/validation error, 2 infeasible instance.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from pydantic import ValidationError as OptionsError

from gdpart_cli.config import get_settings
from gdpart_cli.schemas import HashOptions, MetricsReport, PartitionOptions
from gdpart_core.errors import GDPartError, InfeasibleError, InfeasiblePartitionError
from gdpart_core.exporters import plot_trace, save_json, save_partition, save_trace, save_weights
from gdpart_core.graph import Graph, induced_subgraph
from gdpart_core.importers import load_edge_list, load_partition, load_weights
from gdpart_core.metrics import summarize
from gdpart_core.partition import Partition, Provenance
from gdpart_core.partitioner import RecursivePartitioner, hash_partition
from gdpart_core.solver import DEFAULT_GD_CONFIG
from gdpart_core.solver.state import IterationTrace
from gdpart_core.validator import PartitionFeasibilityValidator
from gdpart_core.weights import WeightSet, build_weight_set

logger = logging.getLogger('gdpart_cli')

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

PROJECTION_CHOICES = ['exact', 'alternating', 'alternating-one-shot', 'dykstra', 'nested']


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# ==================== SHARED PLUMBING ====================

@dataclass
class Workspace:
    """Loaded graph, the vertices taking part in balancing, and their weights."""
    graph: Graph
    core: Graph
    mapping: np.ndarray
    isolated: np.ndarray
    weights: Optional[WeightSet] = None

    def restrict(self, p: Partition) -> Partition:
        return Partition(p.k, p.assignment[self.mapping], p.provenance)

    def expand(self, p: Partition) -> Partition:
        """Lift a core partition to the whole graph; isolated vertices go round-robin."""
        assignment = np.zeros(self.graph.n, dtype=np.int64)
        assignment[self.mapping] = p.assignment
        assignment[self.isolated] = np.arange(self.isolated.size) % p.k
        return Partition(p.k, assignment, p.provenance)


def _load_workspace(graph_path, drop_isolated: bool) -> Workspace:
    graph = load_edge_list(graph_path)
    if not drop_isolated:
        return Workspace(graph, graph, np.arange(graph.n), np.empty(0, dtype=np.int64))
    isolated = graph.isolated_vertices()
    keep = np.setdiff1d(np.arange(graph.n), isolated)
    core, mapping = induced_subgraph(graph, keep)
    logger.info(f"Dropped {isolated.size} isolated vertices, {core.n} remain")
    return Workspace(graph, core, mapping, isolated)


def _attach_weights(ws: Workspace, weights_path, weight_spec: str) -> Workspace:
    if weights_path:
        ws.weights = load_weights(weights_path, ws.graph).restrict(ws.mapping)
    else:
        ws.weights = build_weight_set(ws.core, weight_spec)
    return ws


def _emit_report(report: MetricsReport, to_stderr: bool):
    stream = sys.stderr if to_stderr else sys.stdout
    stream.write(report.model_dump_json(indent=2) + '\n')
    stream.flush()


def _writes_stdout(out: Optional[str]) -> bool:
    return out is None or out == '-'


# ==================== COMMANDS ====================

def cmd_partition(args) -> int:
    settings = get_settings()
    options = PartitionOptions(
        graph=args.graph,
        k=args.k,
        epsilon=args.epsilon,
        weights=args.weights,
        weight_spec=args.weight_spec or settings.default_weight_spec,
        iters=args.iters,
        projection=args.projection,
        seed=args.seed,
        out=args.out,
        trace=args.trace,
        round_trials=args.round_trials or settings.default_round_trials,
        drop_isolated=args.drop_isolated,
        threads=args.threads or settings.default_threads,
    )

    ws = _attach_weights(_load_workspace(options.graph, options.drop_isolated), options.weights, options.weight_spec)
    PartitionFeasibilityValidator(ws.weights, options.k, options.epsilon).validate_or_raise()

    config = DEFAULT_GD_CONFIG.with_overrides(
        iterations=options.iters,
        epsilon=options.epsilon,
        projection=options.projection,
        seed=options.seed,
        round_trials=options.round_trials,
        max_workers=options.threads,
    )
    partitioner = RecursivePartitioner(ws.core, ws.weights, options.k, config)
    core_partition = partitioner.run()

    save_partition(ws.expand(core_partition), ws.graph, options.out)
    if options.trace:
        save_trace(partitioner.report.traces.get('root', IterationTrace(labels=list(ws.weights.labels))), options.trace)

    report = MetricsReport.from_summary(
        summarize(ws.core, ws.weights, core_partition), algorithm='gd', seed=options.seed,
    )
    _emit_report(report, to_stderr=_writes_stdout(options.out))
    return EXIT_OK


def cmd_metrics(args) -> int:
    settings = get_settings()
    ws = _load_workspace(args.graph, args.drop_isolated)
    partition = load_partition(args.partition, ws.graph)
    _attach_weights(ws, args.weights, args.weight_spec or settings.default_weight_spec)

    provenance = partition.provenance
    report = MetricsReport.from_summary(
        summarize(ws.core, ws.weights, ws.restrict(partition)),
        algorithm=provenance.algorithm, seed=provenance.seed,
    )
    if args.out:
        save_json(report.model_dump(), args.out)
    else:
        _emit_report(report, to_stderr=False)
    return EXIT_OK


def cmd_weights(args) -> int:
    settings = get_settings()
    ws = _load_workspace(args.graph, args.drop_isolated)
    weights = build_weight_set(ws.core, args.spec or settings.default_weight_spec)
    save_weights(weights, ws.core, args.out, float_format=settings.float_format)
    return EXIT_OK


def cmd_hash(args) -> int:
    settings = get_settings()
    options = HashOptions(graph=args.graph, k=args.k, seed=args.seed, out=args.out)
    ws = _load_workspace(options.graph, args.drop_isolated)
    _attach_weights(ws, args.weights, args.weight_spec or settings.default_weight_spec)

    partition = hash_partition(ws.graph, options.k, options.seed)
    save_partition(partition, ws.graph, options.out)

    report = MetricsReport.from_summary(
        summarize(ws.core, ws.weights, ws.restrict(partition)), algorithm='hash', seed=options.seed,
    )
    _emit_report(report, to_stderr=_writes_stdout(options.out))
    return EXIT_OK


def cmd_plot(args) -> int:
    plot_trace(args.trace, args.out, title=args.title)
    return EXIT_OK


# ==================== PARSER ====================

def _add_weight_source(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--weights', help='Weights TSV ("external_id w1 ... wd")')
    group.add_argument('--weight-spec', help='Comma-separated tokens from unit, degree, nbrdeg, pagerank[:damping[:iters]]')


def build_parser() -> argparse.ArgumentParser:
    parser = UsageParser(prog='gdpart', description='Multi-dimensional balanced graph partitioning')
    parser.add_argument('--log-level', help='Logging level (default from GDPART_LOG_LEVEL)')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('partition', help='Partition a graph by projected gradient descent')
    p.add_argument('--graph', required=True, help='Edge list ("u v" per line)')
    p.add_argument('--k', type=int, default=2)
    p.add_argument('--epsilon', type=float, default=0.05)
    _add_weight_source(p)
    p.add_argument('--iters', type=int, default=100)
    p.add_argument('--projection', choices=PROJECTION_CHOICES, default='alternating-one-shot')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--out', help='Partition TSV (default stdout)')
    p.add_argument('--trace', help='Trace CSV of the top-level bisection')
    p.add_argument('--round-trials', type=int, default=None, help='Roundings per bisection (default 8)')
    p.add_argument('--threads', type=int, default=None, help='Worker threads for sibling subproblems')
    p.add_argument('--drop-isolated', action='store_true', help='Exclude isolated vertices from balancing')
    p.set_defaults(handler=cmd_partition)

    m = commands.add_parser('metrics', help='Evaluate a partition file')
    m.add_argument('--graph', required=True)
    m.add_argument('--partition', required=True)
    _add_weight_source(m)
    m.add_argument('--out', help='Write the JSON report here instead of stdout')
    m.add_argument('--drop-isolated', action='store_true')
    m.set_defaults(handler=cmd_metrics)

    w = commands.add_parser('weights', help='Write a weights TSV')
    w.add_argument('--graph', required=True)
    w.add_argument('--spec', help='Weight spec (default "unit,degree")')
    w.add_argument('--out', help='Weights TSV (default stdout)')
    w.add_argument('--drop-isolated', action='store_true')
    w.set_defaults(handler=cmd_weights)

    h = commands.add_parser('hash', help='Hash-baseline partition')
    h.add_argument('--graph', required=True)
    h.add_argument('--k', type=int, default=2)
    h.add_argument('--seed', type=int, default=0)
    _add_weight_source(h)
    h.add_argument('--out', help='Partition TSV (default stdout)')
    h.add_argument('--drop-isolated', action='store_true')
    h.set_defaults(handler=cmd_hash)

    t = commands.add_parser('plot', help='Plot a trace CSV')
    t.add_argument('--trace', required=True)
    t.add_argument('--out', required=True, help='Image path (format from suffix)')
    t.add_argument('--title', default=None)
    t.set_defaults(handler=cmd_plot)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    try:
        settings = get_settings()
        logging.basicConfig(
            level=(args.log_level or settings.log_level).upper(),
            stream=sys.stderr,
            format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        )
        return args.handler(args)
    except InfeasibleError as e:
        print(f"gdpart: infeasible: {e}", file=sys.stderr)
        if isinstance(e, InfeasiblePartitionError) and e.report is not None:
            print(json.dumps(e.report.to_dict(), indent=2), file=sys.stderr)
        return EXIT_INFEASIBLE
    except (GDPartError, OSError, ValueError, OptionsError) as e:
        print(f"gdpart: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
