"""
Plot exporter: trace curves (objective, step length, max imbalance) per iteration.
"""

import logging
import os
from pathlib import Path
from typing import Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import pandas as pd

from gdpart_core.exporters.base_exporter import BaseExporter
from gdpart_core.solver.state import IterationTrace, TRACE_COLUMNS

logger = logging.getLogger(__name__)

PANELS = [
    ('objective', 'Objective f(x)'),
    ('step_len', 'Step length'),
    ('max_imbalance', 'Max imbalance'),
]


def load_trace_csv(path: Union[str, Path]) -> pd.DataFrame:
    df = pd.read_csv(path)
    missing = [c for c in TRACE_COLUMNS[:5] if c not in df.columns]
    if missing:
        raise ValueError(f"{path}: trace is missing columns {missing}")
    return df


class PlotExporter(BaseExporter):
    """Render a trace as a three-panel PNG (or any format matplotlib infers from the suffix)."""

    def export(self, payload, output=None, **kwargs) -> str:
        if output is None or output == '-':
            raise ValueError("plot output needs a file path")
        if isinstance(payload, IterationTrace):
            df = payload.to_dataframe()
        elif isinstance(payload, pd.DataFrame):
            df = payload
        else:
            df = load_trace_csv(payload)
        if df.empty:
            raise ValueError("trace has no iterations")

        path = str(output)
        os.makedirs(os.path.dirname(path) if os.path.dirname(path) else '.', exist_ok=True)

        fig, axes = plt.subplots(len(PANELS), 1, figsize=(8, 9), sharex=True)
        for ax, (column, title) in zip(axes, PANELS):
            ax.plot(df['iter'], df[column], linewidth=1.5)
            ax.set_ylabel(title)
            ax.grid(True, alpha=0.3)
        axes[-1].set_xlabel('Iteration')
        fig.suptitle(kwargs.get('title', 'Gradient descent trace'))
        fig.tight_layout()
        fig.savefig(path, dpi=kwargs.get('dpi', 120))
        plt.close(fig)

        logger.info(f"Trace plot written to {path}")
        return path


def plot_trace(trace, output, title: str = None) -> str:
    """Plot an IterationTrace, DataFrame or trace CSV path to `output`."""
    return PlotExporter().export(trace, output, title=title or 'Gradient descent trace')
