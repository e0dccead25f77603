"""
Base exporter: shared output handling for text exporters.
"""

import io
import os
import sys
from abc import ABC, abstractmethod
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, TextIO, Union

Target = Union[str, Path, io.TextIOBase, None]


class BaseExporter(ABC):
    """Base class for all exporters."""

    @abstractmethod
    def export(self, payload, output: Target = None, **kwargs) -> str:
        """
        Write `payload` to `output`.

        Args:
            payload: Object to export
            output: File path, text stream, or None / '-' for stdout
            **kwargs: Format options

        Returns:
            Name of the written target
        """
        pass

    @staticmethod
    def target_name(output: Target) -> str:
        if output is None or output == '-':
            return '<stdout>'
        if isinstance(output, (str, Path)):
            return str(output)
        return getattr(output, 'name', '<stream>')

    @staticmethod
    @contextmanager
    def open_output(output: Target) -> Iterator[TextIO]:
        """Yield a text handle for `output`, creating parent directories."""
        if output is None or output == '-':
            yield sys.stdout
            return
        if isinstance(output, (str, Path)):
            path = str(output)
            os.makedirs(os.path.dirname(path) if os.path.dirname(path) else '.', exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='') as handle:
                yield handle
            return
        yield output


def header_line(fields: dict) -> str:
    """'# key=value ...' comment line, skipping None values."""
    return '# ' + ' '.join(f"{key}={value}" for key, value in fields.items() if value is not None) + '\n'


def resolve_float_format(float_format: Optional[str], default: str) -> str:
    return float_format or default
