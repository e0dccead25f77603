"""
Base importer class with common functionality.
"""

import io
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

import pandas as pd

logger = logging.getLogger(__name__)

Source = Union[str, Path, io.TextIOBase]


@dataclass
class ImportResult:
    """Counters of an import operation."""
    records_read: int = 0
    self_loops: int = 0
    duplicates: int = 0


class BaseImporter(ABC):
    """
    Base class for whitespace-separated text importers.

    Lines starting with '#' are comments; blank lines are skipped.
    """

    def __init__(self):
        self.result = ImportResult()
        self.source_name = '<input>'
        self.text = ''

    def load(self, source: Source):
        """Read `source` (path or text stream) and import it."""
        self.text = self.read_source(source)
        return self.import_text(self.text)

    @abstractmethod
    def import_text(self, text: str):
        pass

    def read_source(self, source: Source) -> str:
        if isinstance(source, (str, Path)):
            self.source_name = str(source)
            return Path(source).read_text()
        self.source_name = getattr(source, 'name', '<input>')
        return source.read()

    def read_table(self, text: str) -> pd.DataFrame:
        """
        Token table of the data lines (strings, NaN where a row is short).

        The C parser handles the common rectangular case; ragged files go
        through a line scan.
        """
        if not text.strip():
            return pd.DataFrame()
        try:
            table = pd.read_csv(
                io.StringIO(text), sep=r'\s+', comment='#', header=None,
                dtype=str, skip_blank_lines=True,
            )
        except pd.errors.EmptyDataError:
            return pd.DataFrame()
        except pd.errors.ParserError:
            rows = [line.split() for line in text.splitlines() if self._is_data(line)]
            width = max(len(r) for r in rows)
            table = pd.DataFrame([r + [None] * (width - len(r)) for r in rows])
        table.columns = range(table.shape[1])
        self.result.records_read = int(table.shape[0])
        return table

    @staticmethod
    def _is_data(line: str) -> bool:
        stripped = line.strip()
        return bool(stripped) and not stripped.startswith('#')

    def line_number(self, row: int) -> int:
        """1-based line number of data row `row`."""
        seen = -1
        for number, line in enumerate(self.text.splitlines(), start=1):
            if self._is_data(line):
                seen += 1
                if seen == row:
                    return number
        return -1

    def header_tokens(self) -> List[str]:
        """Tokens of the first line when it is a '#' comment, else []."""
        for line in self.text.splitlines():
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith('#'):
                return stripped.lstrip('#').split()
            return []
        return []
