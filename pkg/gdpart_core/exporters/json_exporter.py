"""
JSON exporter for metrics reports and partition summaries.
"""

import json
from typing import Any, Mapping

from gdpart_core.exporters.base_exporter import BaseExporter, Target


class JSONExporter(BaseExporter):
    """Export a plain mapping as indented JSON."""

    def export(self, payload: Mapping[str, Any], output: Target = None, **kwargs) -> str:
        with self.open_output(output) as handle:
            json.dump(payload, handle, indent=kwargs.get('indent', 2), ensure_ascii=False)
            handle.write('\n')
        return self.target_name(output)


def save_json(payload: Mapping[str, Any], output: Target = None) -> str:
    return JSONExporter().export(payload, output)
