"""
Machine-readable reports. Column order and key names are fixed by the row
models, floats use the shortest round-trip representation, and the resolved
run config is embedded, so identical inputs give byte-identical files.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from pydantic import BaseModel

SCHEMA_VERSION = 1


def as_row(model: BaseModel, exclude: Optional[set[str]] = None) -> dict[str, Any]:
    return model.model_dump(mode="json", exclude=exclude)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render_csv(rows: Sequence[Mapping[str, Any]], config: Mapping[str, Any]) -> str:
    """One header row; rows lead with `schema_version` and repeat the config as `config.*` columns."""
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    config_columns = [f"config.{key}" for key in config]

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["schema_version"] + columns + config_columns)
    config_cells = [_csv_cell(value) for value in config.values()]
    for row in rows:
        writer.writerow([str(SCHEMA_VERSION)] + [_csv_cell(row.get(key)) for key in columns] + config_cells)
    return buffer.getvalue()


def render_json(
    command: str,
    rows: Sequence[Mapping[str, Any]],
    config: Mapping[str, Any],
    summary: Optional[Mapping[str, Any]] = None,
) -> str:
    document = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": dict(config),
        "summary": dict(summary or {}),
        "rows": [dict(row) for row in rows],
    }
    return json.dumps(document, indent=2) + "\n"


def render(
    command: str,
    rows: Sequence[Mapping[str, Any]],
    config: Mapping[str, Any],
    fmt: str,
    summary: Optional[Mapping[str, Any]] = None,
) -> str:
    if fmt == "csv":
        return render_csv(rows, config)
    if fmt == "json":
        return render_json(command, rows, config, summary)
    raise ValueError(f"unknown output format '{fmt}' (expected csv or json)")


def write_report(text: str, path: Optional[str | Path]) -> None:
    """Write to `path`, or to stdout when no path is given."""
    if path is None:
        print(text, end="")
        return
    Path(path).write_text(text, encoding="utf-8")
