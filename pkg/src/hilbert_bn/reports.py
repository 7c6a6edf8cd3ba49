"""Serialization of reports to JSON, CSV and plain tables.

Every value is reduced to integers, booleans, strings, lists and dicts before
it is written, so output is stable byte for byte across runs.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from collections.abc import Mapping, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from .degloci import RankCensus

CENSUS_COLUMNS = ("q", "e", "R", "a", "count")


def to_jsonable(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Mapping):
        return {_key(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=json.dumps) if isinstance(value, (set, frozenset)) else items
    return str(value)


def _key(key: Any) -> str:
    if isinstance(key, tuple):
        return ":".join(_key(part) for part in key)
    return str(key)


def _cell(value: Any) -> str:
    value = to_jsonable(value)
    if isinstance(value, list):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


def render_json(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False)


def render_csv(rows: Sequence[Mapping[str, Any]], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or (rows[0].keys() if rows else []))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_table(rows: Sequence[Mapping[str, Any]], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or (rows[0].keys() if rows else []))
    cells = [[_cell(row.get(column)) for column in columns] for row in rows]
    widths = [
        max([len(column), *(len(line[i]) for line in cells)]) for i, column in enumerate(columns)
    ]
    lines = ["  ".join(column.ljust(w) for column, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in cells)
    return "\n".join(lines)


def flatten_report(report: Any) -> dict[str, Any]:
    """One row per report for CSV and tables: query fields first, then the verdict."""

    data = to_jsonable(report)
    row = dict(data.get("query", {}))
    for key in ("nonempty", "dim", "tight", "witness"):
        if key in data:
            row[key] = data[key]
    return row


def render(payload: Any, fmt: str, columns: Sequence[str] | None = None) -> str:
    """Render a report, a list of reports or a list of plain rows."""

    if fmt == "json":
        return render_json(payload)
    records = payload if isinstance(payload, list) else [payload]
    rows = [
        flatten_report(r) if hasattr(r, "to_json") else to_jsonable(r) for r in records
    ]
    if fmt == "csv":
        return render_csv(rows, columns)
    return render_table(rows, columns)


def census_csv(result: RankCensus) -> str:
    return render_csv(result.rows(), CENSUS_COLUMNS)


def write_export(path: str | Path, text: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    return target
