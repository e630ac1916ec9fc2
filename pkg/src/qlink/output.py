"""Byte-stable CSV and JSON serialization of results."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence

SCHEMA_VERSION = "1"


def format_value(value: Any) -> str:
    """Shortest round-trip text for a CSV cell; ``None`` becomes an empty cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def to_csv(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def jsonable(value: Any) -> Any:
    """Replace non-finite floats by strings so the document is strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return format_value(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def result_record(command: str, inputs: dict, outputs: Any, provenance: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "provenance": provenance,
    }


def to_json(record: dict) -> str:
    return json.dumps(jsonable(record), indent=2, allow_nan=False) + "\n"
