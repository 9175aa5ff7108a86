"""Machine-readable report rendering: canonical JSON and flat CSV.

Reports are replayable: every float is printed with 17 significant digits,
which round-trips IEEE doubles exactly. The standard json encoder hardcodes
float repr, so the small renderer here walks the document itself and leans
on json.dumps only for string escaping.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources


def format_float(value: float) -> str:
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite value {value!r} cannot appear in a report")
    return format(value, ".17g")


def render_json(obj, indent: int = 2) -> str:
    """Serialize dicts/lists/scalars to JSON text with 17-digit floats."""
    return "".join(_render(obj, indent, 0))


def _render(obj, indent: int, level: int):
    pad = " " * (indent * (level + 1))
    closing = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{\n"
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"report keys must be strings, got {key!r}")
            yield pad + json.dumps(key) + ": "
            yield from _render(value, indent, level + 1)
            yield ",\n" if i < len(obj) - 1 else "\n"
        yield closing + "}"
    elif isinstance(obj, (list, tuple)):
        if not len(obj):
            yield "[]"
            return
        if all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
            # Index tuples read better on one line.
            yield "[" + ", ".join(str(x) for x in obj) + "]"
            return
        yield "[\n"
        for i, value in enumerate(obj):
            yield pad
            yield from _render(value, indent, level + 1)
            yield ",\n" if i < len(obj) - 1 else "\n"
        yield closing + "]"
    elif isinstance(obj, bool):
        yield "true" if obj else "false"
    elif isinstance(obj, float):
        yield format_float(obj)
    elif isinstance(obj, int):
        yield str(obj)
    elif isinstance(obj, str):
        yield json.dumps(obj)
    elif obj is None:
        yield "null"
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def flatten_report(record: dict) -> tuple[list[str], list[str]]:
    """Flatten a nested analysis record into CSV header and row."""
    header: list[str] = []
    row: list[str] = []

    def push(key: str, value):
        header.append(key)
        if isinstance(value, bool):
            row.append("true" if value else "false")
        elif isinstance(value, float):
            row.append(format_float(value))
        else:
            row.append(str(value))

    for key, value in record.items():
        if key == "verdicts":
            for name, verdict in value.items():
                push(f"verdict_{name}", verdict)
        elif key == "spectrum":
            for i, lam in enumerate(value):
                push(f"spectrum_{i:02d}", lam)
        elif key == "timings":
            for name, ms in value.items():
                push(name, ms)
        else:
            push(key, value)
    return header, row


def render_csv(record: dict) -> str:
    header, row = flatten_report(record)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerow(row)
    return buffer.getvalue()


def load_report_schema() -> dict:
    """The JSON schema all analysis reports conform to, shipped with the package."""
    text = resources.files("fermisep").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)
