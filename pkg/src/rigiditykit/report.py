"""Serialisation of command reports to JSON, CSV and plain text.

Exact rationals are written as ``"p/q"`` strings, floats with 17 significant
digits.  Output is a pure function of the report, so identical runs produce
identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .spectral import MPQ

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str
    payload: dict
    columns: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)


def _float17(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def plain(x):
    """Recursively convert scalars to JSON-friendly values (exact -> str)."""
    if isinstance(x, MPQ):
        return str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return x


def _json(obj, level: int = 0) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, float):
        return _float17(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_json(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_json(v, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _json(v, level + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def _cell(x) -> str:
    x = plain(x)
    if isinstance(x, float):
        return _float17(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, list):
        sep = "; " if any(isinstance(v, dict) for v in x) else " "
        return sep.join(_cell(v) for v in x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}={_cell(v)}" for k, v in x.items()) + "}"
    return str(x)


def to_json(report: Report) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": report.command}
    doc.update(plain(report.payload))
    if report.columns:
        doc["rows"] = [dict(zip(report.columns, plain(row))) for row in report.rows]
    return _json(doc) + "\n"


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=",", lineterminator="\n")
    if report.columns:
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_cell(v) for v in row])
    else:
        writer.writerow(["key", "value"])
        for key, value in _flatten(report.payload):
            writer.writerow([key, _cell(value)])
    return buf.getvalue()


def _flatten(payload: dict, prefix: str = ""):
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        else:
            yield name, value


def to_text(report: Report) -> str:
    lines = [f"command: {report.command}"]
    lines += [f"{key}: {_cell(value)}" for key, value in _flatten(report.payload)]
    if report.columns:
        table = [report.columns] + [[_cell(v) for v in row] for row in report.rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(report.columns))]
        lines.append("")
        lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


RENDERERS = {"json": to_json, "csv": to_csv, "text": to_text}


def render(report: Report, fmt: str) -> str:
    return RENDERERS[fmt](report)
