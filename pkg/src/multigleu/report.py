"""Deterministic report serialization.

Reports are nested dicts with a fixed key order; scores are rendered with
exactly six decimal places in both formats, so identical inputs and flags
produce byte-identical output.
"""

from __future__ import annotations

import json
from typing import Any

FORMATS = ("json", "tsv")


def format_score(x: float) -> str:
    return f"{x:.6f}"


def _dump_json(value: Any, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(value.items()):
            out.append(f'{pad}  {json.dumps(str(k), ensure_ascii=False)}: ')
            _dump_json(v, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(value):
            out.append(pad + "  ")
            _dump_json(v, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_score(value))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def emit_json(report: dict) -> bytes:
    out: list[str] = []
    _dump_json(report, out, 0)
    out.append("\n")
    return "".join(out).encode("utf-8")


def _tsv_cell(value: Any) -> str:
    if isinstance(value, float):
        return format_score(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_tsv_cell(v) for v in value)
    return str(value)


def emit_tsv(header: list[str], rows: list[list[Any]]) -> bytes:
    lines = ["\t".join(header)]
    lines.extend("\t".join(_tsv_cell(cell) for cell in row) for row in rows)
    return ("\n".join(lines) + "\n").encode("utf-8")
