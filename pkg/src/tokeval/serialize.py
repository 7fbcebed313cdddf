"""Deterministic text rendering: sorted keys, 6-decimal ratios, raw integers."""

from __future__ import annotations

import json


def format_float(value: float) -> str:
    return f"{value:.6f}"


def json_text(value, indent: int = 2) -> str:
    """Render JSON with sorted object keys and fixed 6-place floats.

    The stdlib encoder prints shortest-repr floats, which is not stable
    enough for golden files, so this walks the structure itself.
    """
    out: list[str] = []
    _write(value, out, 0, indent)
    out.append("\n")
    return "".join(out)


def _write(value, out: list[str], level: int, indent: int) -> None:
    pad = " " * (indent * (level + 1))
    closing_pad = " " * (indent * level)
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(value)
        for i, key in enumerate(keys):
            out.append(pad)
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(": ")
            _write(value[key], out, level + 1, indent)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(closing_pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad)
            _write(item, out, level + 1, indent)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(closing_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
