"""Deterministic JSON emission with 17-significant-digit numbers.

The stdlib encoder prints floats with repr (shortest round trip); regression
fixtures instead pin every float to 17 significant digits, which is also a
lossless double round trip and byte-stable across platforms.
"""

from __future__ import annotations

import json
import math

SCHEMA_VERSION = 1


def format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite float {value}")
    if value == int(value) and abs(value) < 1e16:
        # Keep integral floats readable and unambiguous as JSON numbers.
        return f"{value:.1f}"
    return format(value, ".17g")


def dumps(obj, indent: int = 0) -> str:
    out: list[str] = []
    _emit(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _emit(obj, out: list[str], indent: int, depth: int) -> None:
    pad = " " * (indent * (depth + 1)) if indent else ""
    close_pad = " " * (indent * depth) if indent else ""
    nl = "\n" if indent else ""
    sep = "," + nl
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[" + nl)
        for i, item in enumerate(obj):
            out.append(pad)
            _emit(item, out, indent, depth + 1)
            if i + 1 < len(obj):
                out.append(sep)
        out.append(nl + close_pad + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{" + nl)
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.append(pad + json.dumps(key) + ": ")
            _emit(value, out, indent, depth + 1)
            if i + 1 < len(items):
                out.append(sep)
        out.append(nl + close_pad + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
