"""Deterministic JSON emission with round-trip-exact floats.

Floats are printed with up to 17 significant digits (%.17g), which is
lossless for IEEE doubles, so identical inputs always serialize to
identical bytes.  Non-finite floats are rejected: no public value in
this package is allowed to be NaN or infinite.
"""

from __future__ import annotations

import json
import math


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite float in JSON output")
    return format(x, ".17g")


def _emit(obj, parts: list, indent: int, level: int) -> None:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None or isinstance(obj, bool):
        parts.append(json.dumps(obj))
    elif isinstance(obj, float):
        parts.append(_format_float(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            parts.append(pad_in + json.dumps(key) + ": ")
            _emit(val, parts, indent, level + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            parts.append("[]")
            return
        parts.append("[\n")
        for i, val in enumerate(seq):
            parts.append(pad_in)
            _emit(val, parts, indent, level + 1)
            parts.append(",\n" if i < len(seq) - 1 else "\n")
        parts.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    parts: list = []
    _emit(obj, parts, indent, 0)
    return "".join(parts) + "\n"
