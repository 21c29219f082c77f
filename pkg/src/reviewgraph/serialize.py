"""Canonical JSON: sorted keys, floats fixed to 9 decimal places.

Reports are meant to be byte-identical across runs with the same inputs
and seed, so floats are emitted at a fixed precision instead of the
shortest round-trip representation.
"""

from __future__ import annotations

import json
import math
from typing import Any


def dumps_canonical(obj: Any, indent: int = 2) -> str:
    """Serialize to deterministic JSON text (trailing newline included)."""
    return _render(obj, indent, 0) + "\n"


def dump_canonical(obj: Any, path, indent: int = 2) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_canonical(obj, indent))


def _render(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, int)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float {obj!r} in report")
        return f"{obj:.9f}"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [_render(item, indent, level + 1) for item in obj]
        return "[\n" + ",\n".join(pad + item for item in items) + "\n" + close_pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            parts.append(f"{pad}{json.dumps(key, ensure_ascii=False)}: "
                         f"{_render(obj[key], indent, level + 1)}")
        return "{\n" + ",\n".join(parts) + "\n" + close_pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__} to canonical JSON")
