"""Deterministic JSON serialization and JSONL helpers.

Output bytes must be stable across runs and worker counts, so keys are
emitted sorted, floats are formatted at 9 significant digits, and infinite
values become explicit "inf"/"-inf" strings (never a fake large number).
"""

from __future__ import annotations

import json
import math

from .errors import InputFormatError


def _format_float(value: float) -> str:
    if math.isnan(value):
        raise ValueError("NaN is not serializable")
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    return format(value, ".9g")


def dumps_canonical(obj, pretty: bool = False) -> str:
    """Serialize with sorted keys and fixed float formatting."""

    def emit(node, depth: int) -> str:
        pad = "  " * (depth + 1) if pretty else ""
        close_pad = "  " * depth if pretty else ""
        joiner = ",\n" if pretty else ", "
        if node is None:
            return "null"
        if isinstance(node, bool):
            return "true" if node else "false"
        if isinstance(node, int):
            return str(node)
        if isinstance(node, float):
            return _format_float(node)
        if isinstance(node, str):
            return json.dumps(node)
        if isinstance(node, dict):
            if not node:
                return "{}"
            items = []
            for key in sorted(node):
                if not isinstance(key, str):
                    raise ValueError(f"non-string key {key!r}")
                items.append(f"{pad}{json.dumps(key)}: {emit(node[key], depth + 1)}")
            body = joiner.join(items)
            return "{\n" + body + "\n" + close_pad + "}" if pretty else "{" + body + "}"
        if isinstance(node, (list, tuple)):
            if not len(node):
                return "[]"
            items = [f"{pad}{emit(v, depth + 1)}" for v in node]
            body = joiner.join(items)
            return "[\n" + body + "\n" + close_pad + "]" if pretty else "[" + body + "]"
        if hasattr(node, "item") and not hasattr(node, "__len__"):
            return emit(node.item(), depth)  # numpy scalars
        if hasattr(node, "tolist"):
            return emit(node.tolist(), depth)  # numpy arrays
        raise ValueError(f"cannot serialize {type(node).__name__}")

    return emit(obj, 0)


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_canonical(obj, pretty=True))
        handle.write("\n")


def write_jsonl(path, rows) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(dumps_canonical(row))
            handle.write("\n")


def read_jsonl(path) -> list[dict]:
    rows: list[dict] = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rows.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise InputFormatError(
                        f"{path}:{line_no}: invalid JSON: {exc}"
                    ) from exc
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    return rows
