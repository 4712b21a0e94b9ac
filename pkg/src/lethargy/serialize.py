"""Deterministic text serialization: 17-significant-digit decimals, LF only.

Floats are written with %.17g everywhere (CSV and JSON), which round-trips
binary64 losslessly; identical inputs therefore produce byte-identical
artifacts.
"""

import json


def fmt(value) -> str:
    """Render a cell: float via %.17g, bool lowercase, None empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def csv_text(header, rows) -> str:
    """CSV with a header row and LF line endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def json_text(obj) -> str:
    """JSON with floats rendered at 17 significant digits."""
    return _encode(obj, 0) + "\n"


def _encode(obj, depth) -> str:
    pad = "  " * (depth + 1)
    close = "  " * depth
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (
            f"{pad}{json.dumps(str(k))}: {_encode(v, depth + 1)}" for k, v in obj.items()
        )
        return "{\n" + ",\n".join(items) + f"\n{close}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = (f"{pad}{_encode(v, depth + 1)}" for v in obj)
        return "[\n" + ",\n".join(items) + f"\n{close}]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, int):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format(obj, ".17g")
    return json.dumps(obj)


def write_text(path, text: str) -> None:
    """Write with LF endings regardless of platform."""
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
