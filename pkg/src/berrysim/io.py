"""Deterministic text output: 12-significant-digit numbers, CSV/JSON
serialization, aligned tables, and atomic file writes.

Every number is formatted through :func:`fmt12` so repeated runs with
identical inputs emit byte-identical files and terminal output.
"""

from __future__ import annotations

import json
import math
import os
import tempfile

__all__ = ["fmt12", "rows_to_csv", "rows_to_json", "render_table", "write_text"]


def fmt12(value) -> str:
    """Format a number with 12 significant digits, locale independent.

    Strings pass through unchanged; negative zero is normalized to "0".
    """
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else "0"
    text = "{:.12g}".format(float(value))
    return "0" if text == "-0" else text


def rows_to_csv(header, rows) -> str:
    """CSV text with a mandatory header row and \\n line endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt12(c) for c in row))
    return "\n".join(lines) + "\n"


def _json_cell(cell) -> str:
    text = fmt12(cell)
    try:
        value = float(text)
    except ValueError:
        return json.dumps(text)
    # nan/inf are not valid JSON literals; keep them as strings
    return text if math.isfinite(value) else json.dumps(text)


def rows_to_json(header, rows) -> str:
    """JSON array of row objects with identical keys, numbers kept at the
    same 12-digit precision as the CSV output."""
    objs = []
    for row in rows:
        fields = ", ".join(
            f"{json.dumps(k)}: {_json_cell(c)}" for k, c in zip(header, row)
        )
        objs.append("  {" + fields + "}")
    return "[\n" + ",\n".join(objs) + "\n]\n"


def render_table(header, rows) -> str:
    """Aligned plain-text table; first column left-justified, rest right."""
    cells = [list(header)] + [[fmt12(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for r in cells:
        parts = [r[0].ljust(widths[0])]
        parts += [r[i].rjust(widths[i]) for i in range(1, len(r))]
        lines.append("  ".join(parts).rstrip())
    return "\n".join(lines) + "\n"


def write_text(path: str, text: str):
    """Write atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
