"""Report assembly and emission.

Every CLI report is a plain dict of JSON-safe values with a schema_version
field, a command name and an echo of the effective parameters.  JSON is
the default emission; TSV renders the same payload as metadata comment
lines plus one delimited table.  Both renderings are deterministic
functions of the report, so identical invocations emit identical bytes.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

SCHEMA_VERSION = 1

_MISSING = "NA"


def base_report(command: str, params: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
    }


def error_report(command: str, exc: Exception) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _scalar(value) -> str:
    if value is None:
        return _MISSING
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _flatten(prefix: str, value, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], out)
    elif isinstance(value, (list, tuple)):
        out.append((prefix, ",".join(_scalar(v) for v in value)))
    else:
        out.append((prefix, _scalar(value)))


def render_tsv(report: dict) -> str:
    """Metadata as "# key=value" comment lines, then one table.

    The table is the report's "rows" list if present, else its "result"
    mapping as a single-row table.
    """
    meta: list[tuple[str, str]] = []
    for key in sorted(report):
        if key in ("rows", "result"):
            continue
        _flatten(key, report[key], meta)
    lines = [f"# {key}={value}" for key, value in meta]

    rows = report.get("rows")
    if rows is None and "result" in report:
        flat: list[tuple[str, str]] = []
        _flatten("", report["result"], flat)
        rows = [dict(flat)]
    if rows:
        columns = list(rows[0])
        lines.append("\t".join(columns))
        for row in rows:
            lines.append("\t".join(_scalar(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "tsv":
        return render_tsv(report)
    raise ValueError(f"unknown report format {fmt!r}")


def write_report(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")
