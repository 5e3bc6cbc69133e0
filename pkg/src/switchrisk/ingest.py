"""CSV ingestion of per-setting, per-stratum trial summaries.

Two layouts share the leading (setting, stratum) columns and an optional
trailing weight column: arm counts (n0, events0, n1, events1) or direct
risks (p0, p1).  A combined layout carries both column groups and each row
must fill exactly one of them.  Risks derived from counts are events/n.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, ValidationError
from .measures import RiskPair

_COUNT_COLS = ("n0", "events0", "n1", "events1")
_RISK_COLS = ("p0", "p1")
_LEAD_COLS = ("setting", "stratum")


@dataclass(frozen=True)
class TrialRecord:
    """One (setting, stratum) cell with its risks and optional weight."""

    setting: str
    stratum: str
    pair: RiskPair
    weight: float | None = None


def _parse_count(text: str, name: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{name} must be an integer count, got {text!r}", line) from None


def _parse_risk(text: str, name: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{name} must be a number, got {text!r}", line) from None
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value!r}", line)
    return value


def _pair_from_counts(fields: dict[str, str], line: int) -> RiskPair:
    n0 = _parse_count(fields["n0"], "n0", line)
    events0 = _parse_count(fields["events0"], "events0", line)
    n1 = _parse_count(fields["n1"], "n1", line)
    events1 = _parse_count(fields["events1"], "events1", line)
    for name, n in (("n0", n0), ("n1", n1)):
        if n < 1:
            raise ValidationError(f"{name} must be >= 1, got {n}", line)
    for name, events, n in (("events0", events0, n0), ("events1", events1, n1)):
        if not 0 <= events <= n:
            raise ValidationError(
                f"{name} must lie in [0, {n}], got {events}", line
            )
    return RiskPair(p0=events0 / n0, p1=events1 / n1)


def _pair_from_risks(fields: dict[str, str], line: int) -> RiskPair:
    return RiskPair(
        p0=_parse_risk(fields["p0"], "p0", line),
        p1=_parse_risk(fields["p1"], "p1", line),
    )


def _detect_layout(header: list[str]) -> tuple[str, bool]:
    """Return (layout, has_weight); layout is counts, risks or combined."""
    has_weight = header[-1:] == ["weight"]
    base = tuple(header[:-1] if has_weight else header)
    if base == _LEAD_COLS + _COUNT_COLS:
        return "counts", has_weight
    if base == _LEAD_COLS + _RISK_COLS:
        return "risks", has_weight
    if base == _LEAD_COLS + _COUNT_COLS + _RISK_COLS:
        return "combined", has_weight
    raise ParseError(f"unrecognized header {header!r}", line=1)


def ingest(path: str | Path, fmt: str = "csv") -> list[TrialRecord]:
    """Read trial summaries from a delimited file.

    The layout is detected from the header row.  Structural problems raise
    ParseError, invariant violations raise ValidationError, both carrying
    the offending line number.
    """
    if fmt != "csv":
        raise ValueError(f"unsupported format {fmt!r}; only csv is implemented")
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = [cell.strip().lower() for cell in next(reader)]
        except StopIteration:
            raise ParseError("empty file: expected a header row", line=1) from None
        layout, has_weight = _detect_layout(header)
        records = []
        seen: set[tuple[str, str]] = set()
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, got {len(row)}", line
                )
            fields = {name: cell.strip() for name, cell in zip(header, row)}
            setting, stratum = fields["setting"], fields["stratum"]
            if not setting or not stratum:
                raise ValidationError("setting and stratum must be non-empty", line)
            key = (setting, stratum)
            if key in seen:
                raise ValidationError(
                    f"duplicate (setting, stratum) cell {key!r}", line
                )
            seen.add(key)

            if layout == "counts":
                pair = _pair_from_counts(fields, line)
            elif layout == "risks":
                pair = _pair_from_risks(fields, line)
            else:
                has_counts = all(fields[c] for c in _COUNT_COLS)
                has_risks = all(fields[c] for c in _RISK_COLS)
                empty_counts = not any(fields[c] for c in _COUNT_COLS)
                empty_risks = not any(fields[c] for c in _RISK_COLS)
                if has_counts and empty_risks:
                    pair = _pair_from_counts(fields, line)
                elif has_risks and empty_counts:
                    pair = _pair_from_risks(fields, line)
                else:
                    raise ValidationError(
                        "row must fill exactly one of the count columns "
                        "(n0, events0, n1, events1) or the risk columns (p0, p1)",
                        line,
                    )

            weight = None
            if has_weight and fields["weight"]:
                try:
                    weight = float(fields["weight"])
                except ValueError:
                    raise ParseError(
                        f"weight must be a number, got {fields['weight']!r}", line
                    ) from None
                if weight < 0.0:
                    raise ValidationError(f"weight must be >= 0, got {weight!r}", line)
            records.append(
                TrialRecord(setting=setting, stratum=stratum, pair=pair, weight=weight)
            )
    if not records:
        raise ValidationError("no data rows found", line=None)
    return records
