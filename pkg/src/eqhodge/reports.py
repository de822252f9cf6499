"""CSV and JSON report writers with deterministic formatting.

Floats are rendered with 12 significant digits and a '.' decimal point,
CSV fields are comma-separated with a mandatory header row, and JSON
output is key-sorted, so identical runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

DELOCALIZED_COLUMNS = [
    "class", "class_size", "k", "beta", "beta_oracle", "gamma", "b_term",
    "euler",
]
WITTEN_COLUMNS = [
    "s", "t", "k", "class", "mu", "gamma", "partial_sum", "verdict",
]
ONEFORM_COLUMNS = [
    "m", "k", "class", "c_count", "beta_e", "beta_g", "gamma", "lhs",
    "rhs", "verdict",
]


def fmt(value) -> str:
    """Canonical cell text: 12 significant digits for floats."""
    if isinstance(value, bool):
        return "pass" if value else "fail"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def write_csv(path, columns, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            if isinstance(row, dict):
                row = [row.get(c, "") for c in columns]
            writer.writerow([fmt(v) for v in row])


def _jsonable(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return float(fmt(value))
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_json(path, payload) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    path.write_text(text + "\n")


def rows_to_payload(columns, rows):
    """Row dicts for JSON output, mirroring the CSV column order."""
    out = []
    for row in rows:
        if isinstance(row, dict):
            out.append({c: _jsonable(row.get(c, "")) for c in columns})
        else:
            out.append({c: _jsonable(v) for c, v in zip(columns, row)})
    return out
