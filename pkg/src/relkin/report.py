"""Serialization of result documents to JSON, CSV and plain-text tables.

A document is a dict with ``config`` (mapping), ``rows`` and ``checks``
(lists of flat mappings).  Floats are rounded to 12 significant digits
before serialization, so ``json.loads(emit(doc, "json")) == doc`` holds for
documents built with :func:`document`.
"""
from __future__ import annotations

import csv
import io
import json
import math

JSON_DIGITS = 12
TABLE_DIGITS = 6


def round_sig(value, digits=JSON_DIGITS):
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    if not math.isfinite(value):
        return None
    return float(f"{value:.{digits}g}")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()  # numpy scalars
    return round_sig(obj)


def document(config, rows, checks=()):
    return {"config": _clean(config), "rows": _clean(list(rows)), "checks": _clean(list(checks))}


def _columns(rows):
    cols = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    return cols


def to_json(doc):
    return json.dumps(doc, indent=2) + "\n"


def to_csv(doc):
    buf = io.StringIO()
    rows = doc["rows"]
    writer = csv.DictWriter(buf, fieldnames=_columns(rows), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def _fmt(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.{TABLE_DIGITS}g}"
    return str(value)


def _table(rows):
    if not rows:
        return ""
    cols = _columns(rows)
    cells = [[_fmt(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def to_table(doc):
    out = []
    for key, value in doc["config"].items():
        if isinstance(value, dict):
            value = ", ".join(f"{k}={_fmt(v)}" for k, v in value.items())
        elif isinstance(value, list):
            value = "; ".join(_fmt(v) for v in value)
        else:
            value = _fmt(value)
        out.append(f"# {key}: {value}\n")
    out.append(_table(doc["rows"]))
    if doc["checks"]:
        out.append("\n")
        out.append(_table(doc["checks"]))
    return "".join(out)


FORMATS = {"json": to_json, "csv": to_csv, "table": to_table}


def emit(doc, fmt="table"):
    return FORMATS[fmt](doc)
