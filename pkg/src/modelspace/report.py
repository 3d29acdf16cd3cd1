"""Homology tables for survey records in markdown, CSV and JSON."""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .survey import SurveyRecord

FORMATS = ("md", "csv", "json")

TABLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["degrees", "rows"],
    "additionalProperties": False,
    "properties": {
        "degrees": {"type": "integer", "minimum": 0},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["desc", "components"],
                "additionalProperties": False,
                "properties": {
                    "desc": {"type": "string", "pattern": "^[MS]:n=[0-9]+;"},
                    "components": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "required": ["H", "pi1"],
                            "additionalProperties": False,
                            "properties": {
                                "H": {"type": "array", "items": {"type": "string"}},
                                "pi1": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
    },
}


def _top(records: Sequence[SurveyRecord]) -> int:
    return max((c.homology.top_degree for r in records for c in r.per_component), default=0)


def _groups(comp, top: int) -> list[str]:
    return [str(comp.homology.group(d)) for d in range(top + 1)]


def to_markdown(records: Sequence[SurveyRecord]) -> str:
    """One row per record; several components are separated by ``;`` within a cell."""
    top = _top(records)
    header = ["matching", "comp"] + [f"H{d}" for d in range(top + 1)] + ["pi1"]
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for r in records:
        cols = [f"`{r.descriptor}`", str(r.component_count)]
        per = [_groups(c, top) for c in r.per_component]
        for d in range(top + 1):
            cols.append(" ; ".join(p[d] for p in per))
        cols.append(" ; ".join(c.pi1.text() for c in r.per_component))
        lines.append("| " + " | ".join(cols) + " |")
    return "\n".join(lines) + "\n"


def csv_header(top: int) -> list[str]:
    return ["desc", "comp"] + [f"H{d}" for d in range(top + 1)] + ["pi1"]


def to_csv(records: Sequence[SurveyRecord]) -> str:
    top = _top(records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(top))
    for r in records:
        for idx, c in enumerate(r.per_component):
            writer.writerow([r.descriptor, idx] + _groups(c, top) + [c.pi1.text()])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def printable_rows(records: Sequence[SurveyRecord]) -> list[dict[str, str]]:
    """The fields a CSV emission carries, as strings."""
    top = _top(records)
    rows = []
    for r in records:
        for idx, c in enumerate(r.per_component):
            row = {"desc": r.descriptor, "comp": str(idx)}
            row.update({f"H{d}": g for d, g in enumerate(_groups(c, top))})
            row["pi1"] = c.pi1.text()
            rows.append(row)
    return rows


def to_json(records: Sequence[SurveyRecord]) -> str:
    top = _top(records)
    doc = {
        "degrees": top,
        "rows": [
            {
                "desc": r.descriptor,
                "components": [{"H": _groups(c, top), "pi1": c.pi1.text()} for c in r.per_component],
            }
            for r in records
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def emit_tables(records: Sequence[SurveyRecord], fmt: str = "md") -> str:
    if fmt == "md":
        return to_markdown(records)
    if fmt == "csv":
        return to_csv(records)
    if fmt == "json":
        return to_json(records)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
