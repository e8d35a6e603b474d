"""Serialisation of counts and command reports to CSV, JSON and plain tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from abelsq.counting import SquareSpectrum, StabilityCertificate

FORMATS = ("csv", "json", "table")


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return round(value, 12)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def rows_to_csv(columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(columns)
    for row in rows:
        out.writerow([_cell(v) for v in row])
    return buf.getvalue()


def rows_to_table(columns: list[str], rows: list[list]) -> str:
    cells = [columns] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


@dataclass
class Report:
    """Rows produced by one command, with the configuration and provenance behind them."""

    command: str
    config: dict
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    ok: bool = True
    messages: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": _plain(self.config),
            "columns": self.columns,
            "rows": _plain(self.rows),
            "provenance": _plain(self.provenance),
            "ok": self.ok,
            "messages": self.messages,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        if fmt == "table":
            return rows_to_table(self.columns, self.rows)
        if fmt == "csv":
            return rows_to_csv(self.columns, self.rows)
        raise ValueError(f"unknown format {fmt!r}")


def spectrum_to_dict(spec: SquareSpectrum, word_meta: dict | None = None,
                     stability: StabilityCertificate | None = None) -> dict:
    return {
        "word_meta": _plain(word_meta or {"length": spec.length, "kind": spec.kind}),
        "counts": [[m, c] for m, c in sorted(spec.counts.items())],
        "total": spec.total,
        "stability": None if stability is None else {
            "prefix_len": stability.prefix_len, "certified": stability.certified},
    }


def spectrum_to_json(spec: SquareSpectrum, word_meta: dict | None = None,
                     stability: StabilityCertificate | None = None) -> str:
    return json.dumps(spectrum_to_dict(spec, word_meta, stability), indent=2, sort_keys=True) + "\n"


def spectrum_to_csv(spec: SquareSpectrum, lengths: list[int] | None = None) -> str:
    lengths = lengths if lengths is not None else list(range(2, spec.length + 1, 2))
    return rows_to_csv(["length", "count"], [[m, spec.count(m)] for m in lengths])
