"""Structured report records: one record per checked quantity.

Records serialize as line-delimited JSON with a fixed key order so reruns are
byte-identical, or as an aligned text table for reading.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

Value = Union[float, int, str, None]

PASS = "PASS"
FAIL = "FAIL"
INFO = "INFO"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Record:
    check: str
    claim: str
    value: Value
    threshold: Value
    status: str


def status_of(ok: bool, inconclusive_on_fail: bool = False) -> str:
    if ok:
        return PASS
    return INCONCLUSIVE if inconclusive_on_fail else FAIL


def _fmt(v: Value) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def render_records(records: list[Record]) -> str:
    lines = []
    for r in records:
        lines.append(
            json.dumps(
                {
                    "check": r.check,
                    "claim": r.claim,
                    "value": r.value,
                    "threshold": r.threshold,
                    "status": r.status,
                },
                ensure_ascii=True,
                sort_keys=False,
            )
        )
    return "\n".join(lines) + "\n"


def render_table(records: list[Record]) -> str:
    rows = [("check", "value", "threshold", "status", "claim")]
    for r in records:
        rows.append((r.check, _fmt(r.value), _fmt(r.threshold), r.status, r.claim))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = []
    for row in rows:
        lead = "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row[:4]))
        lines.append(f"{lead}  {row[4]}")
    return "\n".join(lines) + "\n"


def render(records: list[Record], fmt: str) -> str:
    if fmt == "records":
        return render_records(records)
    if fmt == "table":
        return render_table(records)
    raise ValueError(f"unknown format {fmt!r}")


def worst_status(records: list[Record]) -> str:
    order = {PASS: 0, INFO: 0, INCONCLUSIVE: 1, FAIL: 2}
    worst = PASS
    for r in records:
        if order.get(r.status, 2) > order.get(worst, 0):
            worst = r.status
    return worst
