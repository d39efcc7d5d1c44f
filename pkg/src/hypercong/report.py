"""Canonical serialization for verification reports.

Reports are byte-identical across process counts: rows are sorted by
(claim, d, p, z) and carry no timing or host-specific fields.  Wall-clock
data stays in memory on the SweepResult and is never written out.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

__all__ = ["CSV_COLUMNS", "ReportRow", "rows_to_csv", "rows_to_json", "write_report"]

CSV_COLUMNS = (
    "claim", "d", "p", "z", "status",
    "observed_order", "asserted_order", "lhs", "rhs", "detail",
)


@dataclass(frozen=True, order=True)
class ReportRow:
    claim: str
    d: int
    p: int
    z: int
    status: str
    observed_order: int | None = None
    asserted_order: int | None = None
    lhs: int | str | None = None
    rhs: int | str | None = None
    detail: str | None = None

    def as_dict(self) -> dict:
        return {col: getattr(self, col) for col in CSV_COLUMNS}


def rows_to_json(rows: list[ReportRow], *, incomplete: bool = False) -> bytes:
    """JSON array of row objects; a trailing sentinel object flags an
    interrupted or aborted sweep so partial files are still valid JSON."""
    payload: list[dict] = [row.as_dict() for row in sorted(rows)]
    if incomplete:
        payload.append({"incomplete": True})
    return (json.dumps(payload, indent=2, sort_keys=False) + "\n").encode()


def rows_to_csv(rows: list[ReportRow], *, incomplete: bool = False) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in sorted(rows):
        writer.writerow(
            "" if value is None else value
            for value in (getattr(row, col) for col in CSV_COLUMNS)
        )
    if incomplete:
        writer.writerow(["#incomplete"] + [""] * (len(CSV_COLUMNS) - 1))
    return buf.getvalue().encode()


def write_report(path: str, rows: list[ReportRow], fmt: str = "json",
                 *, incomplete: bool = False) -> None:
    if fmt == "json":
        data = rows_to_json(rows, incomplete=incomplete)
    elif fmt == "csv":
        data = rows_to_csv(rows, incomplete=incomplete)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "wb") as fh:
        fh.write(data)
