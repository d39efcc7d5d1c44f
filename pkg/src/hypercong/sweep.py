"""Claim sweep driver: schedules cells, enforces the work budget, and
classifies the outcome into an exit code.

Determinism contract: the report rows depend only on (claim set, pmax,
work cap), never on the process count.  The work-budget pass runs over
cells in canonical order with a static cost model before anything is
evaluated, so the same cells are skipped whether jobs=1 or jobs=8.

Exit codes: 0 all good, 1 a proved claim failed somewhere, 3 an internal
consistency check tripped (the sweep aborts; rows already computed are
written out and the report is flagged incomplete).
"""

from __future__ import annotations

import concurrent.futures
import time
from dataclasses import dataclass, field

from .claims import CLAIMS, PROVED, Cell, estimated_cost, plan_cells
from .config import DEFAULT_LIMITS, WorkLimits, work_cap_from_env
from .errors import InternalConsistencyError
from .report import ReportRow

__all__ = ["SweepResult", "run_sweep"]


@dataclass
class SweepResult:
    rows: list[ReportRow]
    incomplete: bool
    exit_code: int
    error: str | None = None
    elapsed: float = 0.0          # in-memory only; never serialized
    counts: dict[str, int] = field(default_factory=dict)


def _outcome_row(cell: Cell, outcome) -> ReportRow:
    return ReportRow(
        cell.claim, cell.d, cell.p, cell.z, outcome.status,
        outcome.observed_order, outcome.asserted_order,
        outcome.lhs, outcome.rhs, outcome.detail,
    )


def _evaluate_cell(cell: Cell, limits: WorkLimits) -> ReportRow:
    return _outcome_row(cell, CLAIMS[cell.claim].evaluate(cell, limits))


def _apply_work_cap(cells: list[Cell]) -> tuple[list[Cell], list[ReportRow]]:
    budget = work_cap_from_env()
    if budget is None:
        return cells, []
    spent = 0
    todo: list[Cell] = []
    capped: list[ReportRow] = []
    for cell in cells:
        cost = estimated_cost(cell)
        if spent + cost <= budget:
            spent += cost
            todo.append(cell)
        else:
            capped.append(ReportRow(
                cell.claim, cell.d, cell.p, cell.z, "skipped_cost",
                detail=f"estimated cost {cost} over remaining budget",
            ))
    return todo, capped


def run_sweep(claim_ids: list[str] | None = None, pmax: int = 199,
              jobs: int = 1, limits: WorkLimits = DEFAULT_LIMITS) -> SweepResult:
    if claim_ids is None:
        claim_ids = sorted(CLAIMS)
    started = time.monotonic()
    cells = plan_cells(claim_ids, pmax)
    todo, rows = _apply_work_cap(cells)

    incomplete = False
    error: str | None = None
    try:
        if jobs <= 1:
            for cell in todo:
                rows.append(_evaluate_cell(cell, limits))
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_evaluate_cell, cell, limits) for cell in todo]
                try:
                    for future in futures:
                        rows.append(future.result())
                except InternalConsistencyError:
                    for future in futures:
                        future.cancel()
                    raise
    except InternalConsistencyError as exc:
        incomplete = True
        error = f"{type(exc).__name__}: {exc}"
    except KeyboardInterrupt:
        incomplete = True
        error = "interrupted"

    rows.sort()
    counts: dict[str, int] = {}
    for row in rows:
        counts[row.status] = counts.get(row.status, 0) + 1

    if error == "interrupted":
        exit_code = 130
    elif incomplete:
        exit_code = 3
    elif any(row.status == "fails" and row.claim in PROVED for row in rows):
        exit_code = 1
    else:
        exit_code = 0
    return SweepResult(rows, incomplete, exit_code, error,
                       time.monotonic() - started, counts)
