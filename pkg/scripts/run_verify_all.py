#!/usr/bin/env python3
"""Run the full claim sweep and write both report formats.

Equivalent to `hypercong verify --claims all` but with the artifact
paths and the summary table wired up for a one-shot reproduction run.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from hypercong.claims import CLAIMS, PROVED
from hypercong.report import write_report
from hypercong.sweep import run_sweep


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=199)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("reports"))
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    result = run_sweep(sorted(CLAIMS), pmax=args.pmax, jobs=args.jobs)
    for fmt in ("json", "csv"):
        path = args.outdir / f"claims_p{args.pmax}.{fmt}"
        write_report(str(path), result.rows, fmt, incomplete=result.incomplete)
        print(f"wrote {path}")

    width = max(len(c) for c in CLAIMS)
    for cid in sorted(CLAIMS):
        rows = [r for r in result.rows if r.claim == cid]
        tally = {}
        for r in rows:
            tally[r.status] = tally.get(r.status, 0) + 1
        kind = "proved" if cid in PROVED else CLAIMS[cid].kind
        cells = " ".join(f"{k}={v}" for k, v in sorted(tally.items()))
        print(f"{cid:{width}s}  [{kind:10s}] {cells}")
    print(f"{len(result.rows)} cells in {result.elapsed:.1f}s; "
          f"exit {result.exit_code}"
          f"{' INCOMPLETE: ' + result.error if result.incomplete else ''}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
