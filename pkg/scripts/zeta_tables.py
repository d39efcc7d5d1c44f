#!/usr/bin/env python3
"""Tabulate factored zeta slices and their Newton slopes.

Prints, for each (d, t) family over small primes: the integer
coefficients, any stripped trivial factor, the slope multiset, and the
unit root when one exists.  This reproduces the factorization tables
the congruence claims lean on.
"""

from __future__ import annotations

import argparse
import sys

from hypercong.errors import NoUnitRoot, TooLarge
from hypercong.nt import odd_primes
from hypercong.zeta import compute_zeta, slope_multiset, unit_root_of_zeta

FAMILIES = [(3, 1), (3, -1), (4, 1), (5, -1), (6, 1), (7, -1)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=13)
    parser.add_argument("--precision", type=int, default=2)
    args = parser.parse_args()

    for d, t in FAMILIES:
        print(f"== d={d}, t={t}")
        for p in odd_primes(args.pmax):
            try:
                zf = compute_zeta(p, d, t)
            except TooLarge as exc:
                print(f"  p={p}: too large ({exc})")
                continue
            slopes = ",".join(str(s) for s in slope_multiset(zf.coefficients, p))
            try:
                root = unit_root_of_zeta(zf, args.precision).residue.value
                root_txt = f"unit_root={root} (mod p^{args.precision})"
            except NoUnitRoot:
                root_txt = "no unit root"
            strip = f" stripped(1-({zf.removed_factor})T)" if zf.removed_factor else ""
            via = " via functional eq" if zf.completed else ""
            print(f"  p={p}: {list(zf.coefficients)}{strip} "
                  f"slopes[{slopes}] {root_txt}{via}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
