#!/usr/bin/env python3
"""Survey observed congruence orders for the truncated-sum limits.

For each (d, z) with a unit value, compute the largest k <= cap with
F_p(z) = f(z) mod p^k.  The asserted orders in the claim registry were
frozen from exactly this survey; rerun it to probe beyond them.
"""

from __future__ import annotations

import argparse
import sys

from hypercong.claims import observed_congruence_order
from hypercong.nt import odd_primes
from hypercong.truncsum import HyperParams, is_unit_point, truncated_sum, unit_root_limit


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=47)
    parser.add_argument("--dmax", type=int, default=7)
    parser.add_argument("--cap", type=int, default=5,
                        help="maximum congruence order probed")
    args = parser.parse_args()

    header = "d  z  " + " ".join(f"p={p:<4d}" for p in odd_primes(args.pmax))
    print(header)
    for d in range(2, args.dmax + 1):
        for z in (1, -1):
            row = [f"{d}  {z:+d}"]
            for p in odd_primes(args.pmax):
                params = HyperParams(d, p)
                if not is_unit_point(params, z):
                    row.append("-    ")
                    continue
                lhs = truncated_sum(params, 1, z, args.cap).value.value
                rhs = unit_root_limit(params, z, args.cap).residue.value
                order = observed_congruence_order(lhs, rhs, p, args.cap)
                row.append(f"{order}{'+' if order == args.cap else ' '}   ")
            print(" ".join(row))
    print(f"(orders capped at {args.cap}; '+' = congruence holds to the cap, "
          "'-' = non-unit cell)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
