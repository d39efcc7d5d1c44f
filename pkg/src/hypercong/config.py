"""Work-bound configuration.

Everything that caps table sizes or floating-point policy lives in one frozen
dataclass so sweeps and tests can tighten or loosen bounds explicitly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

WORK_CAP_ENV = "HYPERCONG_WORK_CAP"
CORRUPT_ALPHA_ENV = "HYPERCONG_CORRUPT_ALPHA"


@dataclass(frozen=True)
class WorkLimits:
    # Largest q = p^k for which multiplicative tables are built in memory.
    field_q_cap: int = 2_000_000
    # Character sums use plain double precision up to this q, extended
    # (double-double, ~106-bit) precision above it.
    gauss_double_q_cap: int = 2_000
    # Character-sum route is cross-run against the exact count route up to
    # this q; above it the exact route stands alone.
    gauss_check_q_cap: int = 500_000
    # Distance-to-nearest-integer allowed when rounding a character sum.
    integrality_tol: float = 0.01
    # Brute-force point enumeration (test oracle) caps: field size, and the
    # number of tuples (q-1)^(d-1) it may walk.
    naive_q_cap: int = 49
    naive_work_cap: int = 3_000_000
    # Zeta assembly uses one power sum per expected degree when p^degree is
    # below this; above it the symmetric completion takes over.
    zeta_full_q_cap: int = 1_000_000
    # The redundant extra power sum (degree + 1) is only computed when
    # p^(degree+1) stays below this.
    zeta_consistency_q_cap: int = 20_000
    # Relative tolerance for archimedean |root| checks on zeta factors.
    weil_rel_tol: float = 1e-6


DEFAULT_LIMITS = WorkLimits()


def work_cap_from_env() -> int | None:
    """Optional global term-evaluation budget for sweeps."""
    raw = os.environ.get(WORK_CAP_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{WORK_CAP_ENV} must be an integer, got {raw!r}") from exc
    return cap if cap > 0 else None
