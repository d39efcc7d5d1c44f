"""Eta quotients, CM coefficient formulas, and transcribed q-expansions.

Everything here produces the integer (or quadratic-integer) Fourier
coefficients that the congruence claims compare against.  Expansion of
eta products uses the pentagonal-number series, so a single Euler factor
is O(sqrt(N)) sparse and powers stay cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import isqrt

from .errors import FactorMismatch, OutOfTable
from .nt import legendre


@dataclass(frozen=True)
class EtaQuotient:
    """Product of eta(delta * tau)^exp factors."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for delta, e in self.factors:
            if delta < 1 or e == 0:
                raise ValueError(f"bad eta factor ({delta}, {e})")

    @classmethod
    def parse(cls, spec: str) -> "EtaQuotient":
        """Parse "2^4 4^4" (or "1^2 2^1 4^1 8^2") into a quotient."""
        factors = []
        for token in spec.split():
            m = re.fullmatch(r"(\d+)\^(-?\d+)", token)
            if not m:
                raise ValueError(f"bad eta factor token {token!r}")
            factors.append((int(m.group(1)), int(m.group(2))))
        if not factors:
            raise ValueError("empty eta quotient")
        return cls(tuple(factors))

    @property
    def leading_exponent_24(self) -> int:
        """24 * (order of vanishing at infinity) = sum delta*exp."""
        return sum(delta * e for delta, e in self.factors)

    def __str__(self) -> str:
        return " ".join(f"{d}^{e}" for d, e in self.factors)


@dataclass(frozen=True)
class QExpansion:
    """Integer coefficients a_1..a_n of a q-expansion (a_0 assumed 0)."""

    coefficients: tuple[int, ...]
    provenance: str

    def a(self, n: int) -> int:
        if n < 1 or n > len(self.coefficients):
            raise OutOfTable(f"coefficient a_{n} beyond computed range")
        return self.coefficients[n - 1]


def _pentagonal_exponents(limit: int) -> list[tuple[int, int]]:
    """(exponent, sign) pairs of prod (1 - x^m) = sum (-1)^j x^(j(3j-1)/2)."""
    out = [(0, 1)]
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        e2 = j * (3 * j + 1) // 2
        s = -1 if j % 2 else 1
        if e1 > limit:
            break
        out.append((e1, s))
        if e2 <= limit:
            out.append((e2, s))
        j += 1
    return out


def _mul_euler(series: list[int], delta: int) -> list[int]:
    """Multiply by prod_m (1 - x^(delta*m)), truncated to len(series)."""
    n = len(series)
    out = [0] * n
    for e, s in _pentagonal_exponents((n - 1) // delta):
        off = delta * e
        if s == 1:
            for i in range(n - off):
                out[i + off] += series[i]
        else:
            for i in range(n - off):
                out[i + off] -= series[i]
    return out


def _div_euler(series: list[int], delta: int) -> list[int]:
    """Divide by prod_m (1 - x^(delta*m)) using the sparse recurrence."""
    n = len(series)
    pent = [(delta * e, s) for e, s in _pentagonal_exponents((n - 1) // delta)]
    out = [0] * n
    for i in range(n):
        acc = series[i]
        for off, s in pent[1:]:
            if off > i:
                break
            acc -= s * out[i - off]
        out[i] = acc
    return out


def eta_expand(quotient: EtaQuotient, n_terms: int) -> QExpansion:
    """First n_terms coefficients of the eta quotient's q-expansion.

    Requires the leading exponent sum(delta*e)/24 to be a nonnegative
    integer, which holds for every quotient used here.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    lead24 = quotient.leading_exponent_24
    if lead24 % 24 != 0 or lead24 < 0:
        raise ValueError(
            f"quotient {quotient} has fractional or negative leading power"
        )
    lead = lead24 // 24
    inner_len = max(n_terms - lead + 1, 1)
    series = [0] * inner_len
    series[0] = 1
    for delta, e in quotient.factors:
        step = _mul_euler if e > 0 else _div_euler
        for _ in range(abs(e)):
            series = step(series, delta)
    coeffs = [0] * n_terms
    for n in range(1, n_terms + 1):
        i = n - lead
        if 0 <= i < inner_len:
            coeffs[n - 1] = series[i]
    return QExpansion(tuple(coeffs), provenance=f"eta[{quotient}]")


# The three weight-indexed quotients the congruence claims rely on.
ETA_KILBOURN = EtaQuotient.parse("2^4 4^4")      # weight 4, level 8
ETA_CM_PLUS = EtaQuotient.parse("4^6")           # weight 3, level 16, CM by Q(i)
ETA_CM_MINUS = EtaQuotient.parse("1^2 2^1 4^1 8^2")  # weight 3, level 8, CM by Q(sqrt-2)


def cm_coefficient(form: str, p: int) -> int:
    """Closed-form prime coefficients for the two weight-3 CM targets.

    "d3_plus":  2(a^2 - b^2),  p = a^2 + b^2 with a odd.  Identical to the
                p-th coefficient of eta(4t)^6.
    "d3_minus": 2(2b^2 - a^2), p = a^2 + 2b^2.  This is the p-th coefficient
                of eta(t)^2 eta(2t) eta(4t) eta(8t)^2 multiplied by (-1|p);
                the twisted sequence, not the raw expansion, is what the
                z = -1 congruences and zeta cofactors track (see tests).
    Returns 0 when p has no representation (the inert case).
    """
    if p == 2:
        raise ValueError("p must be odd")
    if form == "d3_plus":
        for b in range(1, isqrt(p) + 1):
            a2 = p - b * b
            if a2 <= 0:
                break
            a = isqrt(a2)
            if a * a == a2 and a % 2 == 1:
                return 2 * (a * a - b * b)
        return 0
    if form == "d3_minus":
        for b in range(1, isqrt(p) + 1):
            a2 = p - 2 * b * b
            if a2 <= 0:
                break
            a = isqrt(a2)
            if a * a == a2:
                raw = 2 * (a * a - 2 * b * b)
                return raw if p % 4 == 1 else -raw
        return 0
    raise ValueError(f"unknown CM form {form!r}")


# ---------------------------------------------------------------------------
# Transcribed prime-coefficient tables for two forms that have no convenient
# eta-product expression.  Values are (x, y) pairs: x + y*sqrt(-2) for the
# weight-3 level-256 form, x + y*i for the weight-3 level-32 form.  They are
# transcribed tables, not computed here, and queries beyond them raise.
# ---------------------------------------------------------------------------

# Form in S_3(256, chi_{-4}), coefficients in Z[sqrt(-2)].
_DELTA_TABLE: dict[int, tuple[int, int]] = {
    3: (0, -2),
    5: (4, 0),
    7: (0, 8),
    11: (0, 10),
    13: (20, 0),
    17: (-10, 0),
    19: (0, -10),
    23: (0, -8),
    29: (20, 0),
}

# Form in S_3(32, chi_{-4}), coefficients in Z[i].
_PHI_TABLE: dict[int, tuple[int, int]] = {
    3: (0, 4),
    5: (2, 0),
    7: (0, -8),
    11: (0, -4),
    13: (-14, 0),
    17: (18, 0),
    19: (0, -12),
    23: (0, 40),
}


def printed_coefficient(form: str, p: int) -> tuple[int, int]:
    """Raw transcribed prime coefficient (x, y) of one of the two tables."""
    table = {"s3_level256": _DELTA_TABLE, "s3_level32": _PHI_TABLE}.get(form)
    if table is None:
        raise ValueError(f"unknown printed form {form!r}")
    if p not in table:
        raise OutOfTable(f"{form} table has no entry for p={p}")
    return table[p]


def _norm_sqrtm2(pair: tuple[int, int]) -> int:
    x, y = pair
    return x * x + 2 * y * y


def _norm_i(pair: tuple[int, int]) -> int:
    x, y = pair
    return x * x + y * y


def d5_dp(p: int) -> int:
    """The degree-2 coefficient d_p for the weight-5 part of the d=5 story:
    (-8|p) * (delta_p * conj(delta_p) - 2 p^2).

    Squaring delta_p literally would break the archimedean bound whenever
    delta_p is purely imaginary (p = 3 mod 4); the norm reading keeps
    |d_p| <= 2p^2 and is the one the zeta factorization confirms.
    """
    return legendre(-8, p) * (_norm_sqrtm2(printed_coefficient("s3_level256", p)) - 2 * p * p)


def d7_ap(p: int) -> int:
    """The coefficient a_p in the d=7 factor (1 - p a_p T + p^6 T^2):
    (-4|p) * (phi_p * conj(phi_p) - 2 p^2), same norm reading as d5_dp."""
    return legendre(-4, p) * (_norm_i(printed_coefficient("s3_level32", p)) - 2 * p * p)


def solve_bp_from_zeta(quartic: list[int], p: int, a_p: int) -> int:
    """Extract b_p from the degree-4 zeta factor at d=6, t=1.

    The quartic must equal (1 - p*a_p*T + p^5*T^2)(1 - b_p*T + p^5*T^2);
    divide off the known quadratic and read b_p from the cofactor.
    """
    from .zeta import poly_divide_exact  # local import to avoid a cycle

    known = [1, -p * a_p, p**5]
    quotient = poly_divide_exact(quartic, known)
    if len(quotient) != 3 or quotient[0] != 1 or quotient[2] != p**5:
        raise FactorMismatch(
            f"cofactor {quotient} is not monic-quadratic with constant p^5"
        )
    return -quotient[1]
