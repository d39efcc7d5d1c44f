"""Registry of verifiable claims: congruence cells and structure checks.

Each claim knows how to enumerate its cells (d, p, z) and how to evaluate
one cell to a status.  Claims come in three kinds:

* ``proved`` — a violation is a bug somewhere and fails the whole run;
* ``conjecture`` — congruence statements checked and reported only;
* ``structural`` — factorization / slope facts about zeta factors,
  likewise report-only.

Statuses: ``holds``, ``fails``, ``skipped_nonunit`` (the cell's value is
divisible by p, so there is no unit root to compare against — recorded,
never silently dropped), ``skipped_cost`` (budget cap, assigned by the
sweep, not here).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .config import DEFAULT_LIMITS, WorkLimits
from .errors import FactorMismatch, NoUnitRoot, OutOfTable, SelfCheckFailed
from .etaq import (
    EtaQuotient,
    cm_coefficient,
    d5_dp,
    d7_ap,
    eta_expand,
    solve_bp_from_zeta,
)
from .nt import legendre, odd_primes, valuation
from .truncsum import HyperParams, epsilon_p, is_unit_point, truncated_sum, unit_root_limit
from .zeta import (
    compute_zeta,
    factor_check,
    poly_divide_exact,
    slope_multiset,
    unit_root_of_zeta,
)

__all__ = [
    "CLAIMS",
    "Cell",
    "CellOutcome",
    "ClaimSpec",
    "estimated_cost",
    "observed_congruence_order",
    "plan_cells",
]

PROVED = frozenset(
    ["thm_main", "mortenson_d2", "ivha_d3", "kilbourn_d4", "osz_d6", "vanishing"]
)

SMALL_PRIMES = (3, 5, 7, 11, 13)


@dataclass(frozen=True, order=True)
class Cell:
    claim: str
    d: int
    p: int
    z: int


@dataclass(frozen=True)
class CellOutcome:
    status: str                 # holds | fails | skipped_nonunit
    observed_order: int | None
    asserted_order: int | None
    lhs: int | str | None
    rhs: int | str | None
    detail: str | None = None


@dataclass(frozen=True)
class ClaimSpec:
    id: str
    kind: str                   # proved | conjecture | structural
    asserted_order: int | None
    prime_cap: int
    description: str
    cells: Callable[[int], list[Cell]]
    evaluate: Callable[[Cell, WorkLimits], CellOutcome]


def observed_congruence_order(lhs: int, rhs: int, p: int, cap: int) -> int:
    """Largest k <= cap with lhs = rhs mod p^k."""
    diff = (lhs - rhs) % p ** cap
    if diff == 0:
        return cap
    return valuation(diff, p)


# --- shared helpers ---------------------------------------------------------

_ZETA_CACHE: dict[tuple, object] = {}
_ETA_CACHE: dict[tuple[str, int], object] = {}


def _zeta(p: int, d: int, t: int, limits: WorkLimits):
    key = (p, d, t, limits)
    if key not in _ZETA_CACHE:
        _ZETA_CACHE[key] = compute_zeta(p, d, t, limits=limits)
    return _ZETA_CACHE[key]


def _eta_a(quotient: str, p: int):
    key = (quotient, 256)
    if key not in _ETA_CACHE:
        _ETA_CACHE[key] = eta_expand(EtaQuotient.parse(quotient), 256)
    return _ETA_CACHE[key].a(p)


def _congruence_outcome(
    params: HyperParams,
    z: int,
    lhs: int,
    rhs: int,
    precision: int,
    asserted: int | None,
) -> CellOutcome:
    p = params.p
    order = observed_congruence_order(lhs, rhs, p, precision)
    target = asserted if asserted is not None else precision
    status = "holds" if order >= target else "fails"
    return CellOutcome(status, order, asserted, lhs % p ** precision, rhs % p ** precision)


def _skip_nonunit(params: HyperParams, z: int, precision: int) -> CellOutcome:
    residue = truncated_sum(params, 1, z, precision).value.value
    return CellOutcome(
        "skipped_nonunit", None, None, residue, None,
        "value divisible by p; no unit root to compare",
    )


def _unit_root_claim(cell: Cell, limits: WorkLimits, precision: int,
                     asserted: int) -> CellOutcome:
    """Compare F_p(z) with the Dwork-quotient limit at the given precision."""
    params = HyperParams(cell.d, cell.p)
    if not is_unit_point(params, cell.z):
        return _skip_nonunit(params, cell.z, precision)
    lhs = truncated_sum(params, 1, cell.z, precision).value.value
    rhs = unit_root_limit(params, cell.z, precision).residue.value
    return _congruence_outcome(params, cell.z, lhs, rhs, precision, asserted)


def _primes(cap: int, pmax: int) -> list[int]:
    return odd_primes(min(cap, pmax))


# --- congruence claims ------------------------------------------------------

def _thm_main_cells(pmax: int) -> list[Cell]:
    out = []
    for d in range(2, 8):
        for p in _primes(199, pmax):
            out.append(Cell("thm_main", d, p, epsilon_p(HyperParams(d, p))))
    return out


def _thm_main_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    return _unit_root_claim(cell, limits, 2, 2)


def _conj1_cells(pmax: int) -> list[Cell]:
    # the cases Theorem 1 leaves open: z = -1 with p = 1 mod 4
    return [
        Cell("conj1", d, p, -1)
        for d in range(2, 8)
        for p in _primes(199, pmax)
        if p % 4 == 1
    ]


def _conj1_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    return _unit_root_claim(cell, limits, 2, 2)


_CONJ2_CASES = ((3, 1), (3, -1), (4, 1), (5, 1), (6, 1))


def _conj2_cells(pmax: int) -> list[Cell]:
    return [
        Cell("conj2", d, p, z)
        for d, z in _CONJ2_CASES
        for p in _primes(97, pmax)
    ]


def _conj2_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    # d=6 is expected one power better than the rest; give it headroom
    precision = 5 if cell.d == 6 and cell.p <= 13 else 3
    asserted = 5 if cell.d == 6 and cell.p <= 13 else 3
    return _unit_root_claim(cell, limits, precision, asserted)


def _conj4_cells(pmax: int) -> list[Cell]:
    return [
        Cell("conj4", d, p, z)
        for d in range(2, 8)
        for p in _primes(13, pmax)
        for z in (1, -1)
    ]


def _conj4_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    """F_{p^2}(z) = f_p(z) * F_p(z) mod p^4 (the s=2 case)."""
    params = HyperParams(cell.d, cell.p)
    if not is_unit_point(params, cell.z):
        return _skip_nonunit(params, cell.z, 4)
    lhs = truncated_sum(params, 2, cell.z, 4).value.value
    f = unit_root_limit(params, cell.z, 4).residue.value
    prev = truncated_sum(params, 1, cell.z, 4).value.value
    return _congruence_outcome(params, cell.z, lhs, f * prev, 4, 4)


def _mortenson_cells(pmax: int) -> list[Cell]:
    return [Cell("mortenson_d2", 2, p, 1) for p in _primes(199, pmax)]


def _mortenson_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    params = HyperParams(2, cell.p)
    lhs = truncated_sum(params, 1, 1, 2).value.value
    return _congruence_outcome(params, 1, lhs, legendre(-4, cell.p), 2, 2)


def _ivha_cells(pmax: int) -> list[Cell]:
    return [Cell("ivha_d3", 3, p, 1) for p in _primes(199, pmax)]


def _ivha_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    c_p = cm_coefficient("d3_plus", p)
    eta_cp = _eta_a("4^6", p)
    if c_p != eta_cp:
        raise SelfCheckFailed(
            f"CM closed form {c_p} disagrees with eta expansion {eta_cp} at p={p}"
        )
    params = HyperParams(3, p)
    lhs = truncated_sum(params, 1, 1, 2).value.value
    return _congruence_outcome(params, 1, lhs, c_p, 2, 2)


def _kilbourn_cells(pmax: int) -> list[Cell]:
    return [Cell("kilbourn_d4", 4, p, 1) for p in _primes(97, pmax)]


def _kilbourn_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    a_p = _eta_a("2^4 4^4", p)
    params = HyperParams(4, p)
    lhs = truncated_sum(params, 1, 1, 3).value.value
    return _congruence_outcome(params, 1, lhs, a_p, 3, 3)


def _osz_cells(pmax: int) -> list[Cell]:
    return [Cell("osz_d6", 6, p, 1) for p in SMALL_PRIMES if p <= pmax]


def _osz_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    zf = _zeta(p, 6, 1, limits)
    b_p = solve_bp_from_zeta(list(zf.coefficients), p, _eta_a("2^4 4^4", p))
    params = HyperParams(6, p)
    lhs = truncated_sum(params, 1, 1, 3).value.value
    out = _congruence_outcome(params, 1, lhs, b_p, 3, 3)
    return CellOutcome(
        out.status, out.observed_order, out.asserted_order, out.lhs, out.rhs,
        f"b_p={b_p} from zeta division",
    )


def _vanishing_cells(pmax: int) -> list[Cell]:
    out = []
    for d in range(2, 8):
        for p in _primes(199, pmax):
            if p % 4 == 3:
                out.append(Cell("vanishing", d, p, -epsilon_p(HyperParams(d, p))))
    return out


def _vanishing_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    params = HyperParams(cell.d, cell.p)
    lhs = truncated_sum(params, 1, cell.z, 2).value.value
    order = 2 if lhs == 0 else valuation(lhs, cell.p) if lhs % cell.p == 0 else 0
    status = "holds" if order >= 1 else "fails"
    return CellOutcome(status, order, 1, lhs, 0)


def _conj3_d3_cells(pmax: int) -> list[Cell]:
    return [Cell("conj3_d3", 3, p, -1) for p in _primes(199, pmax)]


def _conj3_d3_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    params = HyperParams(3, p)
    lhs = truncated_sum(params, 1, -1, 2).value.value
    return _congruence_outcome(params, -1, lhs, cm_coefficient("d3_minus", p), 2, 2)


def _conj3_d5_cells(pmax: int) -> list[Cell]:
    return [Cell("conj3_d5", 5, p, -1) for p in _primes(29, pmax)]


def _conj3_d5_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    params = HyperParams(5, p)
    if not is_unit_point(params, -1):
        return _skip_nonunit(params, -1, 3)
    # precision 3 so the report shows whether agreement stops at p^2
    lhs = truncated_sum(params, 1, -1, 3).value.value
    rhs = d5_dp(p)
    order = observed_congruence_order(lhs, rhs, p, 3)
    status = "holds" if order >= 2 else "fails"
    return CellOutcome(status, order, 2, lhs, rhs % p ** 3)


# --- structural claims ------------------------------------------------------

def _zeta_d3_cells(pmax: int) -> list[Cell]:
    return [Cell("zeta_factor_d3m1", 3, p, -1) for p in SMALL_PRIMES if p <= pmax]


def _zeta_d3_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    zf = _zeta(p, 3, -1, limits)
    chi4, chi8 = legendre(-1, p), legendre(-8, p)
    try:
        factors = factor_check(zf, [[1, -chi4 * p], [1, None, chi8 * p * p]])
    except FactorMismatch as exc:
        return CellOutcome("fails", None, None, repr(list(zf.coefficients)), None, str(exc))
    c_found = -factors[1][1]
    c_p = cm_coefficient("d3_minus", p)
    status = "holds" if c_found == c_p else "fails"
    return CellOutcome(
        status, None, None, c_found, c_p,
        f"linear 1-({chi4 * p})T, cofactor trace matches CM form" if status == "holds" else None,
    )


def _zeta_d5_cells(pmax: int) -> list[Cell]:
    return [Cell("zeta_factor_d5m1", 5, p, -1) for p in _primes(29, pmax)]


def _zeta_d5_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    zf = _zeta(p, 5, -1, limits)
    chi4, chi8 = legendre(-1, p), legendre(-8, p)
    gamma = -1 if p % 8 == 5 else 1
    checks = []
    try:
        poly_divide_exact(list(zf.coefficients), [1, -gamma * p * p])
        checks.append(f"gamma={gamma} linear divides")
    except FactorMismatch as exc:
        return CellOutcome("fails", None, None, repr(list(zf.coefficients)),
                           f"1-({gamma * p * p})T", str(exc))
    try:
        d_p = d5_dp(p)
        c_p = _eta_a("4^6", p)
        factor_check(zf, [
            [1, -chi8 * p * p],
            [1, -p * c_p, chi4 * p ** 4],
            [1, -d_p, p ** 4],
        ])
        checks.append(f"full shape with d_p={d_p}")
    except OutOfTable:
        checks.append("d_p beyond printed range; shape check skipped")
    except FactorMismatch as exc:
        return CellOutcome("fails", None, None, repr(list(zf.coefficients)), None, str(exc))
    return CellOutcome("holds", None, None, None, None, "; ".join(checks))


def _zeta_d7_cells(pmax: int) -> list[Cell]:
    return [Cell("zeta_factor_d7m1", 7, p, -1) for p in _primes(23, pmax)]


def _zeta_d7_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    zf = _zeta(p, 7, -1, limits)
    chi4 = legendre(-1, p)
    checks = []
    try:
        rest = poly_divide_exact(list(zf.coefficients), [1, -p ** 3])
        checks.append("1-p^3T divides")
        a_p = d7_ap(p)
        rest = poly_divide_exact(rest, [1, -chi4 * p * a_p, p ** 6])
        checks.append(f"a_p={a_p} quadratic divides")
        if p % 8 in (3, 5):
            quad = poly_divide_exact(rest, [1, 0, -p ** 6])
            checks.append(f"Q4 = (1-p^6T^2)(1-({-quad[1]})T+p^6T^2)")
    except OutOfTable:
        checks.append("a_p beyond printed range")
    except FactorMismatch as exc:
        return CellOutcome("fails", None, None, repr(list(zf.coefficients)), None, str(exc))
    return CellOutcome("holds", None, None, None, None, "; ".join(checks))


def _slopes_d4_cells(pmax: int) -> list[Cell]:
    return [Cell("slopes_d4", 4, p, 1) for p in SMALL_PRIMES if p <= pmax]


def _slopes_d4_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    params = HyperParams(4, p)
    if not is_unit_point(params, 1):
        # a_p = 0 mod p: the slope-0 segment degenerates with F_p(1)
        return _skip_nonunit(params, 1, 2)
    zf = _zeta(p, 4, 1, limits)
    slopes = slope_multiset(zf.coefficients, p)
    status = "holds" if slopes == [0, 3] else "fails"
    return CellOutcome(status, None, None, str([str(s) for s in slopes]), "['0', '3']")


def _slopes_d6_cells(pmax: int) -> list[Cell]:
    return [Cell("slopes_d6", 6, p, 1) for p in SMALL_PRIMES if p <= pmax]


def _slopes_d6_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    p = cell.p
    params = HyperParams(6, p)
    if not is_unit_point(params, 1):
        return _skip_nonunit(params, 1, 2)
    zf = _zeta(p, 6, 1, limits)
    slopes = slope_multiset(zf.coefficients, p)
    status = "holds" if slopes == [0, 1, 4, 5] else "fails"
    detail = None
    if status == "fails" and p % 8 == 3 and _eta_a("2^4 4^4", p) % p == 0:
        detail = "a_p = 0 mod p: the {1,4} sub-polygon degenerates"
    return CellOutcome(
        status, None, None, str([str(s) for s in slopes]),
        "['0', '1', '4', '5']", detail,
    )


def _grand_cells(pmax: int) -> list[Cell]:
    return [
        Cell("grand_crosscheck", d, p, z)
        for d in (3, 4)
        for p in SMALL_PRIMES
        if p <= pmax
        for z in (1, -1)
    ]


def _grand_eval(cell: Cell, limits: WorkLimits) -> CellOutcome:
    """Unit root via zeta Hensel lift vs unit root via Dwork quotients."""
    params = HyperParams(cell.d, cell.p)
    if not is_unit_point(params, cell.z):
        return _skip_nonunit(params, cell.z, 2)
    rhs = unit_root_limit(params, cell.z, 2).residue.value
    try:
        lhs = unit_root_of_zeta(_zeta(cell.p, cell.d, cell.z, limits), 2).residue.value
    except NoUnitRoot as exc:
        return CellOutcome("fails", None, 2, None, rhs, str(exc))
    order = observed_congruence_order(lhs, rhs, cell.p, 2)
    return CellOutcome("holds" if order >= 2 else "fails", order, 2, lhs, rhs)


# --- registry ---------------------------------------------------------------

CLAIMS: dict[str, ClaimSpec] = {
    spec.id: spec
    for spec in [
        ClaimSpec(
            "thm_main", "proved", 2, 199,
            "F_p(e_p) = f(e_p) mod p^2 for d in 2..7",
            _thm_main_cells, _thm_main_eval,
        ),
        ClaimSpec(
            "conj1", "conjecture", 2, 199,
            "F_p(-1) = f_p(-1) mod p^2 for p = 1 mod 4 (the open cases)",
            _conj1_cells, _conj1_eval,
        ),
        ClaimSpec(
            "conj2", "conjecture", 3, 97,
            "mod p^3 refinement (d=3 both signs, d=4,5,6 at +1); d=6 to p^5",
            _conj2_cells, _conj2_eval,
        ),
        ClaimSpec(
            "conj3_d3", "conjecture", 2, 199,
            "F_p(-1) = c_p mod p^2 against the x^2+2y^2 CM form",
            _conj3_d3_cells, _conj3_d3_eval,
        ),
        ClaimSpec(
            "conj3_d5", "conjecture", 2, 29,
            "F_p(-1) = d_p mod p^2, d_p from the printed weight-3 form",
            _conj3_d5_cells, _conj3_d5_eval,
        ),
        ClaimSpec(
            "conj4", "conjecture", 4, 13,
            "F_{p^2}(z) = f_p(z) F_p(z) mod p^4 (s=2 tower step)",
            _conj4_cells, _conj4_eval,
        ),
        ClaimSpec(
            "mortenson_d2", "proved", 2, 199,
            "F_p(1) = (-4|p) mod p^2",
            _mortenson_cells, _mortenson_eval,
        ),
        ClaimSpec(
            "ivha_d3", "proved", 2, 199,
            "F_p(1) = c_p mod p^2, c_p from the two-squares CM form",
            _ivha_cells, _ivha_eval,
        ),
        ClaimSpec(
            "kilbourn_d4", "proved", 3, 97,
            "F_p(1) = a_p mod p^3, a_p from the 2^4 4^4 eta quotient",
            _kilbourn_cells, _kilbourn_eval,
        ),
        ClaimSpec(
            "osz_d6", "proved", 3, 13,
            "F_p(1) = b_p mod p^3, b_p from zeta factor division",
            _osz_cells, _osz_eval,
        ),
        ClaimSpec(
            "vanishing", "proved", 1, 199,
            "F_p(-e_p) = 0 mod p for p = 3 mod 4",
            _vanishing_cells, _vanishing_eval,
        ),
        ClaimSpec(
            "zeta_factor_d3m1", "structural", None, 13,
            "z=-1 slice: (1-(-1|p)pT) times quadratic matching the CM trace",
            _zeta_d3_cells, _zeta_d3_eval,
        ),
        ClaimSpec(
            "zeta_factor_d5m1", "structural", None, 29,
            "z=-1 slice: gamma linear + three-factor shape with printed d_p",
            _zeta_d5_cells, _zeta_d5_eval,
        ),
        ClaimSpec(
            "zeta_factor_d7m1", "structural", None, 23,
            "z=-1 slice: (1-p^3T), printed a_p quadratic, Q4 split",
            _zeta_d7_cells, _zeta_d7_eval,
        ),
        ClaimSpec(
            "slopes_d4", "structural", None, 13,
            "unit slice Newton slopes {0,3}",
            _slopes_d4_cells, _slopes_d4_eval,
        ),
        ClaimSpec(
            "slopes_d6", "structural", None, 13,
            "unit slice Newton slopes {0,1,4,5}",
            _slopes_d6_cells, _slopes_d6_eval,
        ),
        ClaimSpec(
            "grand_crosscheck", "structural", 2, 13,
            "zeta Hensel unit root = Dwork quotient limit mod p^2",
            _grand_cells, _grand_eval,
        ),
    ]
}


def plan_cells(claim_ids: list[str], pmax: int) -> list[Cell]:
    """All cells for the requested claims, in canonical report order."""
    cells: list[Cell] = []
    for cid in claim_ids:
        if cid not in CLAIMS:
            raise ValueError(f"unknown claim id {cid!r}")
        cells.extend(CLAIMS[cid].cells(pmax))
    return sorted(cells)


def estimated_cost(cell: Cell) -> int:
    """Rough term-evaluation count, used for the work-budget cap."""
    p, d = cell.p, cell.d
    claim = cell.claim
    if claim in ("kilbourn_d4", "osz_d6", "conj2", "conj3_d5"):
        base = 2 * p ** 3
        if claim == "conj2" and d == 6 and p <= 13:
            base = 2 * p ** 5
    elif claim == "conj4":
        base = 3 * p ** 4
    else:
        base = 2 * p ** 2
    if claim == "osz_d6":
        base += sum(p ** s for s in range(1, 6))
    if claim.startswith("zeta_factor") or claim.startswith("slopes") or claim == "grand_crosscheck":
        degree = d if cell.z != 1 else d - 1
        top = degree // 2 + 1 if p ** degree > 10 ** 6 else degree
        base += sum(p ** s for s in range(1, top + 1))
    return base
