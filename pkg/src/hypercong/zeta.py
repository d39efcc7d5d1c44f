"""Local zeta factors assembled from sequences of finite-field sums.

The interesting part of the zeta function of the hypersurface
``lam(x_1) ... lam(x_d) = 4^d / t`` over F_p is a polynomial
``prod_i (1 - mu_i T)`` whose reciprocal roots satisfy

    sum_i mu_i^s = H_{p^s}(t)    for every s >= 1.

Newton's identities turn the first ``D`` power sums into the elementary
symmetric functions, i.e. the coefficients.  The expected degree ``D`` is
``d`` away from the unit point and ``d - 1`` at ``t = 1``; at the unit
point with ``d`` even the polynomial additionally carries a trivial
linear factor ``1 -/+ p^(d/2-1) T`` which is stripped and recorded so the
reported polynomial is pure of weight ``d - 1``.

When the full degree is out of reach (``p^D`` past the field cap) the
symmetric functional equation ``e_{D-k} = sigma * p^((d-1)(D-2k)/2) e_k``
reconstructs the upper half from the lower half plus one overlap
coefficient that pins down the sign ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import DEFAULT_LIMITS, WorkLimits
from .errors import (
    DegreeMismatch,
    FactorMismatch,
    InsufficientData,
    MultipleUnitRoots,
    NonIntegralCoefficient,
    NoUnitRoot,
    TooLarge,
)
from .hsums import h_value
from .nt import valuation
from .padic import PAdicApprox, Residue, modulus

__all__ = [
    "ZetaFactor",
    "assemble_zeta",
    "complete_by_functional_equation",
    "compute_zeta",
    "expected_degree",
    "factor_check",
    "newton_polygon",
    "poly_divide_exact",
    "poly_mul",
    "slope_multiset",
    "unit_root_of_zeta",
    "weil_residual",
]


def expected_degree(d: int, p: int, t: int) -> int:
    """Degree of the assembled polynomial: d, or d - 1 on the unit slice."""
    return d - 1 if t % p == 1 % p else d


# --- Newton's identities ----------------------------------------------------

def power_sums_to_coefficients(psums: Sequence[int], degree: int) -> list[int]:
    """Coefficients of prod(1 - mu_i T) from sum(mu_i^s), s = 1..degree.

    Works over Fraction internally; a non-integer coefficient means the
    power sums do not come from an integral polynomial of this degree.
    """
    if len(psums) < degree:
        raise InsufficientData(
            f"need {degree} power sums for degree {degree}, got {len(psums)}"
        )
    elem: list[Fraction] = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * elem[k - i] * psums[i - 1]
        elem.append(acc / k)
    coeffs = []
    for k, e in enumerate(elem):
        signed = (-1) ** k * e
        if signed.denominator != 1:
            raise NonIntegralCoefficient(
                f"coefficient of T^{k} is {signed}, not an integer"
            )
        coeffs.append(int(signed))
    return coeffs


def coefficients_to_power_sums(coeffs: Sequence[int], count: int) -> list[int]:
    """First ``count`` power sums of the reciprocal roots of the polynomial."""
    degree = len(coeffs) - 1
    elem = [(-1) ** k * c for k, c in enumerate(coeffs)]
    psums: list[int] = []
    for k in range(1, count + 1):
        acc = 0
        for i in range(1, min(k, degree) + 1):
            if k - i >= 1:
                acc += (-1) ** (i - 1) * elem[i] * psums[k - i - 1]
        if k <= degree:
            acc += (-1) ** (k - 1) * k * elem[k]
        psums.append(acc)
    return psums


# --- polynomial helpers (ascending coefficient lists, constant term first) --

def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divide_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact quotient num / den, both with constant term 1.

    Raises FactorMismatch when the division leaves a remainder.
    """
    if not den or den[0] != 1:
        raise ValueError("divisor must have constant term 1")
    qdeg = len(num) - len(den)
    if qdeg < 0:
        raise FactorMismatch(
            f"divisor degree {len(den) - 1} exceeds dividend degree {len(num) - 1}"
        )
    quot = [0] * (qdeg + 1)
    rem = list(num)
    for k in range(qdeg + 1):
        q = rem[k]
        quot[k] = q
        if q == 0:
            continue
        for j, dcoef in enumerate(den):
            rem[k + j] -= q * dcoef
    tail = rem[qdeg + 1:]
    if any(tail):
        raise FactorMismatch(f"division leaves remainder {tail}")
    return quot


# --- the assembled object ---------------------------------------------------

@dataclass(frozen=True)
class ZetaFactor:
    """A zeta-function factor prod(1 - mu_i T) with integer coefficients.

    ``coefficients`` is the pure part, constant term first.  When a
    trivial linear factor was stripped (unit slice, even d) its
    reciprocal root is kept in ``removed_factor``: the stripped factor
    is ``1 - removed_factor * T``.  ``completed`` marks polynomials
    whose upper half came from the functional equation rather than from
    computed power sums.
    """

    p: int
    d: int
    t: int
    coefficients: tuple[int, ...]
    removed_factor: int | None = None
    completed: bool = False

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def weight(self) -> int:
        return self.d - 1

    def full_coefficients(self) -> tuple[int, ...]:
        """Coefficients with any stripped linear factor multiplied back in."""
        if self.removed_factor is None:
            return self.coefficients
        return tuple(poly_mul(self.coefficients, [1, -self.removed_factor]))


def _strip_trivial_factor(coeffs: list[int], p: int, d: int) -> tuple[list[int], int]:
    """Remove the linear factor 1 -/+ p^(d/2-1) T from a unit-slice polynomial.

    Both orientations are tried (+ first, for determinism); which one
    divides varies with p and d and is part of the reported data, not an
    error condition.
    """
    root_size = p ** (d // 2 - 1)
    for sign in (1, -1):
        root = sign * root_size
        try:
            return poly_divide_exact(coeffs, [1, -root]), root
        except FactorMismatch:
            continue
    raise FactorMismatch(
        f"no factor 1 -/+ {root_size}*T in unit-slice polynomial {coeffs}"
    )


def assemble_zeta(
    p: int,
    d: int,
    t: int,
    h_values: Sequence[int],
    *,
    strip: bool = True,
) -> ZetaFactor:
    """Build the zeta factor from H_{p^s}(t) for s = 1, 2, ...

    ``h_values[s-1]`` must hold H_{p^s}(t).  At least ``expected_degree``
    values are required; any extras are checked against the assembled
    polynomial and a disagreement raises DegreeMismatch.
    """
    if t % p == 0:
        raise ValueError("t must be nonzero mod p")
    deg = expected_degree(d, p, t)
    coeffs = power_sums_to_coefficients(h_values, deg)
    if len(h_values) > deg:
        predicted = coefficients_to_power_sums(coeffs, len(h_values))
        for s, (want, got) in enumerate(zip(h_values, predicted), start=1):
            if want != got:
                raise DegreeMismatch(
                    f"power sum s={s} is {want} but a degree-{deg} "
                    f"polynomial forces {got}"
                )
    removed = None
    if strip and d % 2 == 0 and t % p == 1 % p:
        coeffs, removed = _strip_trivial_factor(coeffs, p, d)
    return ZetaFactor(p, d, t, tuple(coeffs), removed)


def complete_by_functional_equation(
    p: int,
    d: int,
    t: int,
    h_values: Sequence[int],
) -> ZetaFactor:
    """Assemble from only the lower half of the power sums.

    Needs s = 1 .. floor(D/2) + 1.  The top supplied coefficient overlaps
    the mirrored lower half, which determines the sign of the functional
    equation; if the overlap is zero or gives a sign other than +-1 the
    completion is ambiguous and InsufficientData is raised.
    """
    if t % p == 0:
        raise ValueError("t must be nonzero mod p")
    if d % 2 == 0 and t % p == 1 % p:
        raise InsufficientData(
            "unit slice with even d mixes weights; no symmetric completion"
        )
    deg = expected_degree(d, p, t)
    m = deg // 2 + 1
    if len(h_values) < m:
        raise InsufficientData(
            f"completion at degree {deg} needs {m} power sums, got {len(h_values)}"
        )
    head = power_sums_to_coefficients(h_values[:m], m)
    elem = [(-1) ** k * c for k, c in enumerate(head)]
    w = d - 1
    pivot = elem[deg - m]
    shift = w * (2 * m - deg) // 2
    if pivot == 0 or elem[m] % (p ** shift * pivot) != 0:
        raise InsufficientData(
            f"overlap coefficient does not determine the sign at p={p}, d={d}"
        )
    sigma = elem[m] // (p ** shift * pivot)
    if sigma not in (1, -1):
        raise InsufficientData(
            f"functional-equation sign came out {sigma}, expected +-1"
        )
    full_elem = list(elem) + [0] * (deg - m)
    for k in range(deg - m - 1, -1, -1):
        full_elem[deg - k] = sigma * p ** (w * (deg - 2 * k) // 2) * elem[k]
    coeffs = [(-1) ** k * e for k, e in enumerate(full_elem)]
    predicted = coefficients_to_power_sums(coeffs, len(h_values))
    for s, (want, got) in enumerate(zip(h_values, predicted), start=1):
        if want != got:
            raise DegreeMismatch(
                f"supplied power sum s={s} is {want} but the completed "
                f"polynomial forces {got}"
            )
    return ZetaFactor(p, d, t, tuple(coeffs), None, completed=True)


def compute_zeta(
    p: int,
    d: int,
    t: int,
    generator_rank: int = 0,
    limits: WorkLimits = DEFAULT_LIMITS,
) -> ZetaFactor:
    """Zeta factor at (p, d, t), choosing full assembly or completion by cost.

    Full assembly runs while p^D stays under ``zeta_full_q_cap`` (with a
    consistency power sum at s = D + 1 when that field is still under
    ``zeta_consistency_q_cap``); beyond that the functional-equation
    completion takes over, and past the field cap TooLarge is raised.
    """
    deg = expected_degree(d, p, t)
    q_top = p ** deg
    if q_top <= min(limits.zeta_full_q_cap, limits.field_q_cap):
        s_max = deg + (1 if p ** (deg + 1) <= limits.zeta_consistency_q_cap else 0)
        hs = [h_value(p, s, d, t, generator_rank, limits).value for s in range(1, s_max + 1)]
        return assemble_zeta(p, d, t, hs)
    if d % 2 == 0 and t % p == 1 % p:
        raise TooLarge(
            f"unit slice p={p} d={d} needs q={q_top} and cannot be completed"
        )
    m = deg // 2 + 1
    if p ** m > limits.field_q_cap:
        raise TooLarge(f"even the half-degree field p^{m} exceeds the cap")
    hs = [h_value(p, s, d, t, generator_rank, limits).value for s in range(1, m + 1)]
    return complete_by_functional_equation(p, d, t, hs)


# --- Newton polygon and unit roots ------------------------------------------

def newton_polygon(coefficients: Sequence[int], p: int) -> list[tuple[Fraction, int]]:
    """Slopes of the p-adic Newton polygon with multiplicities, ascending.

    The polygon is the lower convex hull of (i, v_p(c_i)); each segment
    contributes (slope, horizontal length).
    """
    points = [
        (i, valuation(c, p)) for i, c in enumerate(coefficients) if c != 0
    ]
    if points[0][0] != 0:
        raise ValueError("polynomial must have a nonzero constant term")
    segments: list[tuple[Fraction, int]] = []
    i0, v0 = points[0]
    while i0 < points[-1][0]:
        best_slope = None
        best = None
        for i, v in points:
            if i <= i0:
                continue
            s = Fraction(v - v0, i - i0)
            if best_slope is None or s < best_slope or (s == best_slope and i > best[0]):
                best_slope = s
                best = (i, v)
        segments.append((best_slope, best[0] - i0))
        i0, v0 = best
    return segments


def slope_multiset(coefficients: Sequence[int], p: int) -> list[Fraction]:
    """All polygon slopes, one per reciprocal root, sorted ascending."""
    out: list[Fraction] = []
    for slope, mult in newton_polygon(coefficients, p):
        out.extend([slope] * mult)
    return out


def unit_root_of_zeta(zf: ZetaFactor, precision: int) -> PAdicApprox:
    """The p-adic unit reciprocal root, mod p^precision, by Hensel lifting.

    Uses the full polynomial (trivial factor re-included, since for d = 2
    that factor is the unit root).  Raises NoUnitRoot / MultipleUnitRoots
    when the slope-zero segment has length 0 / more than 1.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    coeffs = zf.full_coefficients()
    p = zf.p
    unit_count = max(
        (i for i, c in enumerate(coeffs) if c % p != 0), default=0
    )
    if unit_count == 0:
        raise NoUnitRoot(f"no unit reciprocal root at p={p}, d={zf.d}, t={zf.t}")
    if unit_count > 1:
        raise MultipleUnitRoots(
            f"slope-zero segment has length {unit_count} at p={p}, d={zf.d}, t={zf.t}"
        )
    deg = len(coeffs) - 1
    # reciprocal-root polynomial R(x) = sum_i c_i x^(deg - i), monic
    rcoeffs = list(coeffs)

    def r_eval(x: int, mod: int) -> int:
        acc = 0
        for c in rcoeffs:
            acc = (acc * x + c) % mod
        return acc

    def r_deriv(x: int, mod: int) -> int:
        acc = 0
        for i, c in enumerate(rcoeffs[:-1]):
            acc = (acc * x + (deg - i) * c) % mod
        return acc

    seed = next(x for x in range(1, p) if r_eval(x, p) == 0)
    mod = p ** precision
    x = seed
    for _ in range(precision.bit_length() + 2):
        step = (r_eval(x, mod) * pow(r_deriv(x, mod), -1, mod)) % mod
        if step == 0:
            break
        x = (x - step) % mod
    if r_eval(x, mod) != 0:
        raise NoUnitRoot(f"Hensel lifting failed to converge at p={p}")
    return PAdicApprox(Residue(x, modulus(p, precision)), precision)


# --- structural checks ------------------------------------------------------

def weil_residual(zf: ZetaFactor) -> float:
    """Largest relative deviation of |reciprocal root| from p^(weight/2)."""
    if zf.degree == 0:
        return 0.0
    roots = np.roots(list(zf.coefficients))
    target = float(zf.p) ** (zf.weight / 2)
    return float(max(abs(abs(r) - target) / target for r in roots))


def factor_check(
    zf: ZetaFactor,
    shapes: Sequence[Sequence[int | None]],
) -> list[list[int]]:
    """Confirm that the polynomial is the product of the given factors.

    Each shape is an ascending coefficient list with constant term 1;
    ``None`` marks an unknown coefficient.  Fully known shapes are
    divided off exactly; at most one shape may contain unknowns, and it
    must account for everything that remains, which resolves the
    unknowns.  Returns the factors with unknowns filled in, in input
    order.  Any leftover (wrong shapes, wrong degrees, non-divisibility)
    raises FactorMismatch.
    """
    residual = list(zf.coefficients)
    deferred_index = None
    resolved: list[list[int] | None] = []
    for idx, shape in enumerate(shapes):
        if any(c is None for c in shape):
            if deferred_index is not None:
                raise ValueError("at most one factor shape may contain unknowns")
            deferred_index = idx
            resolved.append(None)
            continue
        concrete = [int(c) for c in shape]
        residual = poly_divide_exact(residual, concrete)
        resolved.append(concrete)
    if deferred_index is not None:
        shape = shapes[deferred_index]
        if len(residual) != len(shape):
            raise FactorMismatch(
                f"residual degree {len(residual) - 1} does not match the "
                f"unknown factor degree {len(shape) - 1}"
            )
        filled = []
        for pos, want in enumerate(shape):
            have = residual[pos]
            if want is not None and int(want) != have:
                raise FactorMismatch(
                    f"unknown-factor position {pos} is {have}, expected {want}"
                )
            filled.append(have)
        resolved[deferred_index] = filled
        residual = [1]
    if residual != [1]:
        raise FactorMismatch(f"leftover factor {residual} after dividing shapes")
    return resolved  # type: ignore[return-value]
