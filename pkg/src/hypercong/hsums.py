"""Character-sum values H_q(t) by two independent routes.

Route one counts points exactly: the multiplicative histogram of
lam(x) = (x+1)^2/x turns the d-fold product equation into a cyclic
convolution over Z/(q-1), done in int64 when it fits and in a single
packed big integer (Kronecker substitution) otherwise.

Route two evaluates the Gauss-sum formula numerically: one length-(q-1)
DFT of the additive character along powers of the generator yields every
g(omega^m), and the alternating-ratio sum collapses to a rounded
integer.  Double precision covers small q; the double-double FFT takes
over above ``gauss_double_q_cap``, with escalation on any integrality
failure.  Production values always come from the count; the analytic
route is a cross-check, and disagreement is a hard internal error.
"""

from __future__ import annotations

from collections import Counter, OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import gmpy2
import numpy as np

from . import ddarith as ddm
from .config import DEFAULT_LIMITS, WorkLimits
from .errors import (
    IntegralityFailure,
    MethodDisagreement,
    NonIntegral,
    PrecisionExceeded,
    SelfCheckFailed,
    TooLarge,
    ZeroArgument,
)
from .ffield import FieldTable, build_field, plus_const


@dataclass(frozen=True)
class HValue:
    """One rounded character-sum value with its provenance."""

    q: int
    d: int
    t: int
    value: int
    method: str
    residual: float
    precision_bits: int


# --- Gauss-sum tables -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GaussTable:
    """g(omega^m) for m = 0..q-2 at one precision, one additive character."""

    field: FieldTable
    zeta_power: int
    precision_bits: int
    values: object  # complex128 ndarray (53) or CDD 4-array bundle (106)


_GAUSS_CACHE: OrderedDict[tuple, GaussTable] = OrderedDict()
_ROOTS_CACHE: OrderedDict[int, object] = OrderedDict()
_CONV_CACHE: OrderedDict[tuple, object] = OrderedDict()
_SMALL_CACHE_MAX = 2
_CONV_CACHE_MAX = 4


def clear_hsum_caches() -> None:
    _GAUSS_CACHE.clear()
    _ROOTS_CACHE.clear()
    _CONV_CACHE.clear()


def _positive_roots(n: int):
    hit = _ROOTS_CACHE.get(n)
    if hit is None:
        hit = ddm.root_powers(n, n, sign=1)
        while len(_ROOTS_CACHE) >= _SMALL_CACHE_MAX:
            _ROOTS_CACHE.popitem(last=False)
        _ROOTS_CACHE[n] = hit
    else:
        _ROOTS_CACHE.move_to_end(n)
    return hit


def gauss_table(
    field: FieldTable,
    precision_bits: int = 53,
    zeta_power: int = 1,
    limits: WorkLimits = DEFAULT_LIMITS,
) -> GaussTable:
    """All Gauss sums of GF(q) for the characters omega^m, by one DFT."""
    p, q = field.p, field.q
    n = q - 1
    if zeta_power % p == 0:
        raise ZeroArgument("additive character power must be nonzero mod p")
    key = (p, field.k, field.generator_rank, zeta_power % p, precision_bits)
    hit = _GAUSS_CACHE.get(key)
    if hit is not None:
        _GAUSS_CACHE.move_to_end(key)
        return hit

    exps = zeta_power * field.trace[field.power] % p
    if precision_bits == 53:
        zeta = np.exp(2j * np.pi * np.arange(p) / p)
        g = np.fft.ifft(zeta[exps]) * n
        if abs(g[0] + 1.0) > 1e-6:
            raise PrecisionExceeded(f"g(1) = {g[0]} is not -1 at 53 bits")
        dev = np.max(np.abs(np.abs(g[1:]) ** 2 - q))
        if dev > 1e-4 * q:
            raise PrecisionExceeded(
                f"|g|^2 deviates from q={q} by {dev:.3g} at 53 bits"
            )
    elif precision_bits == 106:
        zroots = ddm.root_powers(p, p, sign=1)
        psi = ddm.cdd_take(zroots, exps)
        g = ddm.dft(psi)
        g0 = ddm.cdd_hi(ddm.cdd_take(g, slice(0, 1)))[0]
        if abs(g0 + 1.0) > 1e-18:
            raise PrecisionExceeded(f"g(1) = {g0} is not -1 at 106 bits")
        mod2 = ddm.cdd_abs2(ddm.cdd_take(g, slice(1, n)))
        dev = float(np.max(np.abs(mod2[0] + mod2[1] - q)))
        if dev > 1e-15 * q:
            raise PrecisionExceeded(
                f"|g|^2 deviates from q={q} by {dev:.3g} at 106 bits"
            )
    else:
        raise ValueError(f"unsupported precision {precision_bits}")

    table = GaussTable(field, zeta_power % p, precision_bits, g)
    while len(_GAUSS_CACHE) >= _SMALL_CACHE_MAX:
        _GAUSS_CACHE.popitem(last=False)
    _GAUSS_CACHE[key] = table
    return table


def _character_point(field: FieldTable, d: int, t: int) -> int:
    """dlog of (-1)^d t as a prime-field element; rejects t = 0 mod p."""
    c = (-1) ** d * t % field.p
    if c == 0:
        raise ZeroArgument(f"t={t} vanishes mod p={field.p}")
    return int(field.dlog[c])


def h_value_gauss(
    field: FieldTable,
    d: int,
    t: int,
    precision_bits: int = 53,
    zeta_power: int = 1,
    limits: WorkLimits = DEFAULT_LIMITS,
) -> HValue:
    """H_q(t) from the Gauss-sum formula at a fixed precision."""
    if d < 1:
        raise ValueError("d must be >= 1")
    q = field.q
    n = q - 1
    h = n // 2
    kdl = _character_point(field, d, t)
    sign = (-1) ** d
    table = gauss_table(field, precision_bits, zeta_power, limits)
    m = np.arange(n, dtype=np.int64)

    if precision_bits == 53:
        g = table.values
        ratio = g[(m + h) % n] * g[(-m) % n] / g[h]
        phase = np.exp(2j * np.pi * (m * kdl % n) / n)
        total = np.sum(ratio**d * phase)
        hc = sign * total / (1 - q)
        value = int(np.rint(hc.real))
        residual = float(max(abs(hc.real - value), abs(hc.imag)))
        if residual > limits.integrality_tol:
            raise IntegralityFailure(
                f"H_{q}({t}) d={d}: residual {residual:.3g} at 53 bits"
            )
    else:
        g = table.values
        ga = ddm.cdd_take(g, (m + h) % n)
        gb = ddm.cdd_take(g, (-m) % n)
        inv_gphi = ddm.cdd_inverse(ddm.cdd_take(g, slice(h, h + 1)))
        ratio = ddm.cdd_mul(ddm.cdd_mul(ga, gb), inv_gphi)
        phase = ddm.cdd_take(_positive_roots(n), m * kdl % n)
        total = ddm.cdd_sum(ddm.cdd_mul(ddm.cdd_pow(ratio, d), phase))
        hre = sign * ddm.dd_to_fraction(total[0]) / (1 - q)
        him = sign * ddm.dd_to_fraction(total[1]) / (1 - q)
        value = round(hre)
        residual = float(max(abs(hre - value), abs(him)))
        if residual > limits.integrality_tol:
            raise PrecisionExceeded(
                f"H_{q}({t}) d={d}: residual {residual:.3g} at 106 bits"
            )
    return HValue(q, d, t, value, "gauss", residual, precision_bits)


def h_value_gauss_auto(
    field: FieldTable,
    d: int,
    t: int,
    zeta_power: int = 1,
    limits: WorkLimits = DEFAULT_LIMITS,
) -> HValue:
    """Gauss route with the production precision policy (53 -> 106)."""
    if field.q <= limits.gauss_double_q_cap:
        try:
            return h_value_gauss(field, d, t, 53, zeta_power, limits)
        except (IntegralityFailure, PrecisionExceeded):
            pass
    return h_value_gauss(field, d, t, 106, zeta_power, limits)


# --- exact counting route ---------------------------------------------------

def lam_dlog_histogram(field: FieldTable) -> np.ndarray:
    """hist[m] = #{x != 0, -1 : dlog lam(x) = m} with lam(x) = (x+1)^2/x."""
    p, q = field.p, field.q
    n = q - 1
    xs = np.arange(1, q, dtype=np.int64)
    xs = xs[xs != p - 1]  # lam(-1) = 0 contributes nothing multiplicative
    dl = (2 * field.dlog[plus_const(xs, 1, p)] - field.dlog[xs]) % n
    hist = np.bincount(dl, minlength=n)
    if int(hist.sum()) != q - 2:
        raise SelfCheckFailed("lam histogram lost mass")  # pragma: no cover
    return hist


def _fold_np(full: np.ndarray, n: int) -> np.ndarray:
    out = full[:n].copy()
    if full.size > n:
        out[: full.size - n] += full[n:]
    return out


def _cyclic_power_np(hist: np.ndarray, d: int, n: int) -> np.ndarray:
    result = None
    base = hist.astype(np.int64)
    e = d
    while e:
        if e & 1:
            result = base.copy() if result is None else _fold_np(
                np.convolve(result, base), n
            )
        e >>= 1
        if e:
            base = _fold_np(np.convolve(base, base), n)
    return result


def _cyclic_power_gmp(hist: np.ndarray, d: int, n: int, slot_bits: int) -> list[int]:
    mask = (1 << (n * slot_bits)) - 1

    def fold(y):
        return (y & mask) + (y >> (n * slot_bits))

    packed = gmpy2.pack([int(v) for v in hist], slot_bits)
    result = None
    base = packed
    e = d
    while e:
        if e & 1:
            result = base if result is None else fold(result * base)
        e >>= 1
        if e:
            base = fold(base * base)
    slots = gmpy2.unpack(result, slot_bits)
    out = [int(v) for v in slots]
    out.extend([0] * (n - len(out)))
    return out


def _lam_convolution(field: FieldTable, d: int):
    key = (field.p, field.k, field.generator_rank, d)
    hit = _CONV_CACHE.get(key)
    if hit is not None:
        _CONV_CACHE.move_to_end(key)
        return hit
    q = field.q
    n = q - 1
    hist = lam_dlog_histogram(field)
    bound = (q - 2) ** d
    if n <= 4096 and bound < 2**62:
        conv = _cyclic_power_np(hist, d, n)
    else:
        conv = _cyclic_power_gmp(hist, d, n, bound.bit_length() + 1)
    while len(_CONV_CACHE) >= _CONV_CACHE_MAX:
        _CONV_CACHE.popitem(last=False)
    _CONV_CACHE[key] = conv
    return conv


def point_count(field: FieldTable, d: int, t: int) -> int:
    """#{x in (F_q^*)^d : prod lam(x_i) = 4^d / t}, exactly."""
    if d < 1:
        raise ValueError("d must be >= 1")
    p = field.p
    tp = t % p
    if tp == 0:
        raise ZeroArgument(f"t={t} vanishes mod p={p}")
    target = pow(4, d, p) * pow(tp, -1, p) % p
    conv = _lam_convolution(field, d)
    if target == 0:  # pragma: no cover - 4^d inverse-t never vanishes
        raise ZeroArgument("target point is zero")
    return int(conv[int(field.dlog[target])])


def h_from_count(count: int, q: int, d: int) -> int:
    """Invert count = ((q-2)^d - (-1)^d)/(q-1) - (-1)^d H."""
    sign = (-1) ** d
    top = (q - 2) ** d - sign
    if top % (q - 1):
        raise NonIntegral(f"(q-2)^{d} - ({sign}) not divisible by q-1 for q={q}")
    return sign * (top // (q - 1) - count)


def count_from_h(h: int, q: int, d: int) -> int:
    sign = (-1) ** d
    return ((q - 2) ** d - sign) // (q - 1) - sign * h


def h_value_count(field: FieldTable, d: int, t: int) -> HValue:
    """H_q(t) recovered exactly from the point count."""
    value = h_from_count(point_count(field, d, t), field.q, d)
    return HValue(field.q, d, t, value, "count", 0.0, 0)


# --- production policy ------------------------------------------------------

def h_value(
    p: int,
    k: int,
    d: int,
    t: int,
    generator_rank: int = 0,
    limits: WorkLimits = DEFAULT_LIMITS,
) -> HValue:
    """Exact H_q(t), cross-checked against the analytic route when feasible.

    The count is always the reported value.  Up to ``gauss_check_q_cap``
    the Gauss-sum route runs too and must round to the same integer;
    a mismatch raises MethodDisagreement (an internal-consistency error,
    never a claim failure).
    """
    field = build_field(p, k, generator_rank, limits)
    counted = h_value_count(field, d, t)
    if field.q <= limits.gauss_check_q_cap:
        analytic = h_value_gauss_auto(field, d, t, 1, limits)
        if analytic.value != counted.value:
            raise MethodDisagreement(
                f"H_{field.q}({t}) d={d}: count {counted.value} vs "
                f"gauss {analytic.value} ({analytic.precision_bits} bits, "
                f"residual {analytic.residual:.3g})"
            )
        return HValue(
            field.q,
            d,
            t,
            counted.value,
            f"count+gauss{analytic.precision_bits}",
            analytic.residual,
            analytic.precision_bits,
        )
    return counted


# --- independent brute-force oracle ----------------------------------------

class _NaivePolyField:
    """Self-contained GF(p^k) arithmetic for the enumeration oracle.

    Deliberately shares nothing with FieldTable: its own modulus search
    (k <= 3, so no-root testing suffices), dense multiplication tables,
    inverse by scanning.
    """

    def __init__(self, p: int, k: int):
        if k > 3:
            raise TooLarge("naive oracle only handles k <= 3")
        self.p, self.k, self.q = p, k, p**k
        if k == 1:
            self.modulus = None
        else:
            self.modulus = self._find_modulus()
        self.mul_table = [
            [self._poly_mul(a, b) for b in range(self.q)] for a in range(self.q)
        ]
        self.inv_table = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _find_modulus(self):
        for m in range(self.p**self.k):
            coeffs = self._digits(m) + [1]
            if coeffs[0] == 0:
                continue
            if all(self._eval(coeffs, x) for x in range(self.p)):
                return coeffs
        raise SelfCheckFailed("no modulus found")  # pragma: no cover

    def _eval(self, coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def _poly_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        for top in range(2 * self.k - 2, self.k - 1, -1):
            c = prod[top] % self.p
            for i in range(self.k + 1):
                prod[top - self.k + i] -= c * self.modulus[i]
        out = 0
        for c in reversed(prod[: self.k]):
            out = out * self.p + c % self.p
        return out

    def add(self, a, b):
        da, db = self._digits(a), self._digits(b)
        out = 0
        for x, y in zip(reversed(da), reversed(db)):
            out = out * self.p + (x + y) % self.p
        return out

    def lam(self, x):
        return self.add(self.add(x, 2 % self.p), self.inv_table[x])


def point_count_naive(
    p: int, k: int, d: int, t: int, limits: WorkLimits = DEFAULT_LIMITS
) -> int:
    """Enumerate points directly; independent of every table above."""
    q = p**k
    if q > limits.naive_q_cap:
        raise TooLarge(f"naive enumeration capped at q={limits.naive_q_cap}")
    if (q - 1) ** (d - 1) > limits.naive_work_cap:
        raise TooLarge(f"naive enumeration of (q-1)^{d - 1} tuples refused")
    tp = t % p
    if tp == 0:
        raise ZeroArgument(f"t={t} vanishes mod p={p}")
    fld = _NaivePolyField(p, k)
    target = pow(4, d, p) * pow(tp, -1, p) % p
    lams = [fld.lam(x) for x in range(1, q)]
    mult = Counter(lams)
    if d == 1:
        return mult[target]
    total = 0
    for combo in product(lams, repeat=d - 1):
        acc = target
        for v in combo:
            if v == 0:
                acc = -1
                break
            acc = fld.mul_table[acc][fld.inv_table[v]]
        if acc >= 0:
            total += mult[acc]
    return total


def hasse_davenport_deviation(field: FieldTable, zeta_power: int = 1) -> float:
    """Max |g(omega^{2m}) - omega(4)^m g(omega^m) g(phi omega^m)/g(phi)|."""
    q = field.q
    n = q - 1
    h = n // 2
    g = gauss_table(field, 53, zeta_power).values
    m = np.arange(n, dtype=np.int64)
    lhs = g[2 * m % n]
    four = 4 % field.p
    om4 = np.exp(2j * np.pi * (m * int(field.dlog[four]) % n) / n)
    rhs = om4 * g[m] * g[(m + h) % n] / g[h]
    return float(np.max(np.abs(lhs - rhs)))
