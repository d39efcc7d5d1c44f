"""Truncated sums of the d-th power central binomial series.

The coefficient alpha_r = C(2r, r)/4^r is streamed through the recurrence
alpha_{r+1} = alpha_r * (2r+1)/(2r+2), carried as an explicit pair
(p-valuation, unit part mod p^k).  That keeps every partial sum exact mod
p^k even when individual coefficients are divisible by p.
"""

from __future__ import annotations

import os
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .config import CORRUPT_ALPHA_ENV
from .errors import NotAUnit, SelfCheckFailed
from .nt import is_prime, split_unit
from .padic import PAdicApprox, Residue, alternating_harmonic, fermat_quotient_gamma, modulus


@dataclass(frozen=True)
class HyperParams:
    """Exponent d (the power on alpha) and the odd prime p."""

    d: int
    p: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")


@dataclass(frozen=True)
class TruncatedValue:
    params: HyperParams
    s: int
    z: int
    value: Residue


class SplitWitness(NamedTuple):
    ok: bool
    case: str  # "vanishing" or "product"
    lhs: int
    rhs: int


# Test hook: maps (p, r, unit, val) -> (unit, val).  Installed from the
# environment (CORRUPT_ALPHA_ENV = "p:r:delta") or monkeypatched directly;
# lets the harness prove that a wrong coefficient flips verdicts.
_corrupt_alpha: Callable[[int, int, int, int], tuple[int, int]] | None = None


def _load_corruption_from_env() -> None:
    global _corrupt_alpha
    raw = os.environ.get(CORRUPT_ALPHA_ENV)
    if not raw:
        _corrupt_alpha = None
        return
    cp, cr, cdelta = (int(part) for part in raw.split(":"))

    def hook(p: int, r: int, unit: int, val: int) -> tuple[int, int]:
        if p == cp and r == cr:
            return unit + cdelta, val
        return unit, val

    _corrupt_alpha = hook


_load_corruption_from_env()


class _AlphaCache:
    """Grow-on-demand (unit, valuation) tables per (p, k), LRU-bounded."""

    def __init__(self, max_entries: int = 8):
        self.max_entries = max_entries
        self._store: OrderedDict[tuple[int, int], tuple[list[int], list[int]]] = OrderedDict()

    def clear(self) -> None:
        self._store.clear()

    def table(self, p: int, k: int, count: int) -> tuple[list[int], list[int]]:
        key = (p, k)
        if key in self._store:
            units, vals = self._store[key]
            self._store.move_to_end(key)
        else:
            units, vals = [1], [0]
            self._store[key] = (units, vals)
            while len(self._store) > self.max_entries:
                self._store.popitem(last=False)
        if len(units) < count:
            self._extend(p, k, units, vals, count)
        return units, vals

    @staticmethod
    def _extend(p: int, k: int, units: list[int], vals: list[int], count: int) -> None:
        mod = p ** k
        inv2 = pow(2, -1, mod)
        u, v = units[-1], vals[-1]
        n = len(units) - 1
        block = 1024
        while n < count - 1:
            hi = min(count - 1, n + block)
            # batch-invert the unit parts of the denominators n+1..hi
            dens: list[int] = []
            numinfo: list[tuple[int, int]] = []
            for m in range(n, hi):
                va, ua = split_unit(2 * m + 1, p)
                vb, ub = split_unit(m + 1, p)
                numinfo.append((va - vb, ua % mod))
                dens.append(ub % mod)
            prefix = [1] * (len(dens) + 1)
            for i, den in enumerate(dens):
                prefix[i + 1] = prefix[i] * den % mod
            inv_run = pow(prefix[-1], -1, mod)
            inv_dens = [0] * len(dens)
            for i in range(len(dens) - 1, -1, -1):
                inv_dens[i] = prefix[i] * inv_run % mod
                inv_run = inv_run * dens[i] % mod
            for i, (dv, ua) in enumerate(numinfo):
                u = u * ua % mod * inv2 % mod * inv_dens[i] % mod
                v += dv
                r = n + i + 1
                if _corrupt_alpha is not None:
                    u, v = _corrupt_alpha(p, r, u, v)
                    u %= mod
                units.append(u)
                vals.append(v)
            n = hi
            u, v = units[-1], vals[-1]


_ALPHA_CACHE = _AlphaCache()


def clear_caches() -> None:
    """Drop coefficient tables (needed after installing a corruption hook)."""
    _ALPHA_CACHE.clear()


def alpha(r: int, mod) -> Residue:
    """alpha_r = C(2r, r)/4^r as a residue mod p^k."""
    units, vals = _ALPHA_CACHE.table(mod.p, mod.k, r + 1)
    v = vals[r]
    if v >= mod.k:
        return Residue(0, mod)
    return Residue(units[r] * mod.p ** v, mod)


def _trunc_sum_int(d: int, p: int, s: int, z: int, k: int) -> int:
    """Core kernel: sum_{n < p^s} alpha_n^d z^n mod p^k, as a plain int."""
    mod = p ** k
    count = p ** s
    units, vals = _ALPHA_CACHE.table(p, k, count)
    ppow = [p ** j for j in range(k)]
    z %= mod
    acc = 0
    if z == mod - 1 or z == 1:
        sign_flip = z == mod - 1
        for n in range(count):
            v = vals[n]
            dv = d * v
            if dv >= k:
                continue
            term = pow(units[n], d, mod) * ppow[dv]
            if sign_flip and (n & 1):
                acc -= term
            else:
                acc += term
        return acc % mod
    zpow = 1
    for n in range(count):
        if n:
            zpow = zpow * z % mod
        dv = d * vals[n]
        if dv >= k:
            continue
        acc = (acc + pow(units[n], d, mod) * ppow[dv] * zpow) % mod
    return acc % mod


def truncated_sum(params: HyperParams, s: int, z: int, k: int) -> TruncatedValue:
    """F_{p^s}(z) = sum_{n=0}^{p^s - 1} alpha_n^d z^n mod p^k.

    s = 0 gives the empty-product convention F_1 = 1.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    if k < 1:
        raise ValueError("k must be >= 1")
    m = modulus(params.p, k)
    if s == 0:
        return TruncatedValue(params, s, z, Residue(1, m))
    val = _trunc_sum_int(params.d, params.p, s, z, k)
    return TruncatedValue(params, s, z, Residue(val, m))


def epsilon_p(params: HyperParams) -> int:
    """(-1)^(d(p-1)/2): the sign at which the main congruence is stated."""
    return -1 if (params.d * (params.p - 1) // 2) % 2 else 1


def is_unit_point(params: HyperParams, z: int) -> bool:
    """True when F_p(z) is a p-adic unit."""
    return _trunc_sum_int(params.d, params.p, 1, z, 1) != 0


def dwork_quotients(params: HyperParams, z: int, s_max: int) -> list[PAdicApprox]:
    """Quotients F_{p^(s+1)}(z)/F_{p^s}(z) for s = 0..s_max-1.

    The s-th quotient is reported mod p^(s+1), which is the precision to
    which the tower is actually coherent.  Consecutive quotients are checked
    to agree mod p^s before returning.
    """
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    if not is_unit_point(params, z):
        raise NotAUnit(f"F_p({z}) is not a unit for {params}")
    p = params.p
    out: list[PAdicApprox] = []
    for s in range(s_max):
        k = s + 1
        mod = p ** k
        num = _trunc_sum_int(params.d, p, s + 1, z, k)
        den = _trunc_sum_int(params.d, p, s, z, k) if s else 1
        q = num * pow(den, -1, mod) % mod
        out.append(PAdicApprox(Residue(q, modulus(p, k)), k))
    for s in range(1, s_max):
        lower = p ** s
        if out[s].residue.value % lower != out[s - 1].residue.value % lower:
            raise SelfCheckFailed(
                f"quotient tower incoherent at s={s} for {params}, z={z}"
            )
    return out


def unit_root_limit(params: HyperParams, z: int, precision: int) -> PAdicApprox:
    """The limit of the quotient tower, i.e. the unit root, mod p^precision."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    if not is_unit_point(params, z):
        raise NotAUnit(f"F_p({z}) is not a unit for {params}")
    p, k = params.p, precision
    mod = p ** k
    num = _trunc_sum_int(params.d, p, k, z, k)
    den = _trunc_sum_int(params.d, p, k - 1, z, k) if k > 1 else 1
    val = num * pow(den, -1, mod) % mod
    return PAdicApprox(Residue(val, modulus(p, k)), k)


def g1_sum(params: HyperParams, z: int, k: int) -> Residue:
    """2 * sum_t (sum_{j=1}^{2t} (-1)^(j-1)/j) alpha_t^d z^t over t <= (p-1)/2.

    Only meaningful mod p (where it equals gamma * F_p(z)); mod p^2 is
    supported for experiments, higher k is not.
    """
    if k not in (1, 2):
        raise ValueError("g1_sum is defined for k in {1, 2}")
    p = params.p
    mod = p ** k
    units, vals = _ALPHA_CACHE.table(p, k, (p - 1) // 2 + 1)
    z %= mod
    acc = 0
    harmonic = 0
    zpow = 1
    for t in range((p - 1) // 2 + 1):
        if t:
            j1, j2 = 2 * t - 1, 2 * t
            harmonic = (harmonic + pow(j1, -1, mod) - pow(j2, -1, mod)) % mod
            zpow = zpow * z % mod
        dv = params.d * vals[t]
        if dv >= k:
            continue
        a_d = pow(units[t], params.d, mod) * p ** dv
        acc = (acc + harmonic * a_d % mod * zpow) % mod
    return Residue(2 * acc, modulus(p, k))


def check_g1_identity(params: HyperParams) -> bool:
    """G1(eps_p) = gamma * F_p(eps_p) mod p."""
    eps = epsilon_p(params)
    lhs = g1_sum(params, eps, 1)
    gamma = fermat_quotient_gamma(params.p, 1)
    rhs = gamma * Residue(_trunc_sum_int(params.d, params.p, 1, eps, 1), lhs.modulus)
    return lhs == rhs


def check_lemma_split(params: HyperParams, r: int) -> SplitWitness:
    """Check the base-p splitting of alpha_r mod p^2.

    Write r = p*r' + t with 0 <= t < p.  For t > p/2 the coefficient is
    divisible by p; for t < p/2 it factors as alpha_{r'} * alpha_t times an
    explicit unit correction mod p^2.
    """
    p = params.p
    if r < 0:
        raise ValueError("r must be >= 0")
    m2 = modulus(p, 2)
    mod = m2.value
    rp, t = divmod(r, p)
    units, vals = _ALPHA_CACHE.table(p, 2, r + 1)

    def a2(i: int) -> int:
        v = vals[i]
        return 0 if v >= 2 else units[i] * p ** v % mod

    lhs = a2(r)
    if t > p // 2:
        return SplitWitness(vals[r] >= 1, "vanishing", lhs, 0)
    gamma = fermat_quotient_gamma(p, 2).value
    harm = alternating_harmonic(2 * t, m2).value
    corr = (1 - gamma * p * rp + 2 * p * rp * harm) % mod
    rhs = a2(rp) * a2(t) % mod * corr % mod
    return SplitWitness(lhs == rhs, "product", lhs, rhs)


def check_symmetry(params: HyperParams) -> bool:
    """Coefficient symmetry of the degree-(p-1)/2 truncation mod p.

    alpha_{(p-1)/2 - r} = (-1)^((p-1)/2) alpha_r mod p for all r, and hence
    reversing F_p's coefficient list mod p multiplies it by eps_p.
    """
    p = params.p
    h = (p - 1) // 2
    units, vals = _ALPHA_CACHE.table(p, 1, p)
    sign = -1 if h % 2 else 1
    for r in range(h + 1):
        a_r = 0 if vals[r] >= 1 else units[r] % p
        a_mirror = 0 if vals[h - r] >= 1 else units[h - r] % p
        if (a_mirror - sign * a_r) % p != 0:
            return False
    coeffs = [
        0 if vals[r] >= 1 else pow(units[r], params.d, p) for r in range(h + 1)
    ]
    eps = epsilon_p(params)
    return all((coeffs[h - r] - eps * coeffs[r]) % p == 0 for r in range(h + 1))
