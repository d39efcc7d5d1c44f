"""Finite-field tables: element encoding, discrete logs, traces.

Elements of GF(p^k) are encoded as integers: sum_i c_i x^i (0 <= c_i < p)
gets index sum_i c_i p^i, so prime-field constants embed as 0..p-1.  The
reducing polynomial is the lexicographically smallest monic irreducible
of degree k, found by scanning candidates with the constant digit varying
fastest; together with a deterministic generator choice this makes every
table reproducible byte for byte.

The multiplicative tables are built in blocks: a short sequential seed,
then vectorized multiplication by g^B expressed as a k x k digit matrix.
"""

from __future__ import annotations

import cmath
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_LIMITS, WorkLimits
from .errors import SelfCheckFailed, TooLarge, ZeroArgument
from .nt import factorize, is_prime

_BLOCK = 2048


# --- dense polynomial arithmetic over F_p (digit tuples, low degree first) --

def _reduction_rows(modulus: tuple[int, ...], p: int, k: int) -> list[tuple[int, ...]]:
    """Digits of x^(k+j) mod f for j = 0..k-2, f = x^k + modulus."""
    if k == 1:
        return []
    base = tuple((-c) % p for c in modulus)
    rows = [base]
    cur = base
    for _ in range(k - 2):
        lead = cur[k - 1]
        nxt = [0] + list(cur[: k - 1])
        if lead:
            for i in range(k):
                nxt[i] += lead * base[i]
        cur = tuple(v % p for v in nxt)
        rows.append(cur)
    return rows


def _poly_mul_mod(
    a: tuple[int, ...],
    b: tuple[int, ...],
    rows: list[tuple[int, ...]],
    p: int,
    k: int,
) -> tuple[int, ...]:
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    out = prod[:k]
    for j in range(k, 2 * k - 1):
        c = prod[j] % p
        if c:
            row = rows[j - k]
            for i in range(k):
                out[i] += c * row[i]
    return tuple(v % p for v in out)


def _poly_pow_mod(
    a: tuple[int, ...], e: int, rows: list[tuple[int, ...]], p: int, k: int
) -> tuple[int, ...]:
    result = (1,) + (0,) * (k - 1)
    base = a
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, rows, p, k)
        base = _poly_mul_mod(base, base, rows, p, k)
        e >>= 1
    return result


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = [v % p for v in a]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top] % p
        if c:
            f = c * inv_lead % p
            for i in range(db + 1):
                a[top - db + i] = (a[top - db + i] - f * b[i]) % p
    return _trim(a[:db])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _is_irreducible(modulus: tuple[int, ...], p: int, k: int) -> bool:
    rows = _reduction_rows(modulus, p, k)
    x = (0, 1) + (0,) * (k - 2)
    frob = []
    cur = x
    for _ in range(k):
        cur = _poly_pow_mod(cur, p, rows, p, k)
        frob.append(cur)
    if frob[-1] != x:
        return False
    full = list(modulus) + [1]
    for ell in factorize(k):
        t = frob[k // ell - 1]
        diff = _trim([(ti - xi) % p for ti, xi in zip(t, x)])
        if not diff:
            return False
        if len(_poly_gcd(full, diff, p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for m in range(p**k):
        digits = _idx_digits(m, p, k)
        if digits[0] == 0:
            continue  # divisible by x
        if _is_irreducible(digits, p, k):
            return digits
    raise SelfCheckFailed(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


def _idx_digits(idx: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        idx, d = divmod(idx, p)
        out.append(d)
    return tuple(out)


# --- the table --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldTable:
    """Complete multiplicative and additive data for one GF(q)."""

    p: int
    k: int
    modulus: tuple[int, ...]      # non-leading digits of the reducing poly
    generator: int                # index of the chosen generator
    generator_rank: int
    power: np.ndarray             # power[j] = index of g^j, length q-1
    dlog: np.ndarray              # dlog[index]; -1 at index 0, length q
    trace: np.ndarray             # trace to F_p, length q
    _rows: list = field(repr=False, default_factory=list)

    @property
    def q(self) -> int:
        return self.p**self.k

    def digits(self, idx: int) -> tuple[int, ...]:
        return _idx_digits(idx, self.p, self.k)

    def index(self, digits) -> int:
        out = 0
        for d in reversed(tuple(digits)):
            out = out * self.p + d
        return out

    def embed(self, n: int) -> int:
        """Index of the prime-field constant n mod p."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.index((x + y) % self.p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        return self.index((-x) % self.p for x in self.digits(a))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        j = (int(self.dlog[a]) + int(self.dlog[b])) % (self.q - 1)
        return int(self.power[j])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroArgument("0 has no inverse")
        return int(self.power[-int(self.dlog[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroArgument("0 has no negative powers")
        return int(self.power[int(self.dlog[a]) * e % (self.q - 1)])

    def omega(self, m: int, a: int) -> complex:
        """Value at a of the m-th power of the dlog character."""
        if a == 0:
            raise ZeroArgument("multiplicative characters are undefined at 0")
        n = self.q - 1
        return cmath.exp(2j * cmath.pi * (m * int(self.dlog[a]) % n) / n)

    def dump_lines(self):
        """One line per element: index, digits, dlog, trace."""
        for idx in range(self.q):
            ds = ",".join(str(d) for d in self.digits(idx))
            dl = int(self.dlog[idx])
            yield f"{idx} {ds} {dl} {int(self.trace[idx])}"


def plus_const(idx: np.ndarray, c: int, p: int) -> np.ndarray:
    """Vectorized addition of the prime-field constant c to encoded elements."""
    c0 = idx % p
    return idx - c0 + (c0 + c) % p


def _find_generator(
    rank: int, q: int, rows, p: int, k: int
) -> tuple[int, tuple[int, ...]]:
    one = (1,) + (0,) * (k - 1)
    prime_divs = list(factorize(q - 1))
    found = 0
    for idx in range(2, q):
        g = _idx_digits(idx, p, k)
        if all(
            _poly_pow_mod(g, (q - 1) // ell, rows, p, k) != one
            for ell in prime_divs
        ):
            if found == rank:
                return idx, g
            found += 1
    raise SelfCheckFailed(f"fewer than {rank + 1} generators in GF({q})")


def _build_power(g: tuple[int, ...], q: int, rows, p: int, k: int) -> np.ndarray:
    n = q - 1
    b = min(_BLOCK, n)
    pp = p ** np.arange(k, dtype=np.int64)
    power = np.empty(n, dtype=np.int64)
    block = np.empty((b, k), dtype=np.int64)
    cur = (1,) + (0,) * (k - 1)
    for j in range(b):
        block[j] = cur
        cur = _poly_mul_mod(cur, g, rows, p, k)
    power[:b] = block @ pp
    if b < n:
        h = cur  # g^b
        step = np.empty((k, k), dtype=np.int64)
        for i in range(k):
            xi = tuple(1 if j == i else 0 for j in range(k))
            step[:, i] = _poly_mul_mod(xi, h, rows, p, k)
        filled = b
        while filled < n:
            block = block @ step.T % p
            take = min(b, n - filled)
            power[filled : filled + take] = block[:take] @ pp
            filled += take
    return power


def _trace_row(rows, p: int, k: int) -> np.ndarray:
    if k == 1:
        return np.ones(1, dtype=np.int64)
    one = (1,) + (0,) * (k - 1)
    x = (0, 1) + (0,) * (k - 2)
    acc = [(0,) * k for _ in range(k)]
    y = x
    for j in range(k):
        if j > 0:
            y = _poly_pow_mod(y, p, rows, p, k)
        cur = one
        for i in range(k):
            acc[i] = tuple((a + c) % p for a, c in zip(acc[i], cur))
            cur = _poly_mul_mod(cur, y, rows, p, k)
    for i, t in enumerate(acc):
        if any(t[1:]):
            raise SelfCheckFailed(f"trace of basis power {i} left the prime field")
    return np.array([t[0] for t in acc], dtype=np.int64)


_FIELD_CACHE: OrderedDict[tuple[int, int, int], FieldTable] = OrderedDict()
_FIELD_CACHE_MAX = 4


def clear_field_cache() -> None:
    _FIELD_CACHE.clear()


def build_field(
    p: int,
    k: int = 1,
    generator_rank: int = 0,
    limits: WorkLimits = DEFAULT_LIMITS,
) -> FieldTable:
    """Construct (or fetch from cache) the full table for GF(p^k)."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"p={p} must be an odd prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    if generator_rank < 0:
        raise ValueError("generator_rank must be >= 0")
    q = p**k
    if q > limits.field_q_cap:
        raise TooLarge(f"q={q} exceeds the field cap {limits.field_q_cap}")

    key = (p, k, generator_rank)
    hit = _FIELD_CACHE.get(key)
    if hit is not None:
        _FIELD_CACHE.move_to_end(key)
        return hit

    modulus = (0,) if k == 1 else _smallest_irreducible(p, k)
    rows = _reduction_rows(modulus, p, k)
    gen_idx, gen = _find_generator(generator_rank, q, rows, p, k)
    power = _build_power(gen, q, rows, p, k)

    dlog = np.full(q, -1, dtype=np.int64)
    dlog[power] = np.arange(q - 1, dtype=np.int64)
    if not np.array_equal(np.sort(power), np.arange(1, q, dtype=np.int64)):
        raise SelfCheckFailed(
            f"powers of element {gen_idx} do not enumerate GF({q})^*"
        )

    trow = _trace_row(rows, p, k)
    idx = np.arange(q, dtype=np.int64)
    tr = np.zeros(q, dtype=np.int64)
    for i in range(k):
        tr += trow[i] * (idx // p**i % p)
    tr %= p

    table = FieldTable(p, k, modulus, gen_idx, generator_rank, power, dlog, tr, rows)
    if int(dlog[table.neg(1)] if q > 2 else 0) != (q - 1) // 2:
        raise SelfCheckFailed("dlog(-1) != (q-1)/2")
    if int(tr[1]) != k % p:
        raise SelfCheckFailed("trace(1) != k mod p")

    _FIELD_CACHE[key] = table
    while len(_FIELD_CACHE) > _FIELD_CACHE_MAX:
        _FIELD_CACHE.popitem(last=False)
    return table
