"""Residue arithmetic modulo odd prime powers.

A ``Residue`` knows its modulus and refuses to mix with another one: silently
combining values mod p^2 and mod p^3 is the classic way to fake a
congruence, so mixing is a hard failure, not a coercion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import NotAUnit
from .nt import is_prime


@dataclass(frozen=True)
class PrimePowerModulus:
    p: int
    k: int

    def __post_init__(self) -> None:
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"modulus base must be an odd prime, got {self.p}")
        if self.k < 1:
            raise ValueError(f"exponent must be >= 1, got {self.k}")

    @property
    def value(self) -> int:
        return self.p ** self.k

    def residue(self, n: int) -> "Residue":
        return Residue(n, self)

    def __repr__(self) -> str:
        return f"{self.p}^{self.k}"


@lru_cache(maxsize=None)
def modulus(p: int, k: int) -> PrimePowerModulus:
    return PrimePowerModulus(p, k)


class Residue:
    """An element of Z / p^k, normalized to [0, p^k)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, mod: PrimePowerModulus):
        object.__setattr__(self, "value", value % mod.value)
        object.__setattr__(self, "modulus", mod)

    def __setattr__(self, *_):  # immutable
        raise AttributeError("Residue is immutable")

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}"
                )
            return other
        if isinstance(other, int):
            return Residue(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, e: int):
        if e < 0:
            return pow(self.inverse(), -e)
        return Residue(pow(self.value, e, self.modulus.value), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def is_unit(self) -> bool:
        return self.value % self.modulus.p != 0

    def inverse(self) -> "Residue":
        try:
            return Residue(pow(self.value, -1, self.modulus.value), self.modulus)
        except ValueError:
            raise NotAUnit(f"{self.value} is not a unit mod {self.modulus}") from None

    def reduce(self, k: int) -> "Residue":
        """Project to the smaller modulus p^k."""
        if k > self.modulus.k:
            raise ValueError("cannot raise precision by reduction")
        return Residue(self.value, modulus(self.modulus.p, k))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class PAdicApprox:
    """A p-adic integer known to absolute precision p^precision."""

    residue: Residue
    precision: int

    def __post_init__(self) -> None:
        if self.residue.modulus.k != self.precision:
            raise ValueError("residue modulus does not match stated precision")

    @property
    def p(self) -> int:
        return self.residue.modulus.p

    def reduce(self, k: int) -> "PAdicApprox":
        return PAdicApprox(self.residue.reduce(k), k)


def inv(x: Residue) -> Residue:
    """Multiplicative inverse; raises NotAUnit on multiples of p."""
    return x.inverse()


def binomial_mod(n: int, r: int, mod: PrimePowerModulus) -> Residue:
    """C(n, r) reduced mod p^k, exact for any p-valuation of the binomial."""
    if r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return Residue(comb(n, r) % mod.value, mod)


def fermat_quotient_gamma(p: int, k: int) -> Residue:
    """(4^(p-1) - 1)/p reduced mod p^k.

    The quotient is exact: 4^(p-1) = 1 mod p by Fermat, so working mod
    p^(k+1) before the division loses nothing.
    """
    m = modulus(p, k)
    big = p ** (k + 1)
    num = (pow(4, p - 1, big) - 1) % big
    assert num % p == 0
    return Residue(num // p, m)


def alternating_harmonic(upper: int, mod: PrimePowerModulus) -> Residue:
    """sum_{j=1}^{upper} (-1)^(j-1)/j mod p^k; defined only when upper < p."""
    if upper < 0:
        raise ValueError("upper must be >= 0")
    if upper >= mod.p:
        raise NotAUnit(f"denominator {mod.p} is not invertible mod {mod}")
    m = mod.value
    acc = 0
    for j in range(1, upper + 1):
        term = pow(j, -1, m)
        acc = (acc - term) if j % 2 == 0 else (acc + term)
    return Residue(acc, mod)
