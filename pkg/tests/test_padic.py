import pytest
from hypothesis import given, strategies as st

from hypercong.errors import NotAUnit
from hypercong.padic import (
    PAdicApprox,
    Residue,
    alternating_harmonic,
    binomial_mod,
    fermat_quotient_gamma,
    inv,
    modulus,
)

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]


def test_modulus_rejects_bad_bases():
    with pytest.raises(ValueError):
        modulus(4, 1)
    with pytest.raises(ValueError):
        modulus(2, 3)
    with pytest.raises(ValueError):
        modulus(5, 0)


def test_inverse_frozen_values():
    # 2 * 14 = 28 = 27 + 1
    assert inv(Residue(2, modulus(3, 3))).value == 14
    with pytest.raises(NotAUnit):
        inv(Residue(3, modulus(3, 2)))
    with pytest.raises(NotAUnit):
        inv(Residue(0, modulus(5, 1)))


def test_mixed_modulus_is_hard_failure():
    a = Residue(1, modulus(5, 2))
    b = Residue(1, modulus(5, 3))
    c = Residue(1, modulus(7, 2))
    for other in (b, c):
        with pytest.raises(ValueError):
            a + other
        with pytest.raises(ValueError):
            a * other


def test_int_operands_coerce():
    m = modulus(7, 2)
    a = Residue(10, m)
    assert (a + 45).value == 6
    assert (3 * a).value == 30
    assert (1 - a).value == (1 - 10) % 49


@given(
    p=st.sampled_from(SMALL_PRIMES),
    k=st.integers(1, 4),
    x=st.integers(0, 10**6),
)
def test_inverse_is_involutive_on_units(p, k, x):
    m = modulus(p, k)
    r = Residue(x, m)
    if not r.is_unit():
        return
    assert (r * inv(r)).value == 1
    assert inv(inv(r)) == r


@given(
    p=st.sampled_from(SMALL_PRIMES),
    k=st.integers(1, 3),
    a=st.integers(-200, 200),
    b=st.integers(-200, 200),
)
def test_ring_laws(p, k, a, b):
    m = modulus(p, k)
    x, y = Residue(a, m), Residue(b, m)
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    assert x * (y + 1) == x * y + x


def test_binomial_frozen_values():
    assert binomial_mod(4, 2, modulus(5, 1)).value == 1  # 6 mod 5
    assert binomial_mod(10, 5, modulus(5, 2)).value == 2  # 252 mod 25
    with pytest.raises(ValueError):
        binomial_mod(3, 5, modulus(5, 1))


@given(
    n=st.integers(1, 60),
    r=st.integers(0, 60),
    p=st.sampled_from(SMALL_PRIMES),
    k=st.integers(1, 3),
)
def test_binomial_pascal_recurrence(n, r, p, k):
    if r > n:
        return
    m = modulus(p, k)
    lhs = binomial_mod(n, r, m)
    rhs = Residue(0, m)
    if r <= n - 1:
        rhs = rhs + binomial_mod(n - 1, r, m)
    if 1 <= r:
        rhs = rhs + binomial_mod(n - 1, r - 1, m)
    assert lhs == rhs


def test_fermat_quotient_values():
    # (4^(p-1) - 1)/p: 5 for p=3, 51 for p=5
    assert fermat_quotient_gamma(3, 1).value == 5 % 3
    assert fermat_quotient_gamma(3, 2).value == 5
    assert fermat_quotient_gamma(5, 1).value == 51 % 5
    assert fermat_quotient_gamma(5, 2).value == 51 % 25


@given(p=st.sampled_from(SMALL_PRIMES), k=st.integers(1, 3))
def test_fermat_quotient_matches_bigint(p, k):
    exact = (4 ** (p - 1) - 1) // p
    assert fermat_quotient_gamma(p, k).value == exact % p**k


def test_alternating_harmonic_frozen():
    # 1 - 1/2 + 1/3 - 1/4 mod 5 = 1 - 3 + 2 - 4 = -4 = 1
    assert alternating_harmonic(4, modulus(5, 1)).value == 1
    assert alternating_harmonic(0, modulus(5, 2)).value == 0
    with pytest.raises(NotAUnit):
        alternating_harmonic(5, modulus(5, 1))
    with pytest.raises(NotAUnit):
        alternating_harmonic(9, modulus(7, 2))


def test_eisenstein_congruence_small_range():
    # The full-range alternating harmonic sum recovers the Fermat quotient.
    from hypercong.nt import odd_primes

    for p in odd_primes(200):
        m = modulus(p, 1)
        assert alternating_harmonic(p - 1, m) == fermat_quotient_gamma(p, 1)


def test_padic_approx_consistency():
    m = modulus(5, 2)
    a = PAdicApprox(Residue(7, m), 2)
    assert a.reduce(1).residue.value == 2
    with pytest.raises(ValueError):
        PAdicApprox(Residue(7, m), 3)
