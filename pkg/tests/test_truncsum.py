"""Tests for the truncated-sum layer.

The oracle used throughout is exact rational arithmetic: alpha_r as a
Fraction via big binomials, sums reduced mod p^k by clearing the power-of-2
denominator.  The streamed implementation must agree with it everywhere.
"""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hypercong.errors import NotAUnit
from hypercong.nt import odd_primes, valuation
from hypercong.padic import fermat_quotient_gamma, modulus
from hypercong.truncsum import (
    HyperParams,
    alpha,
    check_g1_identity,
    check_lemma_split,
    check_symmetry,
    dwork_quotients,
    epsilon_p,
    g1_sum,
    is_unit_point,
    truncated_sum,
    unit_root_limit,
)


def alpha_exact(r: int) -> Fraction:
    return Fraction(comb(2 * r, r), 4**r)


def reduce_fraction(x: Fraction, p: int, k: int) -> int:
    """Exact reduction of a rational with denominator prime to p."""
    m = p**k
    assert x.denominator % p != 0
    return x.numerator * pow(x.denominator, -1, m) % m


def trunc_oracle(d: int, p: int, s: int, z: int, k: int) -> int:
    total = sum(alpha_exact(n) ** d * z**n for n in range(p**s))
    return reduce_fraction(total, p, k)


def test_alpha_frozen_values():
    assert alpha(2, modulus(5, 1)).value == 1  # 3/8 mod 5
    assert alpha(2, modulus(3, 3)).value == 24  # 3/8 mod 27
    assert alpha(0, modulus(7, 2)).value == 1
    # p | alpha_8 for p=5: C(16,8) = 12870 has 5-valuation 1
    assert valuation(comb(16, 8), 5) == 1
    assert alpha(8, modulus(5, 1)).value == 0
    assert alpha(8, modulus(5, 2)).value % 5 == 0


@given(
    r=st.integers(0, 400),
    p=st.sampled_from([3, 5, 7, 11, 13]),
    k=st.integers(1, 3),
)
@settings(max_examples=60, deadline=None)
def test_alpha_matches_exact_rational(r, p, k):
    got = alpha(r, modulus(p, k)).value
    assert got == reduce_fraction(alpha_exact(r), p, k)


def test_truncated_sum_frozen_values():
    assert truncated_sum(HyperParams(2, 3), 1, 1, 2).value.value == 8
    assert truncated_sum(HyperParams(4, 3), 1, 1, 3).value.value == 23
    assert truncated_sum(HyperParams(2, 3), 0, 1, 2).value.value == 1  # F_1 = 1
    # p=3 has eps = -1 for odd d; the corollary forces F_3(1) = 0 mod 3 there
    assert truncated_sum(HyperParams(3, 3), 1, 1, 1).value.value == 0


def test_truncated_sum_general_z_matches_oracle():
    for d, p, s, z, k in [
        (2, 3, 2, 1, 2),
        (3, 3, 2, -1, 2),
        (2, 5, 1, 2, 2),
        (4, 5, 1, -1, 3),
        (6, 7, 1, 3, 2),
        (5, 5, 2, -1, 2),
    ]:
        got = truncated_sum(HyperParams(d, p), s, z, k).value.value
        assert got == trunc_oracle(d, p, s, z, k), (d, p, s, z, k)


def test_epsilon_values():
    assert epsilon_p(HyperParams(2, 5)) == 1
    assert epsilon_p(HyperParams(3, 3)) == -1
    assert epsilon_p(HyperParams(3, 5)) == 1
    assert epsilon_p(HyperParams(5, 7)) == -1
    # p = 1 mod 4 makes every d give +1
    for d in range(1, 8):
        assert epsilon_p(HyperParams(d, 13)) == 1


def test_dwork_quotients_values_and_coherence():
    qs = dwork_quotients(HyperParams(2, 5), 1, 2)
    # quotient at s=1 recovers the Legendre value (-4|5) = 1 mod 25
    assert qs[1].residue.value == 1
    assert qs[1].precision == 2
    # coherence: qs[1] mod 5 equals qs[0]
    assert qs[1].residue.value % 5 == qs[0].residue.value


def test_unit_root_limit_matches_quotients():
    params = HyperParams(3, 11)
    z = epsilon_p(params)
    qs = dwork_quotients(params, z, 3)
    ur = unit_root_limit(params, z, 3)
    assert ur.residue.value == qs[2].residue.value


def test_unit_root_limit_rejects_nonunits():
    # d=3, p=5, z=-1: F_5(-1) = 1 - (1/2)^3 + (3/8)^3 = 0 mod 5
    assert not is_unit_point(HyperParams(3, 5), -1)
    with pytest.raises(NotAUnit):
        unit_root_limit(HyperParams(3, 5), -1, 2)


def test_main_congruence_spot_checks():
    # F_p(eps) = unit root mod p^2, handful of cells across d and p
    for d, p in [(2, 3), (2, 5), (3, 3), (3, 5), (4, 7), (5, 13), (6, 7), (7, 11)]:
        params = HyperParams(d, p)
        z = epsilon_p(params)
        if not is_unit_point(params, z):
            continue
        lhs = truncated_sum(params, 1, z, 2).value.value
        rhs = unit_root_limit(params, z, 2).residue.value
        assert lhs == rhs, (d, p)


def test_corollary_vanishing_spot_checks():
    for d in range(2, 8):
        for p in [3, 7, 11, 19]:  # p = 3 mod 4
            params = HyperParams(d, p)
            z = -epsilon_p(params)
            assert truncated_sum(params, 1, z, 1).value.value == 0, (d, p)


def test_g1_frozen_value_and_identity():
    # d=2, p=5: G1(z) = z/4 + 21 z^2/128, so G1(1) = 1 mod 5
    assert g1_sum(HyperParams(2, 5), 1, 1).value == 1
    g = g1_sum(HyperParams(2, 5), 1, 2)
    exact = Fraction(1, 4) + Fraction(21, 128)
    assert g.value == reduce_fraction(exact, 5, 2)
    with pytest.raises(ValueError):
        g1_sum(HyperParams(2, 5), 1, 3)


def test_g1_identity_range():
    for d in range(1, 7):
        for p in odd_primes(100):
            assert check_g1_identity(HyperParams(d, p)), (d, p)


def test_gamma_spot():
    assert fermat_quotient_gamma(3, 2).value == 5


def test_lemma_split_examples():
    # p=5, r=8: t=3 > 5/2, so 5 | alpha_8
    w = check_lemma_split(HyperParams(1, 5), 8)
    assert w.ok and w.case == "vanishing"
    # p=5, r=11: r'=2, t=1, product case agrees mod 25
    w = check_lemma_split(HyperParams(1, 5), 11)
    assert w.ok and w.case == "product" and w.lhs == w.rhs


def test_lemma_split_full_small_range():
    for p in [3, 5, 7]:
        params = HyperParams(1, p)
        for r in range(p**3):
            assert check_lemma_split(params, r).ok, (p, r)


def test_symmetry_small_range():
    for d in range(1, 8):
        for p in odd_primes(60):
            assert check_symmetry(HyperParams(d, p)), (d, p)


@given(
    d=st.integers(1, 7),
    p=st.sampled_from([3, 5, 7, 11]),
    z=st.integers(-3, 3),
)
@settings(max_examples=40, deadline=None)
def test_truncated_sum_reduction_compatible(d, p, z):
    """Computing mod p^2 then reducing equals computing mod p directly."""
    if z % p == 0:
        return
    hi = truncated_sum(HyperParams(d, p), 1, z, 2).value
    lo = truncated_sum(HyperParams(d, p), 1, z, 1).value
    assert hi.value % p == lo.value
