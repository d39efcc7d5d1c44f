"""Eta-quotient expansions against a dense brute-force oracle."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercong.errors import OutOfTable
from hypercong.etaq import (
    ETA_CM_MINUS,
    ETA_CM_PLUS,
    ETA_KILBOURN,
    EtaQuotient,
    cm_coefficient,
    d5_dp,
    d7_ap,
    eta_expand,
    printed_coefficient,
)
from hypercong.nt import legendre, odd_primes


# --- dense oracle: no pentagonal shortcut anywhere -------------------------

def _dense_mul(a, b, n):
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += ai * bj
    return out


def _dense_inverse(a, n):
    assert a[0] == 1
    inv = [0] * n
    inv[0] = 1
    for i in range(1, n):
        inv[i] = -sum(a[j] * inv[i - j] for j in range(1, i + 1) if j < len(a))
    return inv


def _oracle_expand(factors, n_terms):
    """Coefficients a_1..a_n by fully dense polynomial arithmetic."""
    lead = sum(d * e for d, e in factors) // 24
    n = n_terms - lead + 1
    series = [1] + [0] * (n - 1)
    for delta, e in factors:
        euler = [1] + [0] * (n - 1)
        for m in range(1, (n - 1) // delta + 1):
            fac = [0] * (delta * m + 1)
            fac[0] = 1
            fac[delta * m] = -1
            euler = _dense_mul(euler, fac, n)
        if e < 0:
            euler = _dense_inverse(euler, n)
        for _ in range(abs(e)):
            series = _dense_mul(series, euler, n)
    out = [0] * n_terms
    for k in range(1, n_terms + 1):
        if 0 <= k - lead < n:
            out[k - 1] = series[k - lead]
    return out


@pytest.mark.parametrize("quotient", [ETA_KILBOURN, ETA_CM_PLUS, ETA_CM_MINUS])
def test_expansion_matches_dense_oracle(quotient):
    n = 40
    got = eta_expand(quotient, n).coefficients
    assert list(got) == _oracle_expand(quotient.factors, n)


def test_negative_exponents_give_overpartition_numbers():
    # eta(2t)/eta(t)^2 = sum of overpartition counts: 1,2,4,8,14,24,40,...
    q = EtaQuotient.parse("2^1 1^-2")
    exp = eta_expand(q, 8)
    assert list(exp.coefficients) == [2, 4, 8, 14, 24, 40, 64, 100]
    assert exp.coefficients == tuple(_oracle_expand(q.factors, 8))


def test_weight4_form_frozen_coefficients():
    exp = eta_expand(ETA_KILBOURN, 6)
    assert exp.a(1) == 1
    assert exp.a(2) == 0
    assert exp.a(3) == -4
    assert exp.a(5) == -2


def test_weight4_form_hecke_bound():
    exp = eta_expand(ETA_KILBOURN, 110)
    for p in odd_primes(110):
        assert exp.a(p) ** 2 <= 4 * p**3


def test_expansion_range_errors():
    exp = eta_expand(ETA_KILBOURN, 5)
    with pytest.raises(OutOfTable):
        exp.a(6)
    with pytest.raises(OutOfTable):
        exp.a(0)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        EtaQuotient.parse("2^0")
    with pytest.raises(ValueError):
        EtaQuotient.parse("")
    with pytest.raises(ValueError):
        EtaQuotient.parse("x^2")
    with pytest.raises(ValueError):
        eta_expand(EtaQuotient.parse("1^1"), 4)  # fractional leading power
    with pytest.raises(ValueError):
        eta_expand(EtaQuotient.parse("1^-24"), 4)  # negative leading power


# --- CM closed forms ------------------------------------------------------

def test_cm_frozen_values():
    assert cm_coefficient("d3_plus", 5) == -6
    assert cm_coefficient("d3_plus", 7) == 0
    assert cm_coefficient("d3_minus", 3) == 2  # 3 = 1 + 2*1, 2(2-1)
    assert cm_coefficient("d3_minus", 11) == -14  # 11 = 9 + 2, 2(2-9)
    assert cm_coefficient("d3_minus", 5) == 0


def test_cm_plus_closed_form_matches_expansion():
    exp = eta_expand(ETA_CM_PLUS, 85)
    for p in odd_primes(85):
        assert cm_coefficient("d3_plus", p) == exp.a(p), p


def test_cm_minus_closed_form_is_twisted_expansion():
    # The closed form is (-1|p) times the raw eta coefficient: the raw
    # expansion starts q - 2q^2 - 2q^3 + ... while the closed form gives
    # +2 at p=3.  The twisted sequence is the one the congruences select.
    exp = eta_expand(ETA_CM_MINUS, 500)
    for p in odd_primes(500):
        assert cm_coefficient("d3_minus", p) == legendre(-1, p) * exp.a(p), p


@given(st.sampled_from(list(odd_primes(300))))
@settings(max_examples=40, deadline=None)
def test_cm_weight3_bound(p):
    assert cm_coefficient("d3_plus", p) ** 2 <= 4 * p**2
    assert cm_coefficient("d3_minus", p) ** 2 <= 4 * p**2


# --- transcribed tables ---------------------------------------------------

def test_tables_out_of_range():
    with pytest.raises(OutOfTable):
        printed_coefficient("s3_level256", 31)
    with pytest.raises(OutOfTable):
        printed_coefficient("s3_level32", 29)
    with pytest.raises(ValueError):
        printed_coefficient("nonsense", 3)


def test_table_entries_satisfy_weight3_bound():
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29]:
        x, y = printed_coefficient("s3_level256", p)
        assert x * x + 2 * y * y <= 4 * p * p
    for p in [3, 5, 7, 11, 13, 17, 19, 23]:
        x, y = printed_coefficient("s3_level32", p)
        assert x * x + y * y <= 4 * p * p


def test_table_entries_real_or_imaginary_by_residue():
    # With the mod-4 character, eigenvalues are real at p=1 mod 4 and
    # purely imaginary at p=3 mod 4; the transcription must respect that.
    for form in ("s3_level256", "s3_level32"):
        table_ps = [3, 5, 7, 11, 13, 17, 19, 23] + ([29] if form == "s3_level256" else [])
        for p in table_ps:
            x, y = printed_coefficient(form, p)
            if p % 4 == 1:
                assert y == 0, (form, p)
            else:
                assert x == 0, (form, p)


def test_degree2_coefficients_frozen():
    # p=5: delta_5 = 4 so d_5 = (-8|5)(16 - 50) = (-1)(-34) = 34.
    assert d5_dp(5) == 34
    # p=3: delta_3 = -2 sqrt(-2), norm 8, d_3 = (-8|3)(8 - 18) = (1)(-10) = -10.
    assert d5_dp(3) == -10
    # p=3: phi_3 = 4i, norm 16, a_3 = (-4|3)(16 - 18) = (-1)(-2) = 2.
    assert d7_ap(3) == 2
    # p=5: phi_5 = 2, norm 4, a_5 = (-4|5)(4 - 50) = -46.
    assert d7_ap(5) == -46


def test_degree2_weil_bound():
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29]:
        assert abs(d5_dp(p)) <= 2 * p * p
    for p in [3, 5, 7, 11, 13, 17, 19, 23]:
        assert abs(d7_ap(p)) <= 2 * p * p
