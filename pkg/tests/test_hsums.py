"""Character-sum values: dual-route agreement and hand-checked cells."""

import numpy as np
import pytest

import hypercong.hsums as hs
from hypercong.config import DEFAULT_LIMITS, WorkLimits
from hypercong.errors import MethodDisagreement, TooLarge, ZeroArgument
from hypercong.ffield import build_field
from hypercong.hsums import (
    count_from_h,
    h_from_count,
    h_value,
    h_value_count,
    h_value_gauss,
    h_value_gauss_auto,
    hasse_davenport_deviation,
    lam_dlog_histogram,
    point_count,
    point_count_naive,
)
from hypercong.nt import legendre


def test_hand_counted_cells():
    # lam(1)=4 is the only nonzero lam-value in F_3, so the d=2 count is 1
    f3 = build_field(3)
    assert point_count(f3, 2, 1) == 1
    assert h_value_count(f3, 2, 1).value == -1
    # in F_5: lam(1)=4, lam(2)=lam(3)=2, lam(4)=0; only (1,1) hits 16=1
    f5 = build_field(5)
    assert point_count(f5, 2, 1) == 1
    assert h_value_count(f5, 2, 1).value == 1
    assert point_count(f5, 1, 1) == 1
    assert h_value_count(f5, 1, 1).value == 0


def test_naive_oracle_matches_hand_cells():
    assert point_count_naive(3, 1, 2, 1) == 1
    assert point_count_naive(5, 1, 2, 1) == 1
    assert point_count_naive(5, 1, 1, 1) == 1


GRID = [
    (3, 1, 1), (3, 1, 2), (3, 1, 3),
    (5, 1, 1), (5, 1, 2), (5, 1, 3),
    (7, 1, 1), (7, 1, 2), (7, 1, 3),
    (3, 2, 1), (3, 2, 2), (3, 2, 3),
    (11, 1, 2), (13, 1, 2), (13, 1, 3),
    (5, 2, 2), (3, 3, 2), (3, 2, 4), (13, 1, 4),
]


@pytest.mark.parametrize("p,k,d", GRID)
def test_three_routes_agree(p, k, d):
    field = build_field(p, k)
    for t in (1, -1, 2):
        if t % p == 0:
            continue
        counted = point_count(field, d, t)
        assert point_count_naive(p, k, d, t) == counted
        analytic = h_value_gauss_auto(field, d, t)
        assert count_from_h(analytic.value, field.q, d) == counted
        assert analytic.residual < 1e-6


def test_naive_refuses_oversize():
    with pytest.raises(TooLarge):
        point_count_naive(53, 1, 2, 1)
    with pytest.raises(TooLarge):
        point_count_naive(7, 2, 6, 1)


def test_zero_t_rejected():
    field = build_field(3)
    with pytest.raises(ZeroArgument):
        point_count(field, 2, 3)
    with pytest.raises(ZeroArgument):
        h_value_gauss(field, 2, -6)
    with pytest.raises(ZeroArgument):
        h_value(3, 1, 2, 0)


def test_count_h_inversion_consistency():
    for q, d in [(7, 3), (9, 4), (13, 5)]:
        for h in range(-5, 6):
            assert h_from_count(count_from_h(h, q, d), q, d) == h


# Structure of the d=2 family: the degree-1 slice has a single Frobenius
# root -(-1|p), so H at t=1 is (-1|p) for prime q and -1 for every prime
# square and cube.  The exact count machinery must reproduce that.
def test_d2_unit_slice_structure():
    for p in [3, 5, 7, 11, 13, 17]:
        assert h_value_count(build_field(p), 2, 1).value == legendre(-1, p)
    for p, k in [(3, 2), (5, 2), (7, 2), (3, 3)]:
        expect = legendre(-1, p) ** k
        assert h_value_count(build_field(p, k), 2, 1).value == expect


def test_gauss_route_invariances():
    # the rounded value must not depend on generator choice, additive
    # character, or precision tier
    for p, k, d, t in [(13, 1, 3, -1), (3, 2, 2, 1), (5, 2, 3, -1)]:
        base = h_value_gauss(build_field(p, k), d, t, 53)
        alt_gen = h_value_gauss(build_field(p, k, generator_rank=1), d, t, 53)
        alt_psi = h_value_gauss(build_field(p, k), d, t, 53, zeta_power=2)
        high = h_value_gauss(build_field(p, k), d, t, 106)
        assert base.value == alt_gen.value == alt_psi.value == high.value
        assert high.residual < 1e-20


def test_production_policy_and_disagreement(monkeypatch):
    got = h_value(13, 1, 3, 1)
    assert got.method == "count+gauss53"
    assert got.precision_bits == 53

    skip_checks = WorkLimits(gauss_check_q_cap=10)
    assert h_value(13, 1, 3, 1, limits=skip_checks).method == "count"

    def liar(field, d, t, zeta_power=1, limits=DEFAULT_LIMITS):
        real = h_value_gauss_auto(field, d, t, zeta_power, limits)
        return hs.HValue(real.q, real.d, real.t, real.value + 1, "gauss", 0.0, 53)

    monkeypatch.setattr(hs, "h_value_gauss_auto", liar)
    with pytest.raises(MethodDisagreement):
        h_value(13, 1, 3, 1)


def test_extended_precision_large_field():
    # q = 2197 is above the double-precision cap, so the production path
    # runs the 106-bit FFT route and must agree with the exact count
    got = h_value(13, 3, 2, 1)
    assert got.method == "count+gauss106"
    assert got.residual < 1e-15
    assert got.value == 1  # (-1|13)^3: same slice structure as the d=2 test above


def test_convolution_routes_agree():
    field = build_field(3, 3)
    hist = lam_dlog_histogram(field)
    n = field.q - 1
    d = 5
    bound = (field.q - 2) ** d
    a = hs._cyclic_power_np(hist, d, n)
    b = hs._cyclic_power_gmp(hist, d, n, bound.bit_length() + 1)
    assert list(a) == b


def test_histogram_mass_and_zero_bin():
    field = build_field(7, 2)
    hist = lam_dlog_histogram(field)
    assert hist.sum() == field.q - 2
    # lam(x) = lam(1/x), so every lam value is hit an even number of times
    # except lam(1)=4 and lam(-1)=0; the dlog-0 bin sees 4=lam(1) and its
    # partner only when 4 has even multiplicity there
    assert hist[0] >= 1


@pytest.mark.parametrize("p,k", [(7, 1), (3, 2), (13, 1), (5, 2)])
def test_hasse_davenport_identity(p, k):
    assert hasse_davenport_deviation(build_field(p, k)) < 1e-8


def test_gauss_table_entry_zero_and_modulus():
    from hypercong.hsums import gauss_table

    field = build_field(11)
    g = gauss_table(field, 53).values
    assert abs(g[0] + 1.0) < 1e-10
    assert np.allclose(np.abs(g[1:]) ** 2, 11.0, atol=1e-9)
