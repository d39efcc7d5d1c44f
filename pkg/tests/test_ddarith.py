"""Double-double arithmetic against exact rationals and mpmath."""

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercong.ddarith import (
    cdd_abs2,
    cdd_from_complex,
    cdd_hi,
    cdd_inverse,
    cdd_mul,
    cdd_pow,
    dd,
    dd_add,
    dd_mul,
    dd_recip,
    dd_sum,
    dd_to_fraction,
    dft,
    fft_pow2,
    root_powers,
    two_prod,
    two_sum,
)

# keep magnitudes where products and their rounding errors stay in normal
# float range; the error-free transforms are only exact without underflow
finite = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-30, max_value=1e12),
    st.floats(min_value=-1e12, max_value=-1e-30),
)


@given(finite, finite)
def test_two_sum_is_exact(a, b):
    s, e = two_sum(a, b)
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@given(finite, finite)
def test_two_prod_is_exact(a, b):
    p, e = two_prod(a, b)
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def _as_dd(h, tail):
    hi, lo = two_sum(h, tail * 1e-18)
    return dd(np.array([hi]), np.array([lo]))


@given(finite, finite, finite, finite)
@settings(max_examples=200)
def test_dd_ring_ops_track_exact_rationals(ah, al, bh, bl):
    x = _as_dd(ah, al)
    y = _as_dd(bh, bl)
    ex = Fraction(float(x[0][0])) + Fraction(float(x[1][0]))
    ey = Fraction(float(y[0][0])) + Fraction(float(y[1][0]))

    s = dd_add(x, y)
    got = dd_to_fraction((s[0][0], s[1][0]))
    want = ex + ey
    assert abs(got - want) <= abs(want) * Fraction(1, 2**100) + Fraction(1, 10**300)

    m = dd_mul(x, y)
    got = dd_to_fraction((m[0][0], m[1][0]))
    want = ex * ey
    assert abs(got - want) <= abs(want) * Fraction(1, 2**100) + Fraction(1, 10**300)


def test_dd_recip():
    x = dd(np.array([3.0, 7.0, 1e6]), np.array([1e-18, -2e-17, 0.0]))
    r = dd_recip(x)
    prod = dd_mul(x, r)
    assert np.all(np.abs(prod[0] - 1.0) < 1e-31)


def test_dd_sum_with_cancellation():
    # large alternating terms cancel; pairwise dd summation keeps the dust
    vals = [(1e15, 2.0**-60), (-1e15, 0.0), (1.0, 0.0), (2.0**-70, 0.0)]
    hi = np.array([v[0] for v in vals])
    lo = np.array([v[1] for v in vals])
    total = dd_sum((hi, lo))
    exact = sum((Fraction(h) + Fraction(l) for h, l in vals), Fraction(0))
    assert abs(dd_to_fraction(total) - exact) < Fraction(1, 2**90)


def test_cdd_inverse_and_pow():
    z = cdd_from_complex(np.array([1.5 - 2.25j, 0.0 + 3.0j]))
    inv = cdd_inverse(z)
    prod = cdd_mul(z, inv)
    assert np.all(np.abs(prod[0][0] - 1.0) < 1e-30)
    assert np.all(np.abs(prod[1][0]) < 1e-30)
    cube = cdd_pow(z, 3)
    want = np.array([1.5 - 2.25j, 0.0 + 3.0j]) ** 3
    assert np.all(np.abs(cdd_hi(cube) - want) < 1e-13 * np.abs(want))


@pytest.mark.parametrize("n,sign", [(12, 1), (12, -1), (37, 1), (1000, -1)])
def test_root_powers_match_mpmath(n, sign):
    count = min(n, 64)
    roots = root_powers(n, count, sign=sign)
    with mpmath.workdps(45):
        for j in range(count):
            ang = sign * 2 * mpmath.pi * j / n
            re_err = abs(
                mpmath.mpf(float(roots[0][0][j]))
                + mpmath.mpf(float(roots[0][1][j]))
                - mpmath.cos(ang)
            )
            im_err = abs(
                mpmath.mpf(float(roots[1][0][j]))
                + mpmath.mpf(float(roots[1][1][j]))
                - mpmath.sin(ang)
            )
            assert re_err < mpmath.mpf(10) ** -28
            assert im_err < mpmath.mpf(10) ** -28


def test_root_powers_unit_modulus():
    roots = root_powers(997, 997, sign=1)
    r2 = cdd_abs2(roots)
    assert np.all(np.abs(r2[0] - 1.0) < 1e-30)


def _mpmath_dft(x, sign=1):
    n = len(x)
    with mpmath.workdps(40):
        out = []
        for m in range(n):
            acc = mpmath.mpc(0)
            for j, v in enumerate(x):
                acc += mpmath.mpc(v) * mpmath.e ** (
                    sign * 2j * mpmath.pi * j * m / n
                )
            out.append(complex(acc))
    return np.array(out)


def test_fft_pow2_against_numpy_and_roundtrip():
    rng = np.random.default_rng(5)
    x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    got = fft_pow2(cdd_from_complex(x))
    assert np.allclose(cdd_hi(got), np.fft.fft(x), rtol=1e-13, atol=1e-12)
    back = fft_pow2(got, inverse=True)
    assert np.max(np.abs(cdd_hi(back) - x)) < 1e-14


def test_fft_pow2_high_precision():
    # roots-of-unity input: FFT entries are exactly n or 0, dd must nail them
    n = 128
    x = root_powers(n, n, sign=1)
    spec = fft_pow2((x[0], (-x[1][0], -x[1][1])))  # conj -> hits bin 1... bin -1
    hi = cdd_hi(spec)
    assert abs(hi[n - 1] - n) < 1e-28
    others = np.delete(hi, n - 1)
    assert np.max(np.abs(others)) < 1e-26


@pytest.mark.parametrize("n", [2, 12, 37, 100])
def test_bluestein_matches_positive_kernel(n):
    rng = np.random.default_rng(n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    got = cdd_hi(dft(cdd_from_complex(x)))
    want = np.fft.ifft(x) * n  # numpy ifft uses the e^{+2 pi i jm/N} kernel
    assert np.allclose(got, want, rtol=1e-12, atol=1e-11)
    if n <= 40:
        exact = _mpmath_dft(x, sign=1)
        assert np.max(np.abs(got - exact)) < 1e-25 * max(1.0, np.max(np.abs(exact)))
