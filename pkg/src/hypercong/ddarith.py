"""Double-double (~106-bit) vector arithmetic and FFTs on top of numpy.

A value is an unevaluated sum hi + lo of two float64 arrays with
|lo| <= ulp(hi)/2; complex values are (real_dd, imag_dd) pairs.  The
error-free transforms (two_sum, two_prod via Dekker splitting — no FMA
assumed) make every elementary operation accurate to ~2^-104 relative,
which is what lets a length-10^5 DFT of roots of unity come out with
residuals far below integer-rounding thresholds.

The DFT here uses the e^{+2 pi i jm/N} kernel (an inverse FFT up to
scaling, in numpy's convention); arbitrary lengths go through Bluestein's
chirp, whose quadratic exponents are reduced mod 2N in exact integers.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np

_SPLITTER = 134217729.0  # 2^27 + 1

DD = tuple[np.ndarray, np.ndarray]
CDD = tuple[DD, DD]


# --- error-free transforms --------------------------------------------------

def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    """Renormalize assuming |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


# --- double-double real ops -------------------------------------------------

def dd(hi, lo=None) -> DD:
    hi = np.asarray(hi, dtype=np.float64)
    return hi, (np.zeros_like(hi) if lo is None else np.asarray(lo, dtype=np.float64))


def dd_add(x: DD, y: DD) -> DD:
    s1, s2 = two_sum(x[0], y[0])
    t1, t2 = two_sum(x[1], y[1])
    s1, s2 = quick_two_sum(s1, s2 + t1)
    return quick_two_sum(s1, s2 + t2)


def dd_neg(x: DD) -> DD:
    return -x[0], -x[1]


def dd_sub(x: DD, y: DD) -> DD:
    return dd_add(x, dd_neg(y))


def dd_mul(x: DD, y: DD) -> DD:
    p1, p2 = two_prod(x[0], y[0])
    return quick_two_sum(p1, p2 + (x[0] * y[1] + x[1] * y[0] + x[1] * y[1]))


def dd_scale(x: DD, s: float) -> DD:
    p1, p2 = two_prod(x[0], s)
    return quick_two_sum(p1, p2 + x[1] * s)


def dd_recip(x: DD) -> DD:
    y = 1.0 / x[0]
    # one Newton step lifts the 53-bit seed to full precision
    e = dd_sub(dd(np.ones_like(x[0])), dd_mul(x, dd(y)))
    return dd_add(dd(y), dd_mul(e, dd(y)))


def dd_sum(x: DD) -> DD:
    """Pairwise-fold reduction of a dd vector to a dd scalar."""
    hi, lo = np.atleast_1d(x[0]).ravel(), np.atleast_1d(x[1]).ravel()
    while hi.size > 1:
        if hi.size % 2:
            hi = np.append(hi, 0.0)
            lo = np.append(lo, 0.0)
        h = hi.size // 2
        hi, lo = dd_add((hi[:h], lo[:h]), (hi[h:], lo[h:]))
    return hi[0], lo[0]


def dd_to_fraction(x: DD) -> Fraction:
    return Fraction(float(x[0])) + Fraction(float(x[1]))


# --- complex double-double --------------------------------------------------

def cdd(re: DD, im: DD) -> CDD:
    return re, im


def cdd_from_complex(z) -> CDD:
    z = np.asarray(z, dtype=np.complex128)
    return dd(z.real.copy()), dd(z.imag.copy())


def cdd_zeros(shape) -> CDD:
    return dd(np.zeros(shape)), dd(np.zeros(shape))


def cdd_hi(z: CDD):
    """Collapse to complex128 (hi+lo rounds to the nearest double)."""
    return (z[0][0] + z[0][1]) + 1j * (z[1][0] + z[1][1])


def cdd_add(x: CDD, y: CDD) -> CDD:
    return dd_add(x[0], y[0]), dd_add(x[1], y[1])


def cdd_sub(x: CDD, y: CDD) -> CDD:
    return dd_sub(x[0], y[0]), dd_sub(x[1], y[1])


def cdd_mul(x: CDD, y: CDD) -> CDD:
    re = dd_sub(dd_mul(x[0], y[0]), dd_mul(x[1], y[1]))
    im = dd_add(dd_mul(x[0], y[1]), dd_mul(x[1], y[0]))
    return re, im


def cdd_conj(x: CDD) -> CDD:
    return x[0], dd_neg(x[1])


def cdd_scale(x: CDD, s: float) -> CDD:
    return dd_scale(x[0], s), dd_scale(x[1], s)


def cdd_abs2(x: CDD) -> DD:
    return dd_add(dd_mul(x[0], x[0]), dd_mul(x[1], x[1]))


def cdd_inverse(x: CDD) -> CDD:
    r = dd_recip(cdd_abs2(x))
    return dd_mul(x[0], r), dd_mul(dd_neg(x[1]), r)


def cdd_pow(x: CDD, e: int) -> CDD:
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else cdd_mul(result, base)
        e >>= 1
        if e:
            base = cdd_mul(base, base)
    if result is None:
        one = dd(np.ones_like(x[0][0]))
        return one, dd(np.zeros_like(x[0][0]))
    return result


def cdd_take(x: CDD, idx) -> CDD:
    return (
        (x[0][0][idx], x[0][1][idx]),
        (x[1][0][idx], x[1][1][idx]),
    )


def cdd_sum(x: CDD) -> CDD:
    return dd_sum(x[0]), dd_sum(x[1])


# --- high-precision roots of unity ------------------------------------------

def root_powers(n: int, count: int, sign: int = 1) -> CDD:
    """e^(sign * 2 pi i j / n) for j = 0..count-1, built by binary doubling.

    Only the O(log count) seed values touch mpmath; everything else is
    vectorized dd multiplication, so each entry carries ~log2(count)
    rounding errors of size 2^-104.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    re = np.empty(count)
    rl = np.zeros(count)
    im = np.zeros(count)
    il = np.zeros(count)
    re[0] = 1.0
    out: CDD = ((re, rl), (im, il))
    with mpmath.workdps(50):
        two_pi = 2 * mpmath.pi
        size = 1
        level = 0
        while size < count:
            ang = sign * two_pi * ((1 << level) % n) / n
            c, s = mpmath.cos(ang), mpmath.sin(ang)
            chi, shi = float(c), float(s)
            seed = (
                (np.float64(chi), np.float64(float(c - chi))),
                (np.float64(shi), np.float64(float(s - shi))),
            )
            take = min(size, count - size)
            ext = cdd_mul(cdd_take(out, slice(0, take)), seed)
            sl = slice(size, size + take)
            out[0][0][sl], out[0][1][sl] = ext[0]
            out[1][0][sl], out[1][1][sl] = ext[1]
            size += take
            level += 1
    return out


# --- power-of-two FFT and Bluestein -----------------------------------------

_PLAN_CACHE: dict[int, tuple[np.ndarray, CDD]] = {}
_CHIRP_CACHE: dict[int, tuple[int, CDD, CDD]] = {}
_PLAN_CACHE_MAX = 3


def clear_fft_caches() -> None:
    _PLAN_CACHE.clear()
    _CHIRP_CACHE.clear()


def _plan(m: int) -> tuple[np.ndarray, CDD]:
    plan = _PLAN_CACHE.get(m)
    if plan is None:
        log2m = m.bit_length() - 1
        idx = np.arange(m, dtype=np.int64)
        rev = np.zeros(m, dtype=np.int64)
        for i in range(log2m):
            rev = (rev << 1) | (idx >> i & 1)
        tw = root_powers(m, max(m // 2, 1), sign=-1)
        plan = (rev, tw)
        while len(_PLAN_CACHE) >= _PLAN_CACHE_MAX:
            _PLAN_CACHE.pop(next(iter(_PLAN_CACHE)))
        _PLAN_CACHE[m] = plan
    return plan


def fft_pow2(x: CDD, inverse: bool = False) -> CDD:
    """In-order radix-2 FFT (kernel e^{-2 pi i jm/M}); M must be a power of 2."""
    m = x[0][0].size
    if m & (m - 1):
        raise ValueError(f"length {m} is not a power of 2")
    if inverse:
        x = cdd_conj(x)
    rev, tw = _plan(m)
    comps = [np.array(a[rev]) for a in (x[0][0], x[0][1], x[1][0], x[1][1])]
    half = 1
    while half < m:
        step = 2 * half
        views = [c.reshape(m // step, step) for c in comps]
        u = ((views[0][:, :half], views[1][:, :half]),
             (views[2][:, :half], views[3][:, :half]))
        v = ((views[0][:, half:], views[1][:, half:]),
             (views[2][:, half:], views[3][:, half:]))
        t = cdd_mul(v, cdd_take(tw, slice(0, m // 2, m // step)))
        lo_ = cdd_add(u, t)
        hi_ = cdd_sub(u, t)
        views[0][:, :half], views[1][:, :half] = lo_[0]
        views[2][:, :half], views[3][:, :half] = lo_[1]
        views[0][:, half:], views[1][:, half:] = hi_[0]
        views[2][:, half:], views[3][:, half:] = hi_[1]
        half = step
    out: CDD = ((comps[0], comps[1]), (comps[2], comps[3]))
    if inverse:
        out = cdd_conj(out)
        out = (dd_scale(out[0], 1.0 / m), dd_scale(out[1], 1.0 / m))
    return out


def _chirp(n: int) -> tuple[int, CDD, CDD]:
    entry = _CHIRP_CACHE.get(n)
    if entry is None:
        m = 1
        while m < 2 * n - 1:
            m *= 2
        roots = root_powers(2 * n, 2 * n, sign=1)
        e = np.arange(n, dtype=np.int64) ** 2 % (2 * n)
        u = cdd_take(roots, e)
        b = cdd_zeros(m)
        ub = cdd_conj(u)
        for comp_dst, comp_src in zip((b[0][0], b[0][1], b[1][0], b[1][1]),
                                      (ub[0][0], ub[0][1], ub[1][0], ub[1][1])):
            comp_dst[:n] = comp_src
            if n > 1:
                comp_dst[m - n + 1:] = comp_src[1:][::-1]
        fb = fft_pow2(b)
        entry = (m, u, fb)
        while len(_CHIRP_CACHE) >= _PLAN_CACHE_MAX:
            _CHIRP_CACHE.pop(next(iter(_CHIRP_CACHE)))
        _CHIRP_CACHE[n] = entry
    return entry


def dft(x: CDD) -> CDD:
    """X[m] = sum_j x[j] e^{+2 pi i jm/N} for arbitrary N, in dd precision."""
    n = x[0][0].size
    if n == 1:
        return x
    m, u, fb = _chirp(n)
    a = cdd_zeros(m)
    xu = cdd_mul(x, u)
    for dst, src in zip((a[0][0], a[0][1], a[1][0], a[1][1]),
                        (xu[0][0], xu[0][1], xu[1][0], xu[1][1])):
        dst[:n] = src
    conv = fft_pow2(cdd_mul(fft_pow2(a), fb), inverse=True)
    return cdd_mul(cdd_take(conv, slice(0, n)), u)
