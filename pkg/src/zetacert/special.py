"""Digamma and Hurwitz zeta at real arguments with certified error bounds."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpz

from .hpreal import _DOWN, _UP, HPReal, context

# Guard bits used internally on top of the requested precision.
GUARD_BITS = 24


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # B_0..B_n, convention B_1 = -1/2
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b.append(-acc / (m + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = 32
    while size < n:
        size *= 2
    return _bernoulli_table(size)[n]


@lru_cache(maxsize=32)
def _digamma_coeffs(wp: int) -> tuple[int, tuple]:
    """Shift threshold and mpfr coefficients B_2k/(2k) for the asymptotic series."""
    # the smallest series term near 2k ~ 2 pi x is about exp(-2 pi x)
    threshold = int(math.ceil(wp * math.log(2) / (2 * math.pi))) + 4
    ctx = context(wp)
    coeffs = []
    k = 1
    while True:
        b = bernoulli(2 * k) / (2 * k)
        coeffs.append(ctx.div(mpz(b.numerator), mpz(b.denominator)))
        bound = abs(bernoulli(2 * k + 2)) / (2 * k + 2) / Fraction(threshold) ** (2 * k + 2)
        if bound < Fraction(1, 2 ** (wp + 2)) or k > 4 * wp:
            break
        k += 1
    return threshold, tuple(coeffs)


def digamma(x, prec: int = 192) -> HPReal:
    """psi(x) for x > 0 given as int, Fraction or HPReal.

    Shifts x upward with psi(x) = psi(x + m) - sum 1/(x + j) until the
    Bernoulli asymptotic series converges, and bounds the truncation by the
    first omitted term (the series envelops psi for real x > 0).
    """
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    if isinstance(x, HPReal):
        return _digamma_hp(x, prec)
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"digamma domain error: x = {x} <= 0")
    wp = prec + GUARD_BITS
    ctx = context(wp)
    threshold, coeffs = _digamma_coeffs(wp)

    # exact shift sum, rounded once per term
    m = max(0, math.ceil(threshold - x))
    num, den = x.numerator, x.denominator
    shift = ctx.div(0, 1)
    for j in range(m):
        shift = ctx.add(shift, ctx.div(mpz(den), mpz(num + j * den)))
    y = x + m
    yv = ctx.div(mpz(y.numerator), mpz(y.denominator))
    series, ops_scale = _psi_asymptotic(yv, ctx, coeffs, wp)

    v = ctx.sub(series, shift)
    # rounding: every op is correctly rounded, magnitudes bounded by |log y| + 1 and |shift|
    nops = 2 * len(coeffs) + 2 * m + 12
    err = _UP.mul_2exp(_UP.mul(nops, _UP.add(_UP.add(ops_scale, _UP.abs(shift)), 1)), -wp)
    err = _UP.add(err, _tail_bound(len(coeffs), y, wp))
    return HPReal(context(prec).plus(v), _UP.add(err, _UP.mul_2exp(_UP.abs(v), -prec)), prec)


def _psi_asymptotic(yv, ctx, coeffs, wp):
    # log y - 1/(2y) - sum_k B_2k / (2k y^2k), Horner in z = 1/y^2
    z = ctx.div(1, ctx.square(yv))
    acc = ctx.div(0, 1)
    for c in reversed(coeffs):
        acc = ctx.mul(ctx.add(acc, c), z)
    logy = ctx.log(yv)
    val = ctx.sub(ctx.sub(logy, ctx.div(1, ctx.mul_2exp(yv, 1))), acc)
    return val, _UP.add(_UP.abs(logy), 1)


def _tail_bound(nterms: int, y: Fraction, wp: int):
    k = nterms + 1
    b = abs(bernoulli(2 * k)) / (2 * k) / y ** (2 * k)
    return _UP.div(mpz(b.numerator), mpz(b.denominator))


def _digamma_hp(x: HPReal, prec: int) -> HPReal:
    lo = x.lower()
    if not lo > 0:
        raise ValueError("digamma domain error: interval not contained in (0, inf)")
    mid = Fraction(gmpy2.mpq(x.value))
    core = digamma(mid, prec)
    # psi' is decreasing on (0, inf) and psi'(t) <= 1/t + 1/t^2
    lo_q = Fraction(gmpy2.mpq(lo))
    slope = 1 / lo_q + 1 / lo_q**2
    extra = _UP.mul(_UP.div(mpz(slope.numerator), mpz(slope.denominator)), x.err)
    return core.widen(extra)


def hurwitz_zeta(i: int, alpha, prec: int = 192) -> HPReal:
    """zeta(i, alpha) = sum_{t >= 0} (t + alpha)^-i for integer i >= 2, rational alpha > 0.

    Euler-Maclaurin after N direct terms; the remainder after M Bernoulli
    terms is bounded by 4 |(i)_{2M}| / (2 pi)^{2M} (N+alpha)^{1-i-2M} / (i+2M-1).
    """
    if i < 2:
        raise ValueError(f"hurwitz zeta diverges for i = {i} < 2")
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    wp = prec + GUARD_BITS
    ctx = context(wp)
    big_n = max(8, int(wp * 0.12) + i)
    a_num, a_den = alpha.numerator, alpha.denominator

    direct = ctx.div(0, 1)
    for t in range(big_n):
        # (t + alpha)^-i = a_den^i / (t a_den + a_num)^i
        direct = ctx.add(direct, ctx.div(mpz(a_den) ** i, mpz(t * a_den + a_num) ** i))

    w = alpha + big_n
    wv = ctx.div(mpz(w.numerator), mpz(w.denominator))
    winv = ctx.div(1, wv)
    w_pow = ctx.pow(winv, i - 1)  # w^(1-i)
    integral = ctx.div(w_pow, i - 1)
    half = ctx.mul_2exp(ctx.mul(w_pow, winv), -1)

    em = ctx.div(0, 1)
    winv2 = ctx.square(winv)
    term_pow = ctx.mul(w_pow, winv)  # w^(-i), advanced by w^-2 each k
    rising = Fraction(i)  # (i)_{2k-1}
    k = 1
    two_pi = ctx.mul_2exp(ctx.const_pi(), 1)
    while True:
        b = bernoulli(2 * k) / math.factorial(2 * k) * rising
        term_pow = ctx.mul(term_pow, winv) if k == 1 else ctx.mul(term_pow, winv2)
        em = ctx.add(em, ctx.mul(ctx.div(mpz(b.numerator), mpz(b.denominator)), term_pow))
        rising_2k = rising * (i + 2 * k - 1)
        rem = _UP.div(
            _UP.mul(4 * mpz(rising_2k.numerator), _UP.pow(_UP.div(1, wv), i + 2 * k - 1)),
            _UP.mul(_UP.pow(_DOWN_2PI(), 2 * k), i + 2 * k - 1),
        )
        if rem < _DOWN.mul_2exp(integral, -wp) or k > 4 * wp:
            break
        rising = rising_2k * (i + 2 * k)
        k += 1
    v = ctx.add(ctx.add(ctx.add(direct, integral), half), em)
    # every partial quantity (direct terms, integral, half, EM terms) is at most v
    nops = 4 * big_n + 6 * k + 10
    err = _UP.add(rem, _UP.mul_2exp(_UP.mul(2 * nops, _UP.abs(v)), -wp))
    out = context(prec).plus(v)
    return HPReal(out, _UP.add(err, _UP.mul_2exp(_UP.abs(out), -prec)), prec)


@lru_cache(maxsize=1)
def _DOWN_2PI():
    return gmpy2.context(precision=64, round=gmpy2.RoundDown).mul_2exp(
        gmpy2.context(precision=64, round=gmpy2.RoundDown).const_pi(), 1
    )


def riemann_zeta(i: int, prec: int = 192) -> HPReal:
    return hurwitz_zeta(i, 1, prec)


def pi(prec: int = 192) -> HPReal:
    ctx = context(prec + 8)
    return HPReal.from_mpfr(ctx.const_pi(), _UP.mul_2exp(4, -prec - 8), prec)


def euler_gamma(prec: int = 192) -> HPReal:
    ctx = context(prec + 8)
    return HPReal.from_mpfr(ctx.const_euler(), _UP.mul_2exp(1, -prec - 8), prec)


def log_int(k: int, prec: int = 192) -> HPReal:
    return HPReal.exact(k, prec).log()


def digamma_float(x) -> "np.ndarray":
    """Vectorised float64 digamma for x > 0 (screening only, no error bound)."""
    import numpy as np

    x = np.asarray(x, dtype=np.float64).copy()
    acc = np.zeros_like(x)
    small = x < 10.0
    while small.any():
        acc[small] -= 1.0 / x[small]
        x[small] += 1.0
        small = x < 10.0
    z = 1.0 / (x * x)
    series = z * (1 / 12 - z * (1 / 120 - z * (1 / 252 - z * (1 / 240 - z / 132))))
    return acc + np.log(x) - 0.5 / x - series
