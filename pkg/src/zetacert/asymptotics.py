"""Growth rates of the linear forms: the saddle point x0, C2, and the beta-side limit."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .hpreal import HPReal, IndeterminateError, hsum
from .params import BetaCollection, ZetaCollection


@dataclass(frozen=True)
class AsymptoticProfile:
    x0: HPReal
    x1: HPReal
    c2: HPReal
    log_g: HPReal
    pnt_part: int  # sum_j max(m2 - 2 delta_min, m2 - delta_j)


def _hp(v, prec):
    return HPReal.coerce(v, prec)


def eval_fug(col: ZetaCollection, x, prec: int = 192) -> tuple[HPReal, HPReal, HPReal]:
    """f(x), u(x) and log g(x); g itself overflows hardware floats for real parameters."""
    x = _hp(x, prec)
    if x.sign() <= 0:
        raise ValueError("eval_fug domain error: x must be positive")
    m1, m2 = col.m1, col.m2
    w = 2 * m1 + m2

    f = _pow4((x + w) / x)
    f = f * (x + m1) / (x + (m1 + m2))
    for d in col.deltas:
        f = f * (x + (m1 + d)) / (x + (m1 + m2 - d))

    u = HPReal.exact(-4 * w, prec)
    u = u + m2 * (1 - HPReal.exact(m1 * (m1 + m2), prec) / ((x + m1) * (x + (m1 + m2))))
    for d in col.deltas:
        u = u + (m2 - 2 * d) * (1 - HPReal.exact((m1 + d) * (m1 + m2 - d), prec) / ((x + (m1 + d)) * (x + (m1 + m2 - d))))

    return f, u, log_g(col, x, prec)


def _pow4(v: HPReal) -> HPReal:
    sq = v * v
    return sq * sq


def log_f(col: ZetaCollection, x: HPReal) -> HPReal:
    m1, m2 = col.m1, col.m2
    w = 2 * m1 + m2
    terms = [4 * ((x + w).log() - x.log()), (x + m1).log() - (x + (m1 + m2)).log()]
    for d in col.deltas:
        terms.append((x + (m1 + d)).log() - (x + (m1 + m2 - d)).log())
    return hsum(terms, x.prec)


def u_value(col: ZetaCollection, x: HPReal) -> HPReal:
    return eval_fug(col, x, x.prec)[1]


def log_g(col: ZetaCollection, x, prec: int = 192) -> HPReal:
    x = _hp(x, prec)
    m1, m2 = col.m1, col.m2
    w = 2 * m1 + m2
    terms = [w * HPReal.exact(108, prec).log()]
    for d in col.deltas:
        k = m2 - 2 * d
        terms.append(k * HPReal.exact(k, prec).log())
    terms.append(4 * w * (x + w).log())
    terms.append(m1 * (x + m1).log())
    terms.append(-(m1 + m2) * (x + (m1 + m2)).log())
    for d in col.deltas:
        terms.append((m1 + d) * (x + (m1 + d)).log())
        terms.append(-(m1 + m2 - d) * (x + (m1 + m2 - d)).log())
    return hsum(terms, prec)


def _bisect(sign_at, lo: Fraction, hi: Fraction, tol: Fraction, sign_lo: int):
    """Shrink [lo, hi] around the sign change; ``sign_at`` returns -1, 0 or +1."""
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = sign_at(mid)
        if s == 0:
            return mid, mid
        if s == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def find_x0(col: ZetaCollection, prec: int = 192) -> AsymptoticProfile:
    """x1 = root of u, then x0 = root of f - 1 on (0, x1), both by certified bisection."""
    col.check()
    tol = Fraction(1, 2 ** (prec // 2 + 4))

    def sign_u(x: Fraction) -> int:
        return u_value(col, HPReal.exact(x, prec)).sign()

    hi = Fraction(1)
    while sign_u(hi) <= 0:
        hi *= 2
        if hi > 2**64:
            raise RuntimeError("no sign change of u found; feasibility check is inconsistent")
    lo = Fraction(1, 2**prec)
    if sign_u(lo) >= 0:
        raise RuntimeError("u is not negative near 0; feasibility check is inconsistent")
    u_lo, u_hi = _bisect(sign_u, lo, hi, tol, -1)
    x1 = _interval(u_lo, u_hi, prec)

    def sign_logf(x: Fraction) -> int:
        return log_f(col, HPReal.exact(x, prec)).sign()

    lo = Fraction(1, 2**prec)
    if sign_logf(lo) <= 0 or sign_logf(u_hi) >= 0:
        raise RuntimeError("f - 1 has no sign change on (0, x1); feasibility check is inconsistent")
    f_lo, f_hi = _bisect(sign_logf, lo, u_hi, tol, 1)
    x0 = _interval(f_lo, f_hi, prec)

    lg = log_g(col, x0, prec)
    pnt = sum(max(col.m2 - 2 * col.delta_min, col.m2 - d) for d in col.deltas)
    return AsymptoticProfile(x0=x0, x1=x1, c2=lg + pnt, log_g=lg, pnt_part=pnt)


def _interval(lo: Fraction, hi: Fraction, prec: int) -> HPReal:
    mid = (lo + hi) / 2
    v = HPReal.exact(mid, prec)
    half = (hi - lo) / 2
    return v.widen(_frac_up(half))


def _frac_up(q: Fraction):
    from .hpreal import _UP

    return _UP.div(q.numerator, q.denominator)


# ---------------------------------------------------------------- beta side


@dataclass(frozen=True)
class BetaGrowth:
    value: HPReal  # log lim r_n^(1/n)
    product: HPReal  # P = prod t_j at the critical point
    ts: tuple[HPReal, ...]
    fallback_used: bool = False


def _beta_objective_float(col: BetaCollection, ts) -> float:
    e0 = col.eta0
    acc = 0.0
    prod = 1.0
    for e, t in zip(col.etas, ts):
        if not 0.0 < t < 1.0:
            return -math.inf
        acc += e * math.log(t) + (e0 - 2 * e) * math.log1p(-t)
        prod *= t
    return e0 * math.log(4 * e0) + acc - e0 * math.log1p(prod)


def _t_of_p(e0: int, e: int, p: HPReal) -> HPReal:
    return (e - (e0 - e) * p) / ((e0 - e) - e * p)


def beta_r_limit(col: BetaCollection, prec: int = 192) -> BetaGrowth:
    """log lim r_n^(1/n) = eta0 log(4 eta0) + max_t [sum eta_j log t_j + (eta0 - 2 eta_j) log(1 - t_j) - eta0 log(1 + prod t)].

    At an interior maximum every coordinate satisfies
    t_j = (eta_j - (eta0 - eta_j) P) / ((eta0 - eta_j) - eta_j P) with P = prod t_j,
    so the search collapses to the scalar equation sum log t_j(P) = log P,
    whose left side decreases and right side increases in P.
    """
    col.check()
    e0 = col.eta0
    p_max = min(Fraction(e, e0 - e) for e in col.etas)
    tol = Fraction(1, 2 ** (prec // 2 + 4))

    def resid(p: Fraction) -> int:
        ph = HPReal.exact(p, prec)
        terms = [_t_of_p(e0, e, ph).log() for e in col.etas]
        return (hsum(terms, prec) - ph.log()).sign()

    lo, hi = Fraction(1, 2**prec), p_max
    try:
        if p_max >= 1 or resid(lo) <= 0:
            raise IndeterminateError("stationarity bracket invalid")
        # walk the upper end inward until the residual is negative
        hi_try = p_max * (1 - Fraction(1, 2**20))
        while resid(hi_try) >= 0:
            hi_try = (hi_try + p_max) / 2
            if p_max - hi_try < tol:
                raise IndeterminateError("no sign change below p_max")
        p_lo, p_hi = _bisect(resid, lo, hi_try, tol, 1)
        p = _interval(p_lo, p_hi, prec)
        ts = tuple(_t_of_p(e0, e, p) for e in col.etas)
        for t in ts:
            if not (t.sign() > 0 and (1 - t).sign() > 0):
                raise IndeterminateError("critical point outside the unit cube")
    except IndeterminateError:
        return _beta_fallback(col, prec)

    terms = [HPReal.exact(4 * e0, prec).log() * e0]
    for e, t in zip(col.etas, ts):
        terms.append(e * t.log())
        terms.append((e0 - 2 * e) * (1 - t).log())
    terms.append(-e0 * (1 + p).log())
    return BetaGrowth(hsum(terms, prec), p, ts)


def _beta_fallback(col: BetaCollection, prec: int) -> BetaGrowth:
    val, ts = coordinate_ascent(col, starts=10, seed=0)
    # float optimizer: error is the float resolution of the objective, taken generously
    v = HPReal.exact(Fraction(val), prec).widen(max(1e-9, abs(val) * 1e-12))
    prod = 1.0
    for t in ts:
        prod *= t
    return BetaGrowth(
        v,
        HPReal.exact(Fraction(prod), prec).widen(1e-9),
        tuple(HPReal.exact(Fraction(t), prec).widen(1e-9) for t in ts),
        fallback_used=True,
    )


def _golden_max(fn, lo: float, hi: float, tol: float) -> float:
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = fn(d)
    return (a + b) / 2


def coordinate_ascent(
    col: BetaCollection, starts: int = 10, seed: int = 0, tol: float = 1e-12, max_sweeps: int = 5000
) -> tuple[float, tuple[float, ...]]:
    """Multi-start cyclic coordinate ascent with golden-section line maximisation (float64)."""
    rng = random.Random(seed)
    e0 = col.eta0
    best_val, best_ts = -math.inf, ()
    for _ in range(starts):
        ts = [rng.uniform(0.05, 0.95) for _ in col.etas]
        val = _beta_objective_float(col, ts)
        for _sweep in range(max_sweeps):
            prev = val
            for j, e in enumerate(col.etas):
                rest = 1.0
                for i, t in enumerate(ts):
                    if i != j:
                        rest *= t

                def line(t, e=e, rest=rest):
                    return e * math.log(t) + (e0 - 2 * e) * math.log1p(-t) - e0 * math.log1p(rest * t)

                ts[j] = _golden_max(line, 1e-15, 1 - 1e-15, tol)
            val = _beta_objective_float(col, ts)
            if abs(val - prev) <= tol:
                break
        if val > best_val:
            best_val, best_ts = val, tuple(ts)
    return best_val, best_ts


# ---------------------------------------------------------------- float64 screening


def _float_root(fn, lo: float, hi: float, iters: int = 200) -> float:
    # fn(lo) and fn(hi) have opposite signs
    s_lo = fn(lo) > 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if (fn(mid) > 0) == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def c2_float(col: ZetaCollection) -> tuple[float, float]:
    """(x0, C2) in float64; same bracketing as :func:`find_x0`, no error tracking."""
    m1, m2 = col.m1, col.m2
    w = 2 * m1 + m2
    pairs = [(m1 + d, m1 + m2 - d, m2 - 2 * d) for d in col.deltas]

    def u(x):
        v = -4 * w + m2 * (1 - m1 * (m1 + m2) / ((x + m1) * (x + m1 + m2)))
        for a, b, k in pairs:
            v += k * (1 - a * b / ((x + a) * (x + b)))
        return v

    def logf(x):
        v = 4 * (math.log(x + w) - math.log(x)) + math.log(x + m1) - math.log(x + m1 + m2)
        for a, b, _ in pairs:
            v += math.log(x + a) - math.log(x + b)
        return v

    hi = 1.0
    while u(hi) <= 0:
        hi *= 2
    x1 = _float_root(u, 1e-300, hi)
    x0 = _float_root(logf, 1e-300, x1)
    lg = w * math.log(108) + sum(k * math.log(k) for _, _, k in pairs)
    lg += 4 * w * math.log(x0 + w) + m1 * math.log(x0 + m1) - (m1 + m2) * math.log(x0 + m1 + m2)
    for a, b, _ in pairs:
        lg += a * math.log(x0 + a) - b * math.log(x0 + b)
    pnt = sum(max(col.m2 - 2 * col.delta_min, col.m2 - d) for d in col.deltas)
    return x0, lg + pnt


def beta_r_limit_float(col: BetaCollection) -> float:
    """Float64 stationarity solve for the beta growth rate."""
    e0 = col.eta0
    p_max = min(e / (e0 - e) for e in col.etas)

    def t(e, p):
        return (e - (e0 - e) * p) / ((e0 - e) - e * p)

    def resid(p):
        return sum(math.log(t(e, p)) for e in col.etas) - math.log(p)

    p = _float_root(resid, 1e-300, p_max * (1 - 1e-15))
    ts = [t(e, p) for e in col.etas]
    return _beta_objective_float(col, ts)
