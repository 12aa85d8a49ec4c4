"""Desk-scale linear forms: R_n(t), partial fractions, coefficients, series and integrality.

Both rational functions are kept as ``scalar * prod(B t + C) / prod(B' t + C')``
with small integer B, C.  That form makes exact evaluation a product of
integers, and makes the local expansion at a pole a product of integer
linear polynomials, which is how the partial-fraction coefficients are
extracted (no symbolic differentiation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .geometry import build_floor_matrix, nu0_at
from .hpreal import _DOWN, _UP, HPReal, hsum
from .params import BetaCollection, ZetaCollection
from .special import hurwitz_zeta, pi
from .tables import lcm_upto, primes_in

THETAS = (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))
MAX_COEFFS = 10**6
MAX_WORK = 5 * 10**7  # poles * factors * order, a proxy for expansion cost


class PoleError(ZeroDivisionError):
    """R evaluated at a pole; ``order`` and ``shift`` locate it as 1/(t + k)^i."""

    def __init__(self, order: int, shift: int, t: Fraction):
        self.order, self.shift, self.t = order, shift, t
        super().__init__(f"pole of order i={order} at t={t} (k={shift})")


class DeskScaleError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _require_even(n: int) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"n must be an even integer >= 2 (got {n})")


# ---------------------------------------------------------------- rational functions


@dataclass(frozen=True)
class LinearProduct:
    """scalar * prod(B t + C) / prod(B' t + C'); poles sit at t = -(k + offset)."""

    scalar: Fraction
    num: tuple[tuple[int, int], ...]
    den: tuple[tuple[int, int], ...]
    offset: Fraction = Fraction(0)  # 0 for zeta, 1/2 for beta

    @property
    def degree(self) -> int:
        return len(self.num) - len(self.den)

    def multiplicity(self, t: Fraction) -> int:
        """Pole order at t (negative for a zero)."""
        p, q = t.numerator, t.denominator
        zd = sum(1 for b, c in self.den if b * p + c * q == 0)
        zn = sum(1 for b, c in self.num if b * p + c * q == 0)
        return zd - zn

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        p, q = t.numerator, t.denominator
        num = [b * p + c * q for b, c in self.num]
        den = [b * p + c * q for b, c in self.den]
        zn, zd = num.count(0), den.count(0)
        if zd or zn:
            order = zd - zn
            if order > 0:
                raise PoleError(order, int(-t - self.offset), t)
            if order < 0:
                return Fraction(0)
            # removable: cancel vanishing factors against their slopes
            num = [v for v in num if v] + [b * q for (b, c), v in zip(self.num, num) if not v]
            den = [v for v in den if v] + [b * q for (b, c), v in zip(self.den, den) if not v]
        # each factor carried a 1/q; net power q^(#den - #num)
        qpow = len(self.den) - len(self.num)
        top, bot = math.prod(num), math.prod(den)
        if qpow >= 0:
            top *= q**qpow
        else:
            bot *= q ** (-qpow)
        return self.scalar * Fraction(top, bot)


@lru_cache(maxsize=64)
def rational_function(col, n: int) -> LinearProduct:
    """R_n for a zeta collection, R~_n for a beta collection."""
    _require_even(n)
    col.check()
    if isinstance(col, ZetaCollection):
        return _zeta_product(col, n)
    return _beta_product(col, n)


def _zeta_product(col: ZetaCollection, n: int) -> LinearProduct:
    m1, m2 = col.m1, col.m2
    L = (2 * m1 + m2) * n
    scalar = Fraction(2**L * 3**L * math.prod(math.factorial((m2 - 2 * d) * n) for d in col.deltas))
    scalar /= math.factorial(n) ** (8 * m1 + 3 * m2)
    num = [(2, m2 * n)]
    # theta = 1/2, 1/3, 2/3 rising factorials, written with integer slopes;
    # the 2^-L and 3^-2L this costs are folded into the scalar above
    num += [(2, 2 * (r - m1 * n) + 1) for r in range(L)]
    num += [(3, 3 * (r - m1 * n) + 1) for r in range(L)]
    num += [(3, 3 * (r - m1 * n) + 2) for r in range(L)]
    # (t - m1 n)(t - m1 n + 1)_L / (t)_{m2 n + 1}, with the common factor cancelled
    num += [(1, c) for c in range(-m1 * n, 0)]
    num += [(1, c) for c in range(m2 * n + 1, (m1 + m2) * n + 1)]
    den = [(1, d * n + r) for d in col.deltas for r in range((m2 - 2 * d) * n + 1)]
    return LinearProduct(scalar, tuple(num), tuple(den))


def _beta_product(col: BetaCollection, n: int) -> LinearProduct:
    h0 = col.h0(n)
    e0 = col.eta0
    scalar = Fraction(4 ** (h0 - 1) * math.prod(math.factorial((e0 - 2 * e) * n) for e in col.etas))
    scalar /= math.factorial(n) ** e0
    num = [(2, h0)] + [(1, 1 + r) for r in range(h0 - 1)]
    den = []
    for e in col.etas:
        # t + e n + 1/2 + r = (2t + 2(e n + r) + 1) / 2
        width = (e0 - 2 * e) * n + 1
        den += [(2, 2 * (e * n + r) + 1) for r in range(width)]
        scalar *= 2**width
    return LinearProduct(scalar, tuple(num), tuple(den), Fraction(1, 2))


def eval_r(col, n: int, t) -> Fraction:
    return rational_function(col, n)(t)


# ---------------------------------------------------------------- partial fractions


@dataclass(frozen=True)
class PartialFractionTable:
    family: str
    n: int
    collection: object = field(repr=False)
    coeffs: dict = field(repr=False)  # (i, k) -> Fraction, zeros included
    k_range: tuple[int, int]
    i_range: tuple[int, int]

    def __getitem__(self, key) -> Fraction:
        return self.coeffs[key]

    @property
    def offset(self) -> Fraction:
        return Fraction(1, 2) if self.family == "beta" else Fraction(0)

    def ks(self) -> range:
        return range(self.k_range[0], self.k_range[1] + 1)

    def is_(self) -> range:
        return range(self.i_range[0], self.i_range[1] + 1)

    def reconstruct(self, t) -> Fraction:
        t = Fraction(t)
        total = Fraction(0)
        for (i, k), a in self.coeffs.items():
            if a:
                total += a / (t + k + self.offset) ** i
        return total

    def column_sum(self, i: int) -> Fraction:
        return sum((self.coeffs[i, k] for k in self.ks()), Fraction(0))


def _series_mul_linear(series: list[int], a: int, b: int, order: int) -> list[int]:
    # (s_0 + s_1 e + ...) (a + b e), truncated to `order` terms
    out = [a * series[0]]
    for j in range(1, order):
        out.append(a * series[j] + b * series[j - 1])
    return out


def _local_expansion(lp: LinearProduct, p0: int, q0: int, order: int):
    """Laurent data of lp at t0 = p0/q0: (pole order m, c_0..c_{order-1}) with
    lp(t0 + e) = e^-m * sum c_j e^j."""
    # factor B t + C = (1/q0) ((B p0 + C q0) + B q0 e)
    num = [1] + [0] * (order - 1)
    den = [1] + [0] * (order - 1)
    scale = lp.scalar * Fraction(q0) ** (len(lp.den) - len(lp.num))
    m = 0
    for b, c in lp.num:
        a0 = b * p0 + c * q0
        if a0 == 0:
            m -= 1
            scale *= b * q0
        else:
            num = _series_mul_linear(num, a0, b * q0, order)
    for b, c in lp.den:
        a0 = b * p0 + c * q0
        if a0 == 0:
            m += 1
            scale /= b * q0
        else:
            den = _series_mul_linear(den, a0, b * q0, order)
    # exact series division num / den
    d0 = den[0]
    out: list[Fraction] = []
    for j in range(order):
        acc = Fraction(num[j])
        for l in range(1, j + 1):
            acc -= den[l] * out[j - l]
        out.append(acc / d0)
    return m, [scale * v for v in out]


def _k_range(col, n: int) -> tuple[int, int]:
    if isinstance(col, ZetaCollection):
        return col.delta_min * n, (col.m2 - col.delta_min) * n
    return col.big_n(n), col.h0(n) - col.big_n(n) - 1


@lru_cache(maxsize=32)
def partial_fractions(col, n: int) -> PartialFractionTable:
    """Exact a_{i,k} (or a~_{i,k}) by expanding every factor around each pole."""
    _require_even(n)
    is_zeta = isinstance(col, ZetaCollection)
    top = col.s + 1 if is_zeta else col.s
    k_lo, k_hi = _k_range(col, n)
    count = top * (k_hi - k_lo + 1)
    if count > MAX_COEFFS:
        raise DeskScaleError(f"{count} coefficients exceed the desk-scale guard of {MAX_COEFFS}")
    lp = rational_function(col, n)
    work = (k_hi - k_lo + 1) * (len(lp.num) + len(lp.den)) * top
    if work > MAX_WORK:
        raise DeskScaleError(f"expansion work {work} exceeds the desk-scale guard of {MAX_WORK}")
    coeffs = {}
    for k in range(k_lo, k_hi + 1):
        p0, q0 = (-k, 1) if is_zeta else (-(2 * k + 1), 2)
        m, c = _local_expansion(lp, p0, q0, top)
        if m > top:
            raise ArithmeticError(f"pole order {m} at k={k} exceeds {top}")
        for i in range(1, top + 1):
            # coefficient of e^-i is c_{m - i}
            coeffs[i, k] = c[m - i] if 0 <= m - i < top else Fraction(0)
    return PartialFractionTable(
        "zeta" if is_zeta else "beta", n, col, coeffs, (k_lo, k_hi), (1, top)
    )


# ---------------------------------------------------------------- linear-form coefficients


@dataclass(frozen=True)
class LinearFormCoefficients:
    rho_i: dict  # odd i in [3, s] -> Fraction
    rho0: dict  # theta -> Fraction
    column_sums: dict = field(default_factory=dict, repr=False)  # every i -> sum_k a_{i,k}


def _inverse_power_prefix(theta: Fraction, i: int, upto: int) -> list[Fraction]:
    # H[k] = sum_{l=0}^{k} (l + theta)^-i
    out, acc = [], Fraction(0)
    for l in range(upto + 1):
        acc += 1 / (l + theta) ** i
        out.append(acc)
    return out


def rho0(table: PartialFractionTable, theta) -> Fraction:
    theta = Fraction(theta)
    total = Fraction(0)
    for i in table.is_():
        h = _inverse_power_prefix(theta, i, table.k_range[1])
        for k in table.ks():
            a = table.coeffs[i, k]
            if a:
                total += a * h[k]
    return -total


def linear_form_coefficients(table: PartialFractionTable, thetas=THETAS) -> LinearFormCoefficients:
    if table.family != "zeta":
        raise NotImplementedError("linear-form coefficients are only defined for the zeta family")
    s = table.collection.s
    sums = {i: table.column_sum(i) for i in table.is_()}
    return LinearFormCoefficients(
        rho_i={i: sums[i] for i in range(3, s + 1, 2)},
        rho0={Fraction(th): rho0(table, th) for th in thetas},
        column_sums=sums,
    )


def rho_form(coeffs: LinearFormCoefficients, theta, prec: int = 256) -> HPReal:
    """rho_{0,theta} + sum_i rho_i zeta(i, theta)."""
    theta = Fraction(theta)

    def terms(wp):
        yield HPReal.exact(coeffs.rho0[theta], wp)
        for i, r in coeffs.rho_i.items():
            if r:
                yield HPReal.exact(r, wp) * hurwitz_zeta(i, theta, wp)

    return _guarded_sum(terms, prec)


def _guarded_sum(terms, prec: int) -> HPReal:
    """Sum terms(wp), doubling wp until the cancellation leaves prec good bits."""
    wp = prec
    while True:
        out = hsum(terms(wp), wp)
        if out.sign() != 0 and float(out.err) <= abs(float(out)) * 2.0 ** (8 - prec) or wp > 8 * prec:
            return out.with_prec(prec)
        wp *= 2


# ---------------------------------------------------------------- direct series


def _laurent_at_infinity(lp: LinearProduct, nterms: int) -> list[Fraction]:
    """g_j with lp(u) = scalar * u^deg * sum_j g_j u^-j, via power sums and a series exp."""
    # log prod(B + C w) = sum log B + sum_j (-1)^(j+1) (C/B)^j w^j / j
    logs = [Fraction(0)] * nterms
    for sign, factors in ((1, lp.num), (-1, lp.den)):
        for b in sorted({b for b, _ in factors}):
            cs = [c for bb, c in factors if bb == b]
            pw = list(cs)
            for j in range(1, nterms):
                psum = sum(pw)
                if psum:
                    logs[j] += sign * Fraction((-1) ** (j + 1) * psum, j * b**j)
                pw = [x * c for x, c in zip(pw, cs)]
    lead = Fraction(math.prod(b for b, _ in lp.num), math.prod(b for b, _ in lp.den))
    g = [lead]
    for j in range(1, nterms):
        acc = Fraction(0)
        for l in range(1, j + 1):
            if logs[l]:
                acc += l * logs[l] * g[j - l]
        g.append(acc / j)
    return g


def _cauchy_radius(lp: LinearProduct) -> Fraction:
    r = max((Fraction(abs(c), abs(b)) for b, c in lp.den), default=Fraction(0))
    return 2 * r + 1


def _cauchy_max(lp: LinearProduct, rho: Fraction):
    """Upper bound for |prod(B + C w) / prod(B' + C' w)| on |w| = 1/rho (64-bit, rounded up)."""
    v = _UP.plus(1)
    for b, c in lp.num:
        q = abs(b) + Fraction(abs(c)) / rho
        v = _UP.mul(v, _UP.div(q.numerator, q.denominator))
    for b, c in lp.den:
        q = abs(b) - Fraction(abs(c)) / rho
        v = _UP.div(v, _DOWN.div(q.numerator, q.denominator))
    return v


def _fr_up(q: Fraction):
    return _UP.div(abs(q.numerator), q.denominator)


@dataclass(frozen=True)
class SeriesValue:
    value: HPReal
    terms: int
    tail: str
    tail_bound: object


def _term_hp(lp: LinearProduct, u: Fraction, prec: int) -> HPReal:
    return HPReal.exact(lp(u), prec)


def _sum_series(lp: LinearProduct, shift: Fraction, t_first: int, alternating: bool, prec: int, tail: str,
                max_terms: int) -> SeriesValue:
    """sum_{t >= t_first} sigma^(t - t_first) lp(t + shift)."""
    d = -lp.degree
    if d < 2 and not alternating:
        raise ArithmeticError("series diverges: degree must be <= -2")
    rho = _cauchy_radius(lp)
    T = max(t_first + 64, math.ceil(32 * rho))
    if tail == "comparison":
        return _sum_comparison(lp, shift, t_first, alternating, prec, max_terms)

    partial = hsum(
        (_term_hp(lp, t + shift, prec) * (-1 if alternating and (t - t_first) % 2 else 1)
         for t in range(t_first, T + 1)),
        prec,
    )
    target = _UP.mul_2exp(_UP.add(_UP.abs(partial.value), 1), -prec)

    alpha = T + 1 + shift  # first u in the tail
    ratio = rho / alpha
    mg = _cauchy_max(lp, rho)
    scal = _fr_up(lp.scalar)
    J = 1
    while True:
        # sum_{u >= alpha} |scalar| Mg (rho/u)^J u^-d / (1 - rho/alpha)
        p = d + J
        q = Fraction(rho**J, 1) / (1 - ratio) / ((alpha - 1) ** (p - 1) * (p - 1))
        bound = _UP.mul(_UP.mul(scal, mg), _fr_up(q))
        if bound <= target or J > 600:
            break
        J += 1
    g = _laurent_at_infinity(lp, J)
    sign0 = -1 if alternating and (T + 1 - t_first) % 2 else 1
    tail_terms = []
    for j, gj in enumerate(g):
        if not gj:
            continue
        m = d + j
        if alternating:
            z = (hurwitz_zeta(m, alpha / 2, prec) - hurwitz_zeta(m, (alpha + 1) / 2, prec)) / (2**m)
        else:
            z = hurwitz_zeta(m, alpha, prec)
        tail_terms.append(HPReal.exact(sign0 * lp.scalar * gj, prec) * z)
    tail_val = hsum(tail_terms, prec).widen(bound)
    return SeriesValue(partial + tail_val, T + 1 - t_first, "laurent", bound)


def _sum_comparison(lp, shift, t_first, alternating, prec, max_terms) -> SeriesValue:
    """Plain partial sum; tail from |u^d R(u)| <= K over the last terms (or the alternating remainder)."""
    d = -lp.degree
    partial = HPReal.exact(0, prec)
    t, count = t_first, 0
    while True:
        last = []
        for _ in range(10):
            v = lp(t + shift)
            last.append((v, t + shift))
            partial = partial + _term_hp(lp, t + shift, prec) * (-1 if alternating and (t - t_first) % 2 else 1)
            t += 1
        count += 10
        if alternating:
            bound = _fr_up(abs(lp(t + shift)))
        else:
            K = 2 * max(abs(v) * u**d for v, u in last)
            bound = _fr_up(K / ((d - 1) * (t - 1 + shift) ** (d - 1)))
        target = _UP.mul_2exp(_UP.add(_UP.abs(partial.value), 1), -prec)
        if bound <= target or count >= max_terms:
            break
    return SeriesValue(partial.widen(bound), count, "comparison", bound)


def direct_series(col, n: int, theta=1, prec: int = 256, tail: str = "laurent",
                  max_terms: int = 100_000) -> SeriesValue:
    """S_{n,theta} = sum_{t>=1} R_n(t + theta), or r~_n = sum_{v>=0} (-1)^v R~_n(v) for beta."""
    lp = rational_function(col, n)
    if isinstance(col, ZetaCollection):
        return _sum_series(lp, Fraction(theta), 1, False, prec, tail, max_terms)
    return _sum_series(lp, Fraction(0), 0, True, prec, tail, max_terms)


# ---------------------------------------------------------------- beta resummation


@dataclass(frozen=True)
class BetaLinearForm:
    """r~_n = rho0 + sum_i rho_i 2^i beta(i), from the alternating resummation of each pole."""

    rho0: Fraction
    rho_i: dict  # i -> Fraction, coefficient of 2^i beta(i)


def beta_linear_form(table: PartialFractionTable) -> BetaLinearForm:
    if table.family != "beta":
        raise ValueError("beta_linear_form expects a beta table")
    # sum_{v>=0} (-1)^v (v + k + 1/2)^-i = (-1)^k [2^i beta(i) - sum_{m<k} (-1)^m (m + 1/2)^-i]
    rho_i = {i: Fraction(0) for i in table.is_()}
    r0 = Fraction(0)
    k_hi = table.k_range[1]
    for i in table.is_():
        prefix, acc = [], Fraction(0)
        for m in range(k_hi + 1):
            prefix.append(acc)  # sum over m' < m
            acc += (-1) ** m / (m + Fraction(1, 2)) ** i
        for k in table.ks():
            a = table.coeffs[i, k]
            if a:
                sgn = -1 if k % 2 else 1
                rho_i[i] += sgn * a
                r0 -= sgn * a * prefix[k]
    return BetaLinearForm(r0, rho_i)


def dirichlet_beta(i: int, prec: int = 256) -> HPReal:
    if i == 1:
        return pi(prec) / 4
    q = Fraction(1, 4)
    return (hurwitz_zeta(i, q, prec) - hurwitz_zeta(i, 3 * q, prec)) / (4**i)


def beta_resummation(form: BetaLinearForm, prec: int = 256) -> HPReal:
    def terms(wp):
        yield HPReal.exact(form.rho0, wp)
        for i, r in form.rho_i.items():
            if r:
                yield HPReal.exact(r * 2**i, wp) * dirichlet_beta(i, wp)

    return _guarded_sum(terms, prec)


@dataclass(frozen=True)
class BetaDecomposition:
    direct: HPReal
    resummed: HPReal
    form: BetaLinearForm
    odd_vanish: bool  # no beta(odd) terms survive
    scaled_integral: bool  # Phi~^-1 d^s times every coefficient is an integer

    @property
    def agree(self) -> bool:
        return self.direct.agrees_with(self.resummed)


def beta_decomposition(col: BetaCollection, n: int, prec: int = 256) -> BetaDecomposition:
    """r~_n two ways, plus the shape of its expansion in 1 and 2^i beta(i)."""
    table = partial_fractions(col, n)
    form = beta_linear_form(table)
    direct = direct_series(col, n, prec=prec).value
    resummed = beta_resummation(form, prec)
    scale = Fraction(lcm_upto(col.m_tilde(n)) ** col.s) / phi_factor(col, n).value
    coeffs = [form.rho0] + [r * 2**i for i, r in form.rho_i.items()]
    return BetaDecomposition(
        direct, resummed, form,
        odd_vanish=all(r == 0 for i, r in form.rho_i.items() if i % 2),
        scaled_integral=all(_is_int(scale * c) for c in coeffs),
    )


# ---------------------------------------------------------------- Phi factors


@dataclass(frozen=True)
class PhiFactor:
    n: int
    exponents: dict  # prime -> exponent
    value: Fraction
    prime_range: tuple[int, int]  # (lower bound squared, exclusive; upper bound inclusive)


def phi_range(col, n: int) -> tuple[int, int]:
    if isinstance(col, ZetaCollection):
        return 3 * (2 * col.m1 + col.m2) * n, col.mid_width * n
    return 2 * col.h0(n), col.m_tilde(n)


@lru_cache(maxsize=32)
def phi_factor(col, n: int) -> PhiFactor:
    _require_even(n)
    lo_sq, hi = phi_range(col, n)
    matrix = build_floor_matrix(col)
    exps = {}
    value = Fraction(1)
    for p in primes_in(lo_sq, hi):
        e = nu0_at(matrix, Fraction(n % p, p))
        exps[p] = e
        value *= Fraction(p) ** e
    return PhiFactor(n, exps, value, (lo_sq, hi))


# ---------------------------------------------------------------- integrality


@dataclass
class CheckResult:
    name: str
    description: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, good: bool, where) -> None:
        if good:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = str(where)


@dataclass
class IntegralityReport:
    family: str
    n: int
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def table(self) -> str:
        lines = [f"{'check':<8}{'result':<8}{'pass':>8}{'fail':>8}  description"]
        for c in self.checks:
            lines.append(
                f"{c.name:<8}{'pass' if c.ok else 'FAIL':<8}{c.passed:>8}{c.failed:>8}  {c.description}"
            )
        return "\n".join(lines)


def _is_int(q: Fraction) -> bool:
    return q.denominator == 1


def integrality_suite(col, n: int, strong: bool = False) -> IntegralityReport:
    """Exact divisibility checks on the coefficients; ``strong`` adds the Phi-factor claims (n > s^2)."""
    _require_even(n)
    if strong and n <= col.s**2:
        raise PreconditionError(f"strong checks need n > s^2 = {col.s ** 2} (got n = {n})")
    table = partial_fractions(col, n)
    if table.family == "zeta":
        return IntegralityReport("zeta", n, _zeta_checks(col, n, table, strong))
    return IntegralityReport("beta", n, _beta_checks(col, n, table, strong))


def _zeta_checks(col: ZetaCollection, n: int, table: PartialFractionTable, strong: bool):
    s = col.s
    D = lcm_upto(col.mid_width * n)
    checks = []
    a = CheckResult("a", "D^(s+1-i) a_ik integral")
    for (i, k), v in table.coeffs.items():
        a.record(_is_int(D ** (s + 1 - i) * v), (i, k))
    checks.append(a)

    # vanishing beyond the pole order, with deltas sorted ascending
    order = sorted(range(s + 1), key=lambda j: col.deltas[j])
    sorted_d = [col.deltas[j] for j in order]
    o = CheckResult("order", "a_ik = 0 for k > (m2 - delta_i) n, deltas sorted")
    for (i, k), v in table.coeffs.items():
        if k > (col.m2 - sorted_d[i - 1]) * n:
            o.record(v == 0, (i, k))
    checks.append(o)
    if not strong:
        return checks

    phi = phi_factor(col, n).value
    b = CheckResult("b", "Phi^-1 D^(s+1-i) a_ik integral")
    for (i, k), v in table.coeffs.items():
        b.record(_is_int(D ** (s + 1 - i) * v / phi), (i, k))
    coeffs = linear_form_coefficients(table)
    c = CheckResult("c", "Phi^-1 D^(s+1-i) rho_i integral, odd i")
    for i, r in coeffs.rho_i.items():
        c.record(_is_int(D ** (s + 1 - i) * r / phi), i)
    d = CheckResult("d", "Phi^-1 D^(s+1) rho_0,theta integral, theta != 1")
    for th in THETAS[1:]:
        d.record(_is_int(D ** (s + 1) * coeffs.rho0[th] / phi), th)
    e = CheckResult("e", "Phi^-1 prod_j D_{M_j} rho_0,1 integral")
    prod_dm = math.prod(
        lcm_upto(max(col.mid_width * n, (col.m2 - dj) * n) + 1) for dj in sorted_d
    )
    e.record(_is_int(prod_dm * coeffs.rho0[Fraction(1)] / phi), "rho_0,1")
    return checks + [b, c, d, e]


def _beta_checks(col: BetaCollection, n: int, table: PartialFractionTable, strong: bool):
    s = col.s
    d = lcm_upto(col.m_tilde(n))
    weak = CheckResult("f0", "d^(s-i) a~_ik integral")
    for (i, k), v in table.coeffs.items():
        weak.record(_is_int(d ** (s - i) * v), (i, k))
    if not strong:
        return [weak]
    phi = phi_factor(col, n).value
    f = CheckResult("f", "Phi~^-1 d^(s-i) a~_ik integral")
    for (i, k), v in table.coeffs.items():
        f.record(_is_int(d ** (s - i) * v / phi), (i, k))
    return [weak, f]


# ---------------------------------------------------------------- elimination weights


def elimination_weights(i1: int, i2: int) -> tuple[int, int, int]:
    """Primitive (w1, w2, w3) with w1 + 2^i w2 + 3^i w3 = 0 for i in {i1, i2}."""
    if not (3 <= i1 < i2 and i1 % 2 and i2 % 2):
        raise ValueError(f"need odd 3 <= i1 < i2 (got {i1}, {i2})")
    # cross product of (1, 2^i1, 3^i1) and (1, 2^i2, 3^i2)
    w1 = 2**i1 * 3**i2 - 3**i1 * 2**i2
    w2 = 3**i1 - 3**i2
    w3 = 2**i2 - 2**i1
    g = math.gcd(w1, w2, w3)
    if w3 < 0:
        g = -g
    return w1 // g, w2 // g, w3 // g
