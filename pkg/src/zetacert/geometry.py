"""Floor-sum matrices, their breakpoint sets, nu_0, and the digamma-Stieltjes rate.

A :class:`FloorMatrix` stores rows (c, a, b) meaning c * floor(a x + b y).
``nu(x, y)`` is the row sum, ``nu_0(x)`` its minimum over real y.  On the
breakpoint set X (all k/q with q = |a_i b_j - b_i a_j|) ``nu_0`` is piecewise
constant, which turns the Stieltjes integrals against psi and 1/x into finite
sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from .hpreal import HPReal, hsum
from .params import BetaCollection, ZetaCollection
from .special import digamma


class DivergentEndpointError(ArithmeticError):
    """nu_0 is nonzero next to x = 0, where psi and 1/x blow up."""


@dataclass(frozen=True)
class FloorMatrix:
    rows: tuple[tuple[int, int, int], ...]
    family: str
    mid_marker: Fraction

    @property
    def H(self) -> int:
        return len(self.rows)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.rows:
            z = np.zeros(0, dtype=np.int64)
            return z, z, z
        m = np.array(self.rows, dtype=np.int64)
        return m[:, 0].copy(), m[:, 1].copy(), m[:, 2].copy()


def build_floor_matrix(collection: ZetaCollection | BetaCollection) -> FloorMatrix:
    collection.check()
    if isinstance(collection, ZetaCollection):
        m1, m2 = collection.m1, collection.m2
        rows = []
        for d in collection.deltas:
            rows += [(1, m2 - 2 * d, 0), (-1, -d, 1), (-1, m2 - d, -1)]
        rows += [
            (1, 2 * m1, 2),
            (-1, m1, 1),
            (1, 2 * (m1 + m2), -2),
            (-1, m1 + m2, -1),
            (1, 3 * m1, 3),
            (1, 3 * (m1 + m2), -3),
            (-1, 0, 1),
            (-1, m2, -1),
            (-(8 * m1 + 3 * m2), 1, 0),
        ]
        return FloorMatrix(tuple(rows), "zeta", Fraction(1, collection.mid_width))
    e0 = collection.eta0
    rows = [(1, 2 * e0, -2), (1, 0, 2), (-1, e0, -1), (-1, 0, 1), (-e0, 1, 0)]
    for e in collection.etas:
        rows += [(1, e0 - 2 * e, 0), (-1, -e, 1), (-1, e0 - e, -1)]
    return FloorMatrix(tuple(rows), "beta", Fraction(1, collection.mid_width))


def eval_nu(matrix: FloorMatrix, x, y) -> int:
    x, y = Fraction(x), Fraction(y)
    return sum(c * math.floor(a * x + b * y) for c, a, b in matrix.rows)


# ---------------------------------------------------------------- breakpoints


@dataclass(frozen=True)
class Breakpoints:
    nums: np.ndarray
    dens: np.ndarray
    mid_index: int
    mid_inserted: bool = False
    qs: tuple[int, ...] = field(default=(), repr=False)

    def __len__(self) -> int:
        return len(self.nums)

    def __getitem__(self, i: int) -> Fraction:
        return Fraction(int(self.nums[i]), int(self.dens[i]))

    @property
    def xs(self) -> list[Fraction]:
        return [Fraction(int(p), int(q)) for p, q in zip(self.nums, self.dens)]

    def gaps(self) -> tuple[Fraction, Fraction]:
        n, d = self.nums, self.dens
        # consecutive differences as exact fractions, compared through floats then confirmed
        diff = n[1:] * d[:-1] - n[:-1] * d[1:]
        den = d[1:] * d[:-1]
        g = diff / den
        i_min, i_max = int(np.argmin(g)), int(np.argmax(g))
        return Fraction(int(diff[i_min]), int(den[i_min])), Fraction(int(diff[i_max]), int(den[i_max]))


def pair_denominators(matrix: FloorMatrix) -> set[int]:
    """Nonzero q_ij = |a_i b_j - b_i a_j| over unordered row pairs."""
    _, a, b = matrix.arrays
    q = np.abs(a[:, None] * b[None, :] - b[:, None] * a[None, :])
    iu = np.triu_indices(len(a), k=1)
    vals = q[iu]
    return set(int(v) for v in np.unique(vals[vals != 0]))


def breakpoints_x(matrix: FloorMatrix) -> Breakpoints:
    qs = sorted(pair_denominators(matrix))
    nums, dens = [np.array([0, 1], dtype=np.int64)], [np.array([1, 1], dtype=np.int64)]
    for q in qs:
        k = np.arange(q + 1, dtype=np.int64)
        g = np.gcd(k, q)
        nums.append(k // g)
        dens.append(q // g)
    num = np.concatenate(nums)
    den = np.concatenate(dens)
    # dedup on reduced (num, den) pairs
    key = num * (int(den.max()) + 1) + den
    _, first = np.unique(key, return_index=True)
    num, den = num[first], den[first]

    mid = matrix.mid_marker
    inserted = False
    present = np.any((num == mid.numerator) & (den == mid.denominator))
    if not present:
        num = np.append(num, mid.numerator)
        den = np.append(den, mid.denominator)
        inserted = True

    order = np.argsort(num / den, kind="stable")
    num, den = num[order], den[order]
    # float ordering is exact for these denominators; confirm in integers
    if len(num) > 1 and not np.all(num[1:] * den[:-1] - num[:-1] * den[1:] > 0):
        raise ArithmeticError("breakpoint ordering could not be certified")
    hit = np.flatnonzero((num == mid.numerator) & (den == mid.denominator))
    return Breakpoints(num, den, int(hit[0]), inserted, tuple(qs))


# ---------------------------------------------------------------- nu_0


def _y_candidates(matrix: FloorMatrix, x: Fraction) -> list[Fraction]:
    ys = set()
    for _, a, b in matrix.rows:
        if b == 0:
            continue
        lo, hi = sorted((a * x, a * x + b))
        for k in range(math.ceil(lo), math.floor(hi) + 1):
            y = (k - a * x) / b
            ys.add(y - math.floor(y))
    ys = sorted(ys)
    cands = set(ys) | {Fraction(0)}
    for y0, y1 in zip(ys, ys[1:]):
        cands.add((y0 + y1) / 2)
    if ys:
        cands.add((ys[-1] + 1 + ys[0]) / 2 % 1)
    return sorted(cands)


def nu0_at(matrix: FloorMatrix, x) -> int:
    """Exact min over y of nu(x, y), by evaluating every jump point and gap midpoint."""
    x = Fraction(x)
    if not matrix.rows:
        return 0
    return min(eval_nu(matrix, x, y) for y in _y_candidates(matrix, x))


def nu0_many(matrix: FloorMatrix, xs, backend: str | None = None) -> np.ndarray:
    """nu_0 at many rationals through the integer sweep kernel."""
    xs = [Fraction(x) for x in xs]
    P = np.array([x.numerator for x in xs], dtype=np.int64)
    Q = np.array([x.denominator for x in xs], dtype=np.int64)
    c, a, b = matrix.arrays
    return _kernels.nu0_batch(c, a, b, P, Q, backend=backend)


@dataclass(frozen=True)
class IntervalProfile:
    """nu_0 on each open interval (x_{i-1}, x_i) of the breakpoint set."""

    breakpoints: Breakpoints
    nu0: np.ndarray  # nu0[i - 1] is the value on (x_{i-1}, x_i)


@lru_cache(maxsize=16)
def interval_profile(matrix: FloorMatrix, backend: str | None = None) -> IntervalProfile:
    bp = breakpoints_x(matrix)
    n, d = bp.nums, bp.dens
    P = n[:-1] * d[1:] + n[1:] * d[:-1]
    Q = 2 * d[:-1] * d[1:]
    c, a, b = matrix.arrays
    if not matrix.rows:
        vals = np.zeros(len(P), dtype=np.int64)
    else:
        vals = _kernels.nu0_batch(c, a, b, P, Q, backend=backend)
    return IntervalProfile(bp, vals)


# ---------------------------------------------------------------- Stieltjes sums


@dataclass(frozen=True)
class StieltjesReport:
    value: HPReal
    psi_part: HPReal
    pole_part: Fraction
    breakpoint_count: int
    mid_index: int
    mid_inserted: bool
    negative_intervals: int
    psi_evaluations: int


def stieltjes_report(matrix: FloorMatrix, prec: int = 192) -> StieltjesReport:
    if not matrix.rows:
        zero = HPReal.exact(0, prec)
        return StieltjesReport(zero, zero, Fraction(0), 0, 0, False, 0, 0)
    prof = interval_profile(matrix)
    bp, nu = prof.breakpoints, prof.nu0
    if nu[0] != 0:
        raise DivergentEndpointError(
            f"divergent Stieltjes endpoint: nu_0 = {int(nu[0])} on (0, {bp[1]})"
        )
    l = len(bp) - 1

    # sum_{i>=2} nu_i (psi(x_i) - psi(x_{i-1})) regrouped by summation by parts:
    #   nu_l psi(1) + sum_{j=1}^{l-1} (nu_j - nu_{j+1}) psi(x_j), with nu_1 = 0
    jumps = nu[:-1] - nu[1:]  # jumps[j-1] = nu_j - nu_{j+1}, j = 1..l-1
    idx = np.flatnonzero(jumps) + 1
    terms = [HPReal.exact(int(jumps[j - 1]), prec) * digamma(bp[j], prec) for j in idx]
    terms.append(HPReal.exact(int(nu[l - 1]), prec) * digamma(1, prec))
    psi_part = hsum(terms, prec)

    # sum_{i=2}^{l_mid} nu_i (1/x_i - 1/x_{i-1}), exact
    mid = bp.mid_index
    pole = Fraction(0)
    for i in range(2, mid + 1):
        v = int(nu[i - 1])
        if v:
            pole += v * (Fraction(int(bp.dens[i]), int(bp.nums[i])) - Fraction(int(bp.dens[i - 1]), int(bp.nums[i - 1])))
    value = psi_part + HPReal.exact(pole, prec)
    return StieltjesReport(
        value=value,
        psi_part=psi_part,
        pole_part=pole,
        breakpoint_count=len(bp),
        mid_index=mid,
        mid_inserted=bp.mid_inserted,
        negative_intervals=int(np.count_nonzero(nu < 0)),
        psi_evaluations=len(terms),
    )


def stieltjes_rate(matrix: FloorMatrix, prec: int = 192) -> HPReal:
    """int_0^1 nu_0 dpsi + int_0^{mid} nu_0 d(1/x) as a finite sum over breakpoints."""
    return stieltjes_report(matrix, prec).value


def stieltjes_rate_float(matrix: FloorMatrix) -> float:
    """Float64 version of :func:`stieltjes_rate` for coarse screening."""
    from .special import digamma_float

    if not matrix.rows:
        return 0.0
    prof = interval_profile(matrix)
    bp, nu = prof.breakpoints, prof.nu0
    if nu[0] != 0:
        raise DivergentEndpointError(f"divergent Stieltjes endpoint: nu_0 = {int(nu[0])} on (0, {bp[1]})")
    xs = bp.nums / bp.dens
    jumps = (nu[:-1] - nu[1:]).astype(np.float64)
    idx = np.flatnonzero(jumps)
    psi = float(np.dot(jumps[idx], digamma_float(xs[idx + 1])))
    psi += float(nu[-1]) * -0.5772156649015329
    mid = bp.mid_index
    inv = 1.0 / xs[1 : mid + 1]
    pole = float(np.dot(nu[1:mid].astype(np.float64), inv[1:] - inv[:-1]))
    return psi + pole
