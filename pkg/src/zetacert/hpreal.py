"""Configurable-precision reals carrying an absolute error bound.

Values are gmpy2 ``mpfr`` numbers rounded to nearest at ``prec`` bits; the
error bound is an upward-rounded 64-bit ``mpfr`` that dominates the distance
to the exact real being represented.  All contexts are explicit objects, so
nothing here touches gmpy2's thread-local default context.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

_UP = gmpy2.context(precision=64, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=64, round=gmpy2.RoundDown)
_ZERO_ERR = _UP.plus(0)

Number = Union[int, Fraction, "HPReal"]


class IndeterminateError(ArithmeticError):
    """Raised when a decision cannot be made within the tracked error."""


@lru_cache(maxsize=64)
def context(prec: int) -> gmpy2.context:
    if prec < 16:
        raise ValueError(f"precision must be at least 16 bits, got {prec}")
    return gmpy2.context(precision=prec)


@lru_cache(maxsize=64)
def _directed(prec: int, up: bool) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp if up else gmpy2.RoundDown)


def _rnd(v, prec: int):
    # half-ulp bound for a correctly rounded result, taken generously as |v| 2^-prec
    return _UP.mul_2exp(_UP.abs(v), -prec)


def _up(x):
    return _UP.plus(x)


@dataclass(frozen=True, slots=True)
class HPReal:
    value: mpfr
    err: mpfr
    prec: int

    # -- construction -------------------------------------------------------
    @classmethod
    def exact(cls, q: int | Fraction, prec: int) -> "HPReal":
        ctx = context(prec)
        if isinstance(q, Fraction):
            num, den = q.numerator, q.denominator
        else:
            num, den = int(q), 1
        target = mpq(num, den)
        v = ctx.div(mpz(num), mpz(den))
        err = _ZERO_ERR if mpq(v) == target else _rnd(v, prec)
        return cls(v, err, prec)

    @classmethod
    def from_mpfr(cls, v, err, prec: int) -> "HPReal":
        return cls(context(prec).plus(v), _up(err), prec)

    @classmethod
    def coerce(cls, x: Number, prec: int) -> "HPReal":
        if isinstance(x, HPReal):
            return x
        return cls.exact(x, prec)

    # -- inspection ---------------------------------------------------------
    def __float__(self) -> float:
        return float(self.value)

    def lower(self):
        return _directed(self.prec + 8, False).sub(self.value, self.err)

    def upper(self):
        return _directed(self.prec + 8, True).add(self.value, self.err)

    def sign(self) -> int:
        """+1 or -1 when decided by the error interval, 0 when it contains zero."""
        if self.value > 0 and _DOWN.sub(_DOWN.abs(self.value), self.err) > 0:
            return 1
        if self.value < 0 and _DOWN.sub(_DOWN.abs(self.value), self.err) > 0:
            return -1
        return 0

    def contains(self, x) -> bool:
        """True when the real ``x`` lies inside ``value +- err``."""
        ctx = context(self.prec + 64)
        d = ctx.sub(self.value, ctx.div(mpz(x.numerator), mpz(x.denominator)) if isinstance(x, Fraction) else x)
        return _DOWN.abs(d) <= _UP.add(self.err, _rnd(d, self.prec + 64))

    def agrees_with(self, other: "HPReal") -> bool:
        """Error intervals overlap."""
        d = context(max(self.prec, other.prec) + 8).sub(self.value, other.value)
        return _DOWN.abs(d) <= _UP.add(self.err, other.err)

    def with_prec(self, prec: int) -> "HPReal":
        v = context(prec).plus(self.value)
        return HPReal(v, _UP.add(self.err, _rnd(v, prec)), prec)

    def widen(self, extra) -> "HPReal":
        return HPReal(self.value, _UP.add(self.err, _up(extra)), self.prec)

    def __repr__(self) -> str:
        return f"HPReal({format_hp(self, 25)}, err<={float(self.err):.3g}, prec={self.prec})"

    def __str__(self) -> str:
        return format_hp(self)

    # -- arithmetic ---------------------------------------------------------
    def _other(self, other: Number) -> "HPReal":
        return other if isinstance(other, HPReal) else HPReal.exact(other, self.prec)

    # unary operators on mpfr would round through gmpy2's global context
    def __neg__(self) -> "HPReal":
        return HPReal(context(self.prec).minus(self.value), self.err, self.prec)

    def __abs__(self) -> "HPReal":
        return HPReal(context(self.prec).abs(self.value), self.err, self.prec)

    def __add__(self, other: Number) -> "HPReal":
        o = self._other(other)
        prec = max(self.prec, o.prec)
        v = context(prec).add(self.value, o.value)
        err = _UP.add(_UP.add(self.err, o.err), _rnd(v, prec))
        return HPReal(v, err, prec)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "HPReal":
        return self + (-self._other(other))

    def __rsub__(self, other: Number) -> "HPReal":
        return self._other(other) - self

    def __mul__(self, other: Number) -> "HPReal":
        o = self._other(other)
        prec = max(self.prec, o.prec)
        v = context(prec).mul(self.value, o.value)
        err = _UP.add(_UP.mul(_UP.abs(self.value), o.err), _UP.mul(_UP.abs(o.value), self.err))
        err = _UP.add(err, _UP.mul(self.err, o.err))
        return HPReal(v, _UP.add(err, _rnd(v, prec)), prec)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "HPReal":
        o = self._other(other)
        prec = max(self.prec, o.prec)
        margin = _DOWN.sub(_DOWN.abs(o.value), o.err)
        if not margin > 0:
            raise IndeterminateError("division by an interval containing zero")
        v = context(prec).div(self.value, o.value)
        err = _UP.div(_UP.add(self.err, _UP.mul(_UP.abs(v), o.err)), margin)
        return HPReal(v, _UP.add(err, _rnd(v, prec)), prec)

    def __rtruediv__(self, other: Number) -> "HPReal":
        return self._other(other) / self

    def log(self) -> "HPReal":
        margin = _DOWN.sub(self.value, self.err)
        if not margin > 0:
            raise IndeterminateError("log of an interval not contained in (0, inf)")
        v = context(self.prec).log(self.value)
        err = _UP.add(_UP.div(self.err, margin), _rnd(v, self.prec))
        return HPReal(v, err, self.prec)

    def exp(self) -> "HPReal":
        ctx = context(self.prec)
        v = ctx.exp(self.value)
        # |e^(x+h) - e^x| <= e^x (e^|h| - 1) <= e^x * 2|h| for |h| <= 1
        if self.err > 1:
            raise IndeterminateError("exp of an interval wider than 1")
        err = _UP.mul(_UP.mul_2exp(_UP.abs(v), 1), self.err)
        return HPReal(v, _UP.add(err, _rnd(v, self.prec)), self.prec)

    # -- comparisons (decided only when intervals separate) ------------------
    def __lt__(self, other: Number) -> bool:
        d = (self - self._other(other)).sign()
        if d == 0:
            raise IndeterminateError("comparison undecidable within error bound")
        return d < 0

    def __gt__(self, other: Number) -> bool:
        return self._other(other) < self


def hsum(terms: Iterable[HPReal], prec: int) -> HPReal:
    """Left-to-right sum in the order given; callers supply canonical order."""
    acc = HPReal.exact(0, prec)
    for t in terms:
        acc = acc + t
    return acc


def format_hp(x: HPReal, digits: int = 20) -> str:
    return format(x.value, f".{digits}g")
