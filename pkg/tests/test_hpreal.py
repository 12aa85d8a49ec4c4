import random
from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetacert.hpreal import HPReal, IndeterminateError, hsum


def _exact(x: HPReal) -> Fraction:
    return Fraction(gmpy2.mpq(x.value))


def test_exact_integer_has_zero_error():
    x = HPReal.exact(12345, 128)
    assert x.err == 0 and int(x.value) == 12345


def test_exact_third_error_is_one_ulp_at_most():
    x = HPReal.exact(Fraction(1, 3), 128)
    assert 0 < x.err <= 2.0**-128
    assert x.contains(Fraction(1, 3))


def test_unary_ops_keep_working_precision():
    # 1/3 at 256 bits must survive negation without rounding to a double
    x = HPReal.exact(Fraction(1, 3), 256)
    y = -x
    assert y.prec == 256
    assert _exact(y) == -_exact(x)
    assert _exact(abs(y)) == _exact(x)


def test_sign_three_valued():
    assert HPReal.exact(1, 64).sign() == 1
    assert HPReal.exact(-1, 64).sign() == -1
    assert HPReal.exact(Fraction(1, 10**30), 64).widen(1e-20).sign() == 0


def test_undecidable_comparison_raises():
    a = HPReal.exact(1, 64).widen(0.5)
    b = HPReal.exact(Fraction(5, 4), 64)
    with pytest.raises(IndeterminateError):
        _ = a < b


def test_hsum_is_order_stable():
    terms = [HPReal.exact(Fraction(1, k), 128) for k in range(1, 200)]
    a, b = hsum(terms, 128), hsum(terms, 128)
    assert a.value == b.value and a.err == b.err


_fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@settings(max_examples=200, deadline=None)
@given(_fracs, _fracs, _fracs)
def test_error_bounds_contain_exact_results(p, q, r):
    prec = 80
    x, y, z = (HPReal.exact(v, prec) for v in (p, q, r))
    assert (x + y).contains(p + q)
    assert (x - y).contains(p - q)
    assert (x * y * z).contains(p * q * r)
    assert (-(x * z) + y).contains(-(p * r) + q)
    if q != 0:
        assert (x / y).contains(p / q)


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10**4))
def test_log_exp_against_higher_precision(p):
    lo = HPReal.exact(p, 96)
    hi = HPReal.exact(p, 320)
    assert lo.log().agrees_with(hi.log())
    small = HPReal.exact(p / 100, 96)
    assert small.exp().agrees_with(HPReal.exact(p / 100, 320).exp())


def test_integer_arithmetic_agrees_on_random_inputs():
    rng = random.Random(7)
    for _ in range(10_000):
        a, b = rng.randint(-10**12, 10**12), rng.randint(1, 10**9)
        fa, fb = Fraction(a), Fraction(b)
        assert fa + fb == a + b
        assert fa - fb == a - b
        assert fa * fb == a * b
        assert fa // fb == a // b
        assert (fa < fb) == (a < b)


def test_composite_interval_nesting():
    # evaluation at higher precision lands inside the lower-precision bound
    rng = random.Random(3)
    for _ in range(50):
        p, q = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)), Fraction(rng.randint(1, 999), 7)
        lo = (HPReal.exact(p, 72) * HPReal.exact(q, 72)).log() / HPReal.exact(q, 72) + HPReal.exact(p, 72)
        hi = (HPReal.exact(p, 400) * HPReal.exact(q, 400)).log() / HPReal.exact(q, 400) + HPReal.exact(p, 400)
        assert lo.contains(_exact(hi))
