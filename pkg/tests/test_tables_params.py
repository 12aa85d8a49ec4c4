import math
from fractions import Fraction

import pytest

from zetacert.params import BetaCollection, InfeasibleCollectionError, ZetaCollection
from zetacert.tables import lcm_upto, number_tables, primes_in, primes_up_to


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_d_values():
    t = number_tables(50, 40)
    assert t.D(1) == 1
    assert t.D(10) == 2520
    for n in range(1, 41):
        assert t.D(n) == math.lcm(*range(1, n + 1))
        assert all(t.D(n) % k == 0 for k in range(1, n + 1))
        if n > 1:
            assert t.D(n) % t.D(n - 1) == 0
    assert lcm_upto(30) == math.lcm(*range(1, 31))


def test_sieve_against_trial_division():
    assert list(primes_up_to(500)) == [p for p in range(501) if _is_prime(p)]
    assert len(primes_up_to(1)) == 0


def test_prime_range_toy_n26():
    ps = primes_in(468, 104)
    assert ps == [p for p in range(2, 105) if _is_prime(p) and p * p > 468]
    assert ps[0] == 23 and ps[-1] == 103
    # trial division gives 19 primes in (sqrt 468, 104]
    assert len(ps) == 19


def test_bad_bounds():
    with pytest.raises(ValueError):
        number_tables(0, 5)


def test_reference_collections_feasible(ref_zeta, ref_beta):
    assert ref_zeta.is_feasible() and ref_beta.is_feasible()
    assert ref_zeta.delta_min == 4 and ref_zeta.mid_width == 235
    assert ref_zeta.deltas[:6] == (4, 4, 4, 4, 4, 5)
    assert ref_zeta.deltas[-4:] == (56, 60, 64, 68)
    assert ref_beta.mid_width == 30


def test_toy_collections_feasible(toy_zeta, toy_beta):
    assert toy_zeta.is_feasible() and toy_beta.is_feasible()


def test_zeta_violations_listed():
    bad = ZetaCollection(4, 0, 4, (2, 0, 0))
    v = bad.violations()
    assert len(v) >= 4
    with pytest.raises(InfeasibleCollectionError) as exc:
        bad.check()
    assert exc.value.violations == v


def test_zeta_sum_bound():
    # sum delta = 2 hits ((s-2) m2 - 8 m1)/2 = 2
    with pytest.raises(InfeasibleCollectionError, match="sum delta"):
        ZetaCollection(5, 1, 4, (1, 1, 0, 0, 0, 0)).check()
    ZetaCollection(5, 1, 4, (1, 0, 0, 0, 0, 0)).check()


def test_beta_violations():
    with pytest.raises(InfeasibleCollectionError, match="eta_1 < eta0/2"):
        BetaCollection(3, 4, (2, 1, 1)).check()
    with pytest.raises(InfeasibleCollectionError, match="0 < eta_2"):
        BetaCollection(3, 10, (3, 0, 3)).check()


def test_beta_derived(ref_beta):
    n = 2
    assert ref_beta.h0(n) == 189
    assert ref_beta.big_n(n) == 64
    assert ref_beta.m_tilde(n) == 189 - 128 - 1 == ref_beta.mid_width * n
    assert ref_beta.hs(n)[0] == Fraction(129, 2)
