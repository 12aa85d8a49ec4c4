import math
import random
from fractions import Fraction

import pytest

from zetacert.geometry import build_floor_matrix, eval_nu
from zetacert.hpreal import HPReal
from zetacert.linforms import (
    THETAS,
    DeskScaleError,
    PoleError,
    PreconditionError,
    beta_decomposition,
    direct_series,
    elimination_weights,
    eval_r,
    integrality_suite,
    linear_form_coefficients,
    partial_fractions,
    phi_factor,
    rational_function,
    rho_form,
)
from zetacert.params import BetaCollection, ZetaCollection
from zetacert.special import riemann_zeta
from zetacert.tables import primes_in


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over the rationals (least-squares free: the system is square)."""
    n = len(rows)
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _random_points(rng, count, avoid):
    pts = []
    while len(pts) < count:
        t = Fraction(rng.randint(-500, 500), rng.randint(1, 97))
        if t in avoid or t in pts:
            continue
        pts.append(t)
    return pts


# ---------------------------------------------------------------- R_n


def test_symmetry_of_r(toy_zeta):
    rng = random.Random(0)
    mn = toy_zeta.m2 * 2
    poles = {Fraction(-k) for k in range(0, mn + 1)}
    for t in _random_points(rng, 20, poles | {Fraction(-k) - mn for k in range(-mn, 1)}):
        assert eval_r(toy_zeta, 2, t) == -eval_r(toy_zeta, 2, -t - mn)


@pytest.mark.parametrize("n", [2, 4])
def test_zeros_at_shifted_integers(toy_zeta, n):
    for k in range(1, toy_zeta.m1 * n):
        for th in THETAS:
            assert eval_r(toy_zeta, n, k + th) == 0


def test_degree_at_most_minus_two(toy_zeta, toy_beta):
    for col in (toy_zeta, toy_beta):
        lp = rational_function(col, 2)
        assert lp.degree <= -2
        a = abs(Fraction(10**5) ** 2 * eval_r(col, 2, 10**5))
        b = abs(Fraction(10**6) ** 2 * eval_r(col, 2, 10**6))
        assert b <= 10 * a


def test_pole_error(toy_zeta):
    with pytest.raises(PoleError) as exc:
        eval_r(toy_zeta, 2, -3)
    assert exc.value.shift == 3 and exc.value.order >= 1


def test_odd_n_rejected(toy_zeta):
    with pytest.raises(ValueError):
        eval_r(toy_zeta, 3, Fraction(1, 2))


# ---------------------------------------------------------------- partial fractions


@pytest.mark.parametrize("col_name", ["zeta", "beta"])
def test_reconstruction_exact(col_name, toy_zeta, toy_beta):
    col = toy_zeta if col_name == "zeta" else toy_beta
    table = partial_fractions(col, 2)
    rng = random.Random(1)
    for t in _random_points(rng, 10, set()):
        try:
            want = eval_r(col, 2, t)
        except PoleError:
            continue
        assert table.reconstruct(t) == want


def test_table_symmetry_and_sums(toy_zeta):
    table = partial_fractions(toy_zeta, 2)
    assert table.k_range == (0, 8) and table.i_range == (1, 6)
    for (i, k), a in table.coeffs.items():
        assert a == (-1) ** (i + 1) * table.coeffs[i, 8 - k]
    assert table.column_sum(1) == 0
    for i in (2, 4, 6):
        assert table.column_sum(i) == 0


def test_linear_system_oracle(toy_zeta):
    table = partial_fractions(toy_zeta, 2)
    keys = sorted(table.coeffs)
    rng = random.Random(2)
    pts = _random_points(rng, len(keys), {Fraction(-k) for k in range(9)})
    rows = [[1 / (t + k) ** i for i, k in keys] for t in pts]
    rhs = [eval_r(toy_zeta, 2, t) for t in pts]
    sol = _solve_exact(rows, rhs)
    assert sol == [table.coeffs[key] for key in keys]


def test_pole_order_vanishing_with_unsorted_deltas():
    col = ZetaCollection(5, 1, 6, (1, 0, 0, 0, 0, 0))
    rep = integrality_suite(col, 2)
    assert {c.name for c in rep.checks} == {"a", "order"}
    assert rep.ok


def test_desk_scale_guard(ref_zeta):
    # 36 orders times 235 n + 1 shifts passes 10^6 at n = 120
    with pytest.raises(DeskScaleError, match="desk-scale guard"):
        partial_fractions(ref_zeta, 120)
    # few coefficients at n = 2, but thousands of factors per pole
    with pytest.raises(DeskScaleError, match="expansion work"):
        partial_fractions(ref_zeta, 2)


def test_beta_table_shape(toy_beta):
    t = partial_fractions(toy_beta, 2)
    assert t.offset == Fraction(1, 2)
    assert t.k_range == (2, 6) and t.i_range == (1, 3)
    # degree <= -2 again forces a zero residue sum
    assert t.column_sum(1) == 0


# ---------------------------------------------------------------- linear forms


def test_linear_form_coefficients_shape(toy_zeta):
    lf = linear_form_coefficients(partial_fractions(toy_zeta, 2))
    assert set(lf.rho_i) == {3, 5}
    assert set(lf.rho0) == set(THETAS)
    assert lf.column_sums[1] == 0


def test_beta_linear_form_unsupported(toy_beta):
    with pytest.raises(NotImplementedError):
        linear_form_coefficients(partial_fractions(toy_beta, 2))


@pytest.mark.parametrize("theta", THETAS)
def test_identity_n2(toy_zeta, theta):
    lf = linear_form_coefficients(partial_fractions(toy_zeta, 2))
    s = direct_series(toy_zeta, 2, theta, 256).value
    assert s.agrees_with(rho_form(lf, theta, 256))
    assert abs(float(s - rho_form(lf, theta, 256))) < 1e-25


def test_terms_positive_and_series_positive(toy_zeta):
    # terms with t + 1 < m1 n + 1 vanish; all later ones are positive
    for t in range(1, 60):
        v = eval_r(toy_zeta, 2, t + 1)
        assert v == 0 if t + 1 < toy_zeta.m1 * 2 + 1 else v > 0
    assert direct_series(toy_zeta, 2, 1, 192).value.sign() == 1


def test_tail_modes_agree(toy_zeta, toy_beta):
    a = direct_series(toy_zeta, 2, Fraction(1, 3), 192)
    b = direct_series(toy_zeta, 2, Fraction(1, 3), 192, tail="comparison", max_terms=20_000)
    assert a.value.agrees_with(b.value)
    assert b.tail == "comparison" and float(b.tail_bound) < 1e-30 * float(b.value)
    c = direct_series(toy_beta, 2, prec=192)
    d = direct_series(toy_beta, 2, prec=192, tail="comparison", max_terms=20_000)
    assert c.value.agrees_with(d.value)
    assert float(c.value.err) < float(d.value.err)


@pytest.mark.parametrize("b", [1, 2, 3])
def test_aggregated_theta_sum(toy_zeta, b):
    # sum_k S_{n,k/b} equals rho-form with b^i zeta(i); the constant is the sum of rho_0 over k/b
    table = partial_fractions(toy_zeta, 2)
    thetas = [Fraction(k, b) for k in range(1, b + 1)]
    lf = linear_form_coefficients(table, thetas=thetas)
    direct = HPReal.exact(0, 256)
    for th in thetas:
        direct = direct + direct_series(toy_zeta, 2, th, 256).value
    other = HPReal.exact(sum(lf.rho0.values()), 256)
    for i, r in lf.rho_i.items():
        other = other + riemann_zeta(i, 256) * (r * b**i)
    assert direct.agrees_with(other)


def test_ratio_trend(toy_zeta):
    dist = []
    for n in (2, 4, 6):
        r = direct_series(toy_zeta, n, 1, 192).value / direct_series(toy_zeta, n, Fraction(1, 2), 192).value
        dist.append(abs(float(r) - 1))
    assert dist[0] > dist[1] > dist[2]


def test_beta_decomposition_toy(toy_beta):
    dec = beta_decomposition(toy_beta, 2, 256)
    assert dec.agree
    assert dec.odd_vanish
    assert dec.scaled_integral


# ---------------------------------------------------------------- Phi and integrality


def test_phi_empty_range(toy_beta):
    phi = phi_factor(toy_beta, 2)
    assert phi.exponents == {} and phi.value == 1


def test_phi_toy_n26_dense_grid(toy_zeta):
    phi = phi_factor(toy_zeta, 26)
    assert sorted(phi.exponents) == primes_in(468, 104)
    m = build_floor_matrix(toy_zeta)
    for p, e in phi.exponents.items():
        x = Fraction(26 % p, p)
        # y-jumps lie on multiples of 1/(6p); a 1/(24p) grid covers them and all gap midpoints
        steps = 24 * p
        assert e == min(eval_nu(m, x, Fraction(j, steps)) for j in range(steps)), p
    assert phi.value == math.prod(Fraction(p) ** e for p, e in phi.exponents.items())


def test_phi_beta_range(toy_beta):
    phi = phi_factor(toy_beta, 26)
    lo_sq, hi = phi.prime_range
    assert hi == toy_beta.m_tilde(26) == (4 - 2) * 26
    assert lo_sq == 2 * toy_beta.h0(26)
    assert max(phi.exponents) <= hi


def test_weak_integrality_n2(toy_zeta, toy_beta):
    assert integrality_suite(toy_zeta, 2).ok
    assert integrality_suite(toy_beta, 2).ok


def test_strong_precondition(toy_zeta):
    with pytest.raises(PreconditionError, match="n > s"):
        integrality_suite(toy_zeta, 4, strong=True)


def test_strong_integrality_n26(toy_zeta, toy_beta):
    rep = integrality_suite(toy_zeta, 26, strong=True)
    assert [c.name for c in rep.checks] == ["a", "order", "b", "c", "d", "e"]
    assert rep.ok, rep.table()
    rep_b = integrality_suite(toy_beta, 26, strong=True)
    assert rep_b.ok, rep_b.table()
    assert "pass" in rep_b.table()


def test_integrality_detects_failure(toy_zeta):
    # dropping the D powers must break check (a) somewhere
    table = partial_fractions(toy_zeta, 2)
    assert any(v.denominator != 1 for v in table.coeffs.values())


# ---------------------------------------------------------------- elimination weights


def test_elimination_weights_3_5():
    w = elimination_weights(3, 5)
    assert w == (45, -9, 1)
    assert w[0] + 2 * w[1] + 3 * w[2] == 30


def test_elimination_weights_exhaustive():
    for i1 in range(3, 36, 2):
        for i2 in range(i1 + 2, 36, 2):
            w1, w2, w3 = elimination_weights(i1, i2)
            for i in (i1, i2):
                assert w1 + 2**i * w2 + 3**i * w3 == 0
            assert math.gcd(w1, w2, w3) == 1
            assert w1 + 2 * w2 + 3 * w3 != 0


def test_elimination_weights_bad_input():
    with pytest.raises(ValueError):
        elimination_weights(4, 5)
    with pytest.raises(ValueError):
        elimination_weights(5, 3)
