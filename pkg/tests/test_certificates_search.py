import itertools
import json

import pytest

from zetacert.certificates import INDETERMINATE, NOT_PROVEN, PROVEN, REPORT_VERSION, verdict_of, verify
from zetacert.geometry import interval_profile
from zetacert.hpreal import HPReal
from zetacert.params import BetaCollection, InfeasibleCollectionError, ZetaCollection
from zetacert.search import PrecisionProfile, coarse_margin, neighbors, search_parameters


def test_verdict_three_valued():
    assert verdict_of(HPReal.exact(1, 64)) == PROVEN
    assert verdict_of(HPReal.exact(-1, 64)) == NOT_PROVEN
    assert verdict_of(HPReal.exact(0, 64).widen(1e-3)) == INDETERMINATE


def test_toy_certificates_not_proven(toy_zeta, toy_beta):
    for col in (toy_zeta, toy_beta):
        cert = verify(col, 128)
        assert cert.verdict == NOT_PROVEN
        assert cert.margin.sign() == -1


def test_infeasible_certificate_lists_every_violation():
    bad = ZetaCollection(5, 1, 4, (2, 2, 0, 0, 0, 0))
    with pytest.raises(InfeasibleCollectionError) as exc:
        verify(bad)
    assert len(exc.value.violations) == 3
    with pytest.raises(InfeasibleCollectionError, match="eta0/2"):
        verify(BetaCollection(3, 4, (2, 1, 1)))


def test_report_fields(toy_zeta, toy_beta):
    rep = verify(toy_zeta, 128).report()
    keys = [line.split(":")[0] for line in rep.splitlines()]
    for k in ("report_version", "tool_version", "family", "s", "m1", "m2", "deltas", "precision_bits",
              "x0", "c1", "c2", "margin", "err_bound", "verdict", "breakpoint_count", "wall_time_ms"):
        assert k in keys, k
    assert f"report_version: {REPORT_VERSION}" in rep
    brep = verify(toy_beta, 128).report()
    assert "growth:" in brep and "rate:" in brep and "eta0: 4" in brep


def test_beta_margin_algebra(toy_beta):
    cert = verify(toy_beta, 160)
    # rate = s mid_width - C1 and margin = C1 - growth - s mid_width = -(growth + rate)
    assert (cert.margin + cert.growth + cert.rate).sign() == 0


def test_margin_bit_identical_across_threads(toy_zeta):
    a = verify(toy_zeta, 160, threads=1).margin
    interval_profile.cache_clear()
    b = verify(toy_zeta, 160, threads=4).margin
    assert a.value == b.value and a.err == b.err


# ---------------------------------------------------------------- search


def _brute_force_neighbors(col: ZetaCollection):
    out = []
    for field, step in itertools.product(("m1", "m2"), (-1, 1)):
        out.append(col.replace(**{field: getattr(col, field) + step}))
    for j in range(len(col.deltas)):
        for step in (-1, 1):
            d = list(col.deltas)
            d[j] += step
            out.append(col.replace(deltas=tuple(d)))
    return {c for c in out if not c.violations()}


def test_neighbors_toy(toy_zeta):
    nbs = neighbors(toy_zeta)
    assert set(nbs) == _brute_force_neighbors(toy_zeta)
    assert len(nbs) == len(set(nbs))
    assert all(c.is_feasible() for c in nbs)
    assert all(min(c.deltas) >= 0 for c in nbs)
    assert neighbors(toy_zeta) == nbs  # fixed order


def test_neighbors_reference(ref_zeta, ref_beta):
    assert set(neighbors(ref_zeta)) == _brute_force_neighbors(ref_zeta)
    for c in neighbors(ref_beta):
        assert c.is_feasible() and c.s == ref_beta.s


def test_budget_zero_returns_start(toy_zeta):
    st = search_parameters(toy_zeta, 0, seed=3)
    assert st.best == (toy_zeta, None) and st.history == [] and st.evaluations == 0


def test_budget_one_on_reference(ref_zeta):
    st = search_parameters(ref_zeta, 1, seed=0)
    assert st.evaluations == 1
    assert st.best[0] == ref_zeta
    ref = verify(ref_zeta, 192).margin
    assert st.best[1].value == ref.value


def test_search_deterministic_and_monotone():
    start = ZetaCollection(7, 1, 8, (0, 0, 1, 1, 1, 1, 1, 2))
    prof = PrecisionProfile(53, 96)
    a = search_parameters(start, 12, seed=5, profile=prof)
    b = search_parameters(start, 12, seed=5, profile=prof)
    assert [r.to_json() for r in a.history] == [r.to_json() for r in b.history]
    assert a.evaluations <= 12
    acc = [r.margin for r in a.accepted()]
    assert acc == sorted(acc)
    assert all(r.collection.is_feasible() for r in a.history)
    assert all(r.verdict != INDETERMINATE for r in a.accepted())
    assert a.best_margin == max(r.margin for r in a.history if r.tier == "full" and r.accepted)


def test_search_beta_skeleton(toy_beta):
    st = search_parameters(BetaCollection(3, 10, (3, 3, 3)), 6, seed=1, profile=PrecisionProfile(53, 96))
    assert st.evaluations <= 6 and st.best[0].is_feasible()
    rec = json.loads(st.history[0].to_json())
    assert rec["family"] == "beta" and rec["etas"] == [3, 3, 3]


def test_coarse_margin_tracks_certificate(toy_zeta):
    full = float(verify(toy_zeta, 128).margin)
    assert abs(coarse_margin(toy_zeta) - full) < 1e-9 * abs(full)
    assert abs(coarse_margin(toy_zeta, 80) - full) < 1e-12 * abs(full)
