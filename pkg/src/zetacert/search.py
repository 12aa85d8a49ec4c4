"""Seeded hill climbing over feasible collections, maximising the certificate margin.

One reasonable instantiation of "random search and trial-and-error": greedy
first-improvement moves of a single parameter by +-1, screened in float64 (or
at a low bit count), with every new leader re-certified at full precision.
When no neighbour improves, a few coordinates of the best collection are
resampled in a small window and the climb restarts from there.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from .asymptotics import beta_r_limit_float, c2_float
from .certificates import INDETERMINATE, verify
from .geometry import build_floor_matrix, stieltjes_rate_float
from .hpreal import HPReal
from .params import BetaCollection, ZetaCollection

RESTART_COORDS = 3
RESTART_WINDOW = 4


@dataclass(frozen=True)
class PrecisionProfile:
    coarse_bits: int = 53  # 53 or less screens in float64
    full_bits: int = 192


@dataclass(frozen=True)
class HistoryRecord:
    step: int
    collection: ZetaCollection | BetaCollection
    margin: float | None  # None when the evaluation itself failed
    tier: str  # "coarse" or "full"
    verdict: str | None = None
    accepted: bool = False
    err_bound: float | None = None

    def to_json(self) -> str:
        col = self.collection
        rec = {"step": self.step, "tier": self.tier, "family": col.family, "s": col.s}
        if isinstance(col, ZetaCollection):
            rec.update(m1=col.m1, m2=col.m2, deltas=list(col.deltas))
        else:
            rec.update(eta0=col.eta0, etas=list(col.etas))
        rec.update(margin=self.margin, verdict=self.verdict, accepted=self.accepted, err_bound=self.err_bound)
        return json.dumps(rec, sort_keys=True)


@dataclass
class SearchState:
    seed: int
    budget: int
    profile: PrecisionProfile
    start: ZetaCollection | BetaCollection
    best: tuple = (None, None)  # (collection, HPReal margin or None)
    history: list[HistoryRecord] = field(default_factory=list)
    evaluations: int = 0

    @property
    def best_margin(self) -> float | None:
        m = self.best[1]
        return None if m is None else float(m)

    def accepted(self) -> list[HistoryRecord]:
        return [r for r in self.history if r.accepted]


# ---------------------------------------------------------------- neighbourhoods


def neighbors(col):
    """Feasible collections one +-1 move away, in a fixed order."""
    out = []
    if isinstance(col, ZetaCollection):
        for kw in ({"m1": col.m1 - 1}, {"m1": col.m1 + 1}, {"m2": col.m2 - 1}, {"m2": col.m2 + 1}):
            out.append(col.replace(**kw))
        for j in range(len(col.deltas)):
            for step in (-1, 1):
                d = list(col.deltas)
                d[j] += step
                out.append(col.replace(deltas=tuple(d)))
    else:
        out += [col.replace(eta0=col.eta0 - 1), col.replace(eta0=col.eta0 + 1)]
        for j in range(len(col.etas)):
            for step in (-1, 1):
                e = list(col.etas)
                e[j] += step
                out.append(col.replace(etas=tuple(e)))
    return [c for c in out if c.is_feasible()]


def _resample(col, rng: random.Random):
    """Redraw a few coordinates within a window around their current values."""
    if isinstance(col, ZetaCollection):
        vals, lo, hi = list(col.deltas), 0, (col.m2 - 1) // 2
    else:
        vals, lo, hi = list(col.etas), 1, (col.eta0 - 1) // 2
    for _ in range(100):
        trial = list(vals)
        for j in rng.sample(range(len(vals)), min(RESTART_COORDS, len(vals))):
            trial[j] = rng.randint(max(lo, vals[j] - RESTART_WINDOW), min(hi, vals[j] + RESTART_WINDOW))
        cand = col.replace(deltas=tuple(trial)) if isinstance(col, ZetaCollection) else col.replace(etas=tuple(trial))
        if cand != col and cand.is_feasible():
            return cand
    return None


# ---------------------------------------------------------------- evaluation tiers


def coarse_margin(col, bits: int = 53) -> float:
    """Screening margin; float64 when bits <= 53, else a certificate at ``bits``."""
    if bits > 53:
        return float(verify(col, bits).margin)
    c1 = stieltjes_rate_float(build_floor_matrix(col))
    if isinstance(col, ZetaCollection):
        return c1 - c2_float(col)[1]
    return c1 - (beta_r_limit_float(col) + col.s * col.mid_width)


def search_parameters(start, budget: int, seed: int = 0, profile: PrecisionProfile | None = None,
                      on_record=None) -> SearchState:
    """Hill climbing from ``start``; ``budget`` counts distinct collections screened."""
    start.check()
    profile = profile or PrecisionProfile()
    state = SearchState(seed, budget, profile, start, best=(start, None))
    if budget <= 0:
        return state
    rng = random.Random(seed)
    memo: dict = {}

    def log(rec: HistoryRecord):
        state.history.append(rec)
        if on_record:
            on_record(rec)

    def screen(col) -> float:
        if col in memo:
            return memo[col]
        state.evaluations += 1
        try:
            v = coarse_margin(col, profile.coarse_bits)
        except ArithmeticError:
            v = None
        memo[col] = -math.inf if v is None else v
        log(HistoryRecord(len(state.history), col, v, "coarse"))
        return memo[col]

    best_screen = [-math.inf]

    def confirm(col, v: float, force: bool = False):
        if not force and v <= best_screen[0]:
            return
        cert = verify(col, profile.full_bits)
        m: HPReal = cert.margin
        cur = state.best[1]
        take = cert.verdict != INDETERMINATE and (force or cur is None or m.value > cur.value)
        log(HistoryRecord(len(state.history), col, float(m), "full", cert.verdict, take, float(m.err)))
        if take:
            state.best = (col, m)
            best_screen[0] = v

    current = start
    cur_val = screen(start)
    confirm(start, cur_val, force=True)

    spins = 0
    while state.evaluations < budget and spins < 50 * budget:
        spins += 1
        nbs = neighbors(current)
        rng.shuffle(nbs)
        moved = False
        for nb in nbs:
            if state.evaluations >= budget and nb not in memo:
                break
            v = screen(nb)
            if v > cur_val:
                current, cur_val, moved = nb, v, True
                confirm(nb, v)
                break
        if moved or state.evaluations >= budget:
            continue
        cand = _resample(state.best[0], rng)
        if cand is None:
            break
        current, cur_val = cand, screen(cand)
        confirm(cand, cur_val)
    return state
