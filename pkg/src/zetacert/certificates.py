"""End-to-end certificates: arithmetic gain against analytic growth, with a three-valued verdict."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__, _kernels
from .asymptotics import beta_r_limit, find_x0
from .geometry import build_floor_matrix, stieltjes_report
from .hpreal import HPReal, format_hp
from .params import BetaCollection, ZetaCollection

PROVEN, NOT_PROVEN, INDETERMINATE = "proven", "not-proven", "indeterminate"
REPORT_VERSION = 1


def verdict_of(margin: HPReal) -> str:
    s = margin.sign()
    return PROVEN if s > 0 else NOT_PROVEN if s < 0 else INDETERMINATE


@dataclass(frozen=True)
class Certificate:
    family: str
    collection: ZetaCollection | BetaCollection
    precision_bits: int
    c1: HPReal
    c2: HPReal
    margin: HPReal
    verdict: str
    breakpoint_count: int
    x0: HPReal | None = None
    growth: HPReal | None = None
    rate: HPReal | None = None
    timings: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def proven(self) -> bool:
        return self.verdict == PROVEN

    def fields(self, digits: int = 20) -> list[tuple[str, str]]:
        col = self.collection
        out = [("report_version", str(REPORT_VERSION)), ("tool_version", __version__), ("family", self.family)]
        if isinstance(col, ZetaCollection):
            out += [("s", str(col.s)), ("m1", str(col.m1)), ("m2", str(col.m2)),
                    ("deltas", " ".join(map(str, col.deltas)))]
        else:
            out += [("s", str(col.s)), ("eta0", str(col.eta0)), ("etas", " ".join(map(str, col.etas)))]
        out.append(("precision_bits", str(self.precision_bits)))
        for key, val in self.notes.items():
            out.append((key, str(val)))
        if self.x0 is not None:
            out.append(("x0", format_hp(self.x0, digits)))
        if self.growth is not None:
            out += [("growth", format_hp(self.growth, digits)), ("rate", format_hp(self.rate, digits))]
        out += [
            ("c1", format_hp(self.c1, digits)),
            ("c2", format_hp(self.c2, digits)),
            ("margin", format_hp(self.margin, digits)),
            ("err_bound", f"{float(self.margin.err):.3e}"),
            ("verdict", self.verdict),
            ("breakpoint_count", str(self.breakpoint_count)),
        ]
        out += [(f"{k}_ms", f"{v:.0f}") for k, v in self.timings.items()]
        return out

    def report(self) -> str:
        return "".join(f"{k}: {v}\n" for k, v in self.fields())


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000


def verify_zeta(col: ZetaCollection, precision_bits: int = 192, threads: int | None = None) -> Certificate:
    """margin = C1 - C2 for a zeta collection."""
    col.check()
    _kernels.set_threads(threads)
    t_all = time.perf_counter()
    t0 = time.perf_counter()
    st = stieltjes_report(build_floor_matrix(col), precision_bits)
    c1 = st.value
    t_c1 = _ms(t0)
    t0 = time.perf_counter()
    prof = find_x0(col, precision_bits)
    t_c2 = _ms(t0)
    margin = c1 - prof.c2
    return Certificate(
        "zeta", col, precision_bits, c1, prof.c2, margin, verdict_of(margin), st.breakpoint_count,
        x0=prof.x0,
        timings={"c1_time": t_c1, "c2_time": t_c2, "wall_time": _ms(t_all)},
        notes={"negative_intervals": st.negative_intervals},
    )


def verify_beta(col: BetaCollection, precision_bits: int = 192, threads: int | None = None) -> Certificate:
    """proven iff growth + s (eta0 - 2 eta_min) - C~1 < 0; margin is the negated sum."""
    col.check()
    _kernels.set_threads(threads)
    t_all = time.perf_counter()
    t0 = time.perf_counter()
    st = stieltjes_report(build_floor_matrix(col), precision_bits)
    c1 = st.value
    rate = HPReal.exact(col.s * col.mid_width, precision_bits) - c1
    t_c1 = _ms(t0)
    t0 = time.perf_counter()
    g = beta_r_limit(col, precision_bits)
    t_c2 = _ms(t0)
    c2 = g.value + col.s * col.mid_width
    margin = c1 - c2
    notes = {"negative_intervals": st.negative_intervals}
    if g.fallback_used:
        notes["growth_method"] = "coordinate-ascent"
    return Certificate(
        "beta", col, precision_bits, c1, c2, margin, verdict_of(margin), st.breakpoint_count,
        growth=g.value, rate=rate,
        timings={"c1_time": t_c1, "c2_time": t_c2, "wall_time": _ms(t_all)},
        notes=notes,
    )


def verify(col, precision_bits: int = 192, threads: int | None = None) -> Certificate:
    if isinstance(col, ZetaCollection):
        return verify_zeta(col, precision_bits, threads)
    return verify_beta(col, precision_bits, threads)
