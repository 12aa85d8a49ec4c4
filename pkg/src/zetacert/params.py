"""Integral parameter collections driving the zeta and beta constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class InfeasibleCollectionError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("infeasible collection: " + "; ".join(self.violations))


@dataclass(frozen=True)
class ZetaCollection:
    s: int
    m1: int
    m2: int
    deltas: tuple[int, ...]
    family: str = field(default="zeta", init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(int(d) for d in self.deltas))

    @property
    def delta_min(self) -> int:
        return min(self.deltas)

    @property
    def mid_width(self) -> int:
        """m2 - 2 delta_min, the scale of the largest prime in Phi_n."""
        return self.m2 - 2 * self.delta_min

    def violations(self) -> list[str]:
        out = []
        if self.s < 5 or self.s % 2 == 0:
            out.append(f"s must be an odd integer >= 5 (got {self.s})")
        if self.m1 < 1:
            out.append(f"m1 >= 1 violated (m1 = {self.m1})")
        if self.m2 < 1:
            out.append(f"m2 >= 1 violated (m2 = {self.m2})")
        if len(self.deltas) != self.s + 1:
            out.append(f"expected s+1 = {self.s + 1} deltas, got {len(self.deltas)}")
        for j, d in enumerate(self.deltas, start=1):
            if d < 0:
                out.append(f"0 <= delta_{j} violated (delta_{j} = {d})")
            if 2 * d >= self.m2:
                out.append(f"delta_{j} < m2/2 violated (delta_{j} = {d}, m2 = {self.m2})")
        total = sum(self.deltas)
        if 2 * total >= (self.s - 2) * self.m2 - 8 * self.m1:
            out.append(
                f"sum delta_j < ((s-2) m2 - 8 m1)/2 violated "
                f"(sum = {total}, bound = {Fraction((self.s - 2) * self.m2 - 8 * self.m1, 2)})"
            )
        return out

    def is_feasible(self) -> bool:
        return not self.violations()

    def check(self) -> "ZetaCollection":
        v = self.violations()
        if v:
            raise InfeasibleCollectionError(v)
        return self

    def replace(self, **kw) -> "ZetaCollection":
        d = dict(s=self.s, m1=self.m1, m2=self.m2, deltas=self.deltas)
        d.update(kw)
        return ZetaCollection(**d)

    @classmethod
    def reference(cls) -> "ZetaCollection":
        """The s = 35 collection used for the two-irrationals result."""
        deltas = []
        for j in range(1, 37):
            if j <= 5:
                deltas.append(4)
            elif j <= 11:
                deltas.append(j - 1)
            elif j <= 32:
                deltas.append(2 * j - 12)
            else:
                deltas.append(4 * j - 76)
        return cls(35, 209, 243, tuple(deltas))

    @classmethod
    def toy(cls) -> "ZetaCollection":
        return cls(5, 1, 4, (0,) * 6)


@dataclass(frozen=True)
class BetaCollection:
    s: int
    eta0: int
    etas: tuple[int, ...]
    family: str = field(default="beta", init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "etas", tuple(int(e) for e in self.etas))

    @property
    def eta_min(self) -> int:
        return min(self.etas)

    @property
    def mid_width(self) -> int:
        """eta0 - 2 eta_min; M~ = mid_width * n."""
        return self.eta0 - 2 * self.eta_min

    def h0(self, n: int) -> int:
        return self.eta0 * n + 1

    def hs(self, n: int) -> tuple[Fraction, ...]:
        return tuple(e * n + Fraction(1, 2) for e in self.etas)

    def big_n(self, n: int) -> int:
        """N = min_j (h_j - 1/2)."""
        return self.eta_min * n

    def m_tilde(self, n: int) -> int:
        return self.h0(n) - 2 * self.big_n(n) - 1

    def violations(self) -> list[str]:
        out = []
        if self.s < 1 or self.s % 2 == 0:
            out.append(f"s must be an odd positive integer (got {self.s})")
        if len(self.etas) != self.s:
            out.append(f"expected s = {self.s} etas, got {len(self.etas)}")
        for j, e in enumerate(self.etas, start=1):
            if e <= 0:
                out.append(f"0 < eta_{j} violated (eta_{j} = {e})")
            if 2 * e >= self.eta0:
                out.append(f"eta_{j} < eta0/2 violated (eta_{j} = {e}, eta0 = {self.eta0})")
        total = sum(self.etas)
        if 2 * total > (self.s - 1) * self.eta0:
            out.append(
                f"sum eta_j <= (s-1) eta0/2 violated "
                f"(sum = {total}, bound = {Fraction((self.s - 1) * self.eta0, 2)})"
            )
        return out

    def is_feasible(self) -> bool:
        return not self.violations()

    def check(self) -> "BetaCollection":
        v = self.violations()
        if v:
            raise InfeasibleCollectionError(v)
        return self

    def replace(self, **kw) -> "BetaCollection":
        d = dict(s=self.s, eta0=self.eta0, etas=self.etas)
        d.update(kw)
        return BetaCollection(**d)

    @classmethod
    def reference(cls) -> "BetaCollection":
        return cls(11, 94, (32, 32, 32, 32, 33, 34, 35, 36, 37, 38, 39))

    @classmethod
    def toy(cls) -> "BetaCollection":
        return cls(3, 4, (1, 1, 1))


Collection = ZetaCollection | BetaCollection
