"""Prime sieve and the least common multiples D_N = lcm(1, ..., N)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes, primes <= n as int64."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_in(lo_exclusive_sq: int, hi: int) -> list[int]:
    """Primes p with p*p > lo_exclusive_sq and p <= hi.

    Taking the squared lower bound keeps ranges like (sqrt(3(2m1+m2)n), M]
    exact without floating square roots.
    """
    return [int(p) for p in primes_up_to(hi) if p * p > lo_exclusive_sq]


@dataclass(frozen=True)
class NumberTables:
    primes: tuple[int, ...]
    d_values: tuple[int, ...]  # d_values[N] = D_N, d_values[0] = 1

    def D(self, n: int) -> int:
        return self.d_values[n]


def number_tables(prime_bound: int, lcm_bound: int) -> NumberTables:
    if prime_bound < 1 or lcm_bound < 1:
        raise ValueError("bounds must be >= 1")
    d = [1, 1]
    for n in range(2, lcm_bound + 1):
        p = _prime_power_base(n)
        d.append(d[-1] * p if p else d[-1])
    return NumberTables(tuple(int(p) for p in primes_up_to(prime_bound)), tuple(d))


def _prime_power_base(n: int) -> int:
    # p if n = p^a, else 0
    f = 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            return f if n == 1 else 0
        f += 1
    return n


def lcm_upto(n: int) -> int:
    """D_n, with D_0 = 1."""
    return number_tables(1, max(n, 1)).D(max(n, 0))
