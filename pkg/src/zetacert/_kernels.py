"""Batch evaluation of nu_0(x) = min_y sum_i c_i floor(a_i x + b_i y).

For a rational x = P/Q every jump of y -> nu(x, y) on [0, 1) sits on the
lattice (1/(B Q)) Z with B = lcm|b_i|, so the minimum is found exactly by an
integer sweep: start from the left limit at y = 0, walk the jump points in
order, and record both the value on each open gap and the value attained on
the jump point itself (rows with b > 0 take their right limit there, rows with
b < 0 their left limit).

Two interchangeable backends: numba ``@njit`` loops, and a vectorised numpy
path.  Set ``ZETACERT_PURE_NUMPY=1`` to force the numpy path.
"""

from __future__ import annotations

import math
import os

import numpy as np

PURE_NUMPY = os.environ.get("ZETACERT_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes")

try:  # pragma: no cover - exercised implicitly
    import numba

    if os.environ.get("NUMBA_THREADING_LAYER") is None:
        numba.config.THREADING_LAYER = "workqueue"
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_CHUNK = 8192


def lattice_scale(b: np.ndarray) -> int:
    out = 1
    for v in b:
        if v:
            out = math.lcm(out, abs(int(v)))
    return out


# ---------------------------------------------------------------- numpy path


def _events_numpy(c, a, b, B, P, Q):
    """Sorted event keys and jumps for a chunk of x values, plus the left limit at 0."""
    aP = a[None, :] * P[:, None]
    Qc = Q[:, None]
    fl = aP // Qc
    ce = -((-aP) // Qc)
    left = np.where(b[None, :] > 0, ce - 1, fl)
    base = (c[None, :] * left).sum(axis=1)

    keys, jumps = [], []
    for i in range(len(c)):
        bi = int(b[i])
        if bi > 0:
            scale = B // bi
            for t in range(bi):
                k = ce[:, i] + t
                keys.append(((k * Q - aP[:, i]) * scale) * 2)
                jumps.append(np.full(len(P), c[i], dtype=np.int64))
        elif bi < 0:
            scale = B // (-bi)
            for t in range(-bi):
                k = fl[:, i] - t
                keys.append(((aP[:, i] - k * Q) * scale) * 2 + 1)
                jumps.append(np.full(len(P), -c[i], dtype=np.int64))
    if not keys:
        e = np.zeros((len(P), 0), dtype=np.int64)
        return e, e, base
    keys = np.stack(keys, axis=1)
    jumps = np.stack(jumps, axis=1)
    order = np.argsort(keys, axis=1, kind="stable")
    return np.take_along_axis(keys, order, 1), np.take_along_axis(jumps, order, 1), base


def _nu0_numpy_chunk(c, a, b, B, P, Q):
    keys, jumps, base = _events_numpy(c, a, b, B, P, Q)
    if keys.shape[1] == 0:
        return base
    vals = base[:, None] + np.cumsum(jumps, axis=1)
    y = keys >> 1
    neg = keys & 1
    nxt_y = np.concatenate([y[:, 1:], np.full((len(P), 1), -1, dtype=np.int64)], axis=1)
    nxt_neg = np.concatenate([neg[:, 1:], np.ones((len(P), 1), dtype=np.int64)], axis=1)
    group_end = nxt_y != y
    pos_end = (neg == 0) & (group_end | (nxt_neg == 1))
    big = np.iinfo(np.int64).max
    cand = np.where(group_end | pos_end, vals, big).min(axis=1)
    return np.minimum(cand, base)


def nu0_batch_numpy(c, a, b, P, Q) -> np.ndarray:
    B = lattice_scale(b)
    out = np.empty(len(P), dtype=np.int64)
    for s in range(0, len(P), _CHUNK):
        out[s : s + _CHUNK] = _nu0_numpy_chunk(c, a, b, B, P[s : s + _CHUNK], Q[s : s + _CHUNK])
    return out


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _nu0_one(c, a, b, B, E, SH, P, Q, packed, jumps):
        # packed = ((2*y + neg) << SH) | event index, sorted in place
        base = 0
        e = 0
        for i in range(c.shape[0]):
            aP = a[i] * P
            fl = aP // Q
            if b[i] > 0:
                ce = -((-aP) // Q)
                base += c[i] * (ce - 1)
                scale = B // b[i]
                for t in range(b[i]):
                    packed[e] = ((((ce + t) * Q - aP) * scale * 2) << SH) | e
                    jumps[e] = c[i]
                    e += 1
            elif b[i] < 0:
                base += c[i] * fl
                scale = B // (-b[i])
                for t in range(-b[i]):
                    packed[e] = (((aP - (fl - t) * Q) * scale * 2 + 1) << SH) | e
                    jumps[e] = -c[i]
                    e += 1
            else:
                base += c[i] * fl
        packed.sort()
        MASK = (1 << SH) - 1
        best = base
        v = base
        j = 0
        while j < E:
            key = packed[j] >> SH
            y = key >> 1
            while j < E:
                key = packed[j] >> SH
                if (key >> 1) != y or (key & 1) == 1:
                    break
                v += jumps[packed[j] & MASK]
                j += 1
            if v < best:
                best = v
            while j < E:
                key = packed[j] >> SH
                if (key >> 1) != y:
                    break
                v += jumps[packed[j] & MASK]
                j += 1
            if v < best:
                best = v
        return best

    @njit(cache=True, parallel=True)
    def _nu0_batch_numba(c, a, b, B, P, Q):
        n = P.shape[0]
        E = 0
        for i in range(b.shape[0]):
            E += abs(b[i])
        SH = 1
        while (1 << SH) <= E:
            SH += 1
        out = np.empty(n, dtype=np.int64)
        nchunks = (n + 1023) // 1024
        for ch in prange(nchunks):
            packed = np.empty(max(E, 1), dtype=np.int64)
            jumps = np.empty(max(E, 1), dtype=np.int64)
            for idx in range(ch * 1024, min(n, (ch + 1) * 1024)):
                out[idx] = _nu0_one(c, a, b, B, E, SH, P[idx], Q[idx], packed[:E], jumps)
        return out


def nu0_batch_numba(c, a, b, P, Q) -> np.ndarray:
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    return _nu0_batch_numba(c, a, b, lattice_scale(b), P, Q)


def nu0_batch(c, a, b, P, Q, backend: str | None = None) -> np.ndarray:
    """nu_0 at x = P[i]/Q[i] for each i (Q > 0, fractions need not be reduced)."""
    c = np.ascontiguousarray(c, dtype=np.int64)
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    P = np.ascontiguousarray(P, dtype=np.int64)
    Q = np.ascontiguousarray(Q, dtype=np.int64)
    _check_range(a, b, P, Q)
    if backend is None:
        backend = "numpy" if (PURE_NUMPY or not HAVE_NUMBA) else "numba"
    if backend == "numba":
        return nu0_batch_numba(c, a, b, P, Q)
    if backend == "numpy":
        return nu0_batch_numpy(c, a, b, P, Q)
    raise ValueError(f"unknown backend {backend!r}")


def _check_range(a, b, P, Q):
    if len(P) == 0:
        return
    if Q.min() <= 0:
        raise ValueError("denominators must be positive")
    amax = int(np.abs(a).max()) if len(a) else 0
    B = lattice_scale(b)
    E = int(np.abs(b).sum())
    bound = (amax + 1) * int(np.abs(P).max() + Q.max()) * B * 4 * (1 << max(E, 1).bit_length()) + 8
    if bound >= 2**62:
        raise OverflowError("x denominators too large for int64 sweep")


def set_threads(n: int | None) -> None:
    if HAVE_NUMBA and n:
        numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


def active_backend() -> str:
    return "numpy" if (PURE_NUMPY or not HAVE_NUMBA) else "numba"
