"""Fallback kernels in numpy; same contract as the compiled ``_kernels``."""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def rref_modp(M, p: int):
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - R[others, c][:, None] * R[r][None, :]) % p
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank_modp(M, p: int) -> int:
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        below = r + 1 + np.nonzero(R[r + 1 :, c])[0]
        if below.size:
            R[below] = (R[below] - R[below, c][:, None] * R[r][None, :]) % p
        r += 1
    return r


def projective_weights(G, steps, q: int, p: int, add_table, mul_table, limit: int):
    G = np.asarray(G, dtype=np.int64)
    k, N = G.shape
    hist = np.zeros(N + 1, dtype=np.int64)
    seen = 0
    if limit <= 0:
        return hist, 0
    for lead in range(k):
        rest = G[lead + 1 :]
        free = k - 1 - lead
        total = q**free
        radix = np.array([q ** (free - 1 - j) for j in range(free)], dtype=np.int64)
        start = 0
        while start < total:
            stop = min(total, start + _CHUNK, start + (limit - seen))
            idx = np.arange(start, stop, dtype=np.int64)
            coeffs = (idx[:, None] // radix[None, :]) % q if free else np.zeros((len(idx), 0), np.int64)
            if add_table is None:
                cw = (G[lead][None, :] + coeffs @ rest) % p
            else:
                cw = np.broadcast_to(G[lead], (len(idx), N)).copy()
                for j in range(free):
                    cw = add_table[cw, mul_table[coeffs[:, j][:, None], rest[j][None, :]]]
            w = np.count_nonzero(cw, axis=1)
            hist += np.bincount(w, minlength=N + 1)
            seen += len(idx)
            if seen >= limit:
                return hist, seen
            start = stop
    return hist, seen
