"""Numpy implementations of the counting kernels.

Same signatures and results as the compiled ``_ckernels`` module; used
when the extension is unavailable or when inputs exceed its limits.
``threads`` is accepted for interface parity and ignored.
"""

from __future__ import annotations

import numpy as np


def _sqdist_row(xs, ys, c, p):
    dx = (xs - xs[c]) % p
    dy = (ys - ys[c]) % p
    return (dx * dx % p + dy * dy % p) % p


def isosceles_count(xs, ys, p, threads=1):
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    total = 0
    for c in range(len(xs)):
        d = _sqdist_row(xs, ys, c, p)
        d = d[d != 0]
        if d.size:
            _, cnt = np.unique(d, return_counts=True)
            total += int(np.dot(cnt, cnt))
    return total


def distance_counts(xs, ys, p, threads=1):
    """(values, counts) of ||a - b|| over ordered pairs, values ascending."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    n = len(xs)
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    if p <= 1 << 22:
        hist = np.zeros(p, dtype=np.int64)
        for c in range(n):
            hist += np.bincount(_sqdist_row(xs, ys, c, p), minlength=p)
        vals = np.flatnonzero(hist)
        return vals, hist[vals]
    allv = np.concatenate([_sqdist_row(xs, ys, c, p) for c in range(n)])
    return np.unique(allv, return_counts=True)


def _modinv(a, p):
    """Vectorised a^(p-2) mod p for residues a != 0."""
    result = np.ones_like(a)
    base = a % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def _row_keys(kind, xs, ys, nrm, i, p):
    j = slice(i + 1, None)
    if kind == 0:
        s1 = (xs[i] + xs[j]) % p
        s2 = (ys[i] + ys[j]) % p
        s3 = (nrm[i] + nrm[j]) % p
        return np.stack([s1, s2, s3], axis=1)
    a = (xs[j] - xs[i]) % p
    b = (ys[j] - ys[i]) % p
    c = (nrm[j] - nrm[i]) % p
    keep = (a * a % p + b * b % p) % p != 0
    a, b, c = a[keep], b[keep], c[keep]
    lead = np.where(a != 0, a, b)
    inv = _modinv(lead, p)
    flag = (a == 0).astype(np.int64)
    return np.stack([flag, b * inv % p * (1 - flag), c * inv % p], axis=1)


def pair_key_energy(kind, xs, ys, p, threads=1, round_cap=None):
    """(sum u^2, sum u*d, keyed pairs) over unordered pairs i < j; see ``_ckernels``."""
    if kind not in (0, 1):
        raise ValueError("kind must be 0 (lifted sum) or 1 (bisector line)")
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    n = len(xs)
    nrm = (xs * xs % p + ys * ys % p) % p
    rows = [_row_keys(kind, xs, ys, nrm, i, p) for i in range(n - 1)]
    rows = [r for r in rows if len(r)]
    if not rows:
        return 0, 0, 0
    keys, counts = np.unique(np.concatenate(rows), axis=0, return_counts=True)
    counts = counts.astype(np.int64)
    sum_u2 = int(np.dot(counts, counts))
    sum_ud = 0
    if kind == 0:
        lookup = {tuple(k): int(c) for k, c in zip(keys.tolist(), counts.tolist())}
        diag = np.stack([2 * xs % p, 2 * ys % p, 2 * nrm % p], axis=1)
        sum_ud = sum(lookup.get(tuple(k), 0) for k in diag.tolist())
    return sum_u2, sum_ud, int(counts.sum())
