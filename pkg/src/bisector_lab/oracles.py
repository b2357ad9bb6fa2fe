"""Brute-force reference counts.

Each function enumerates the full tuple space of its definition (E^3 or
E^4, pairs of pairs, 8-tuples) with numpy broadcasting, chunked over the
first coordinate. Nothing here shares code with the fast engines beyond
the canonical line/plane normalisation in geom2/incidence3.
"""

from __future__ import annotations

import numpy as np

from .geom2 import bisector, dist2


def _coords(E):
    arr = np.array(E.points, dtype=np.int64).reshape(-1, 2)
    return arr[:, 0], arr[:, 1]


def _dist_matrix(E):
    x, y = _coords(E)
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    return (dx * dx + dy * dy) % E.p


def distance_set(E) -> set[int]:
    return {dist2(a, b, E.m) for a in E.points for b in E.points}


def histogram_mass(E) -> int:
    return len(E) ** 2


def equal_distance_quadruples(E) -> int:
    """#{(a, b, c, d) : ||a - b|| = ||c - d||}."""
    D = _dist_matrix(E)
    total = 0
    for a in range(len(E)):
        total += int((D[a][:, None, None] == D[None, :, :]).sum())
    return total


def isosceles_triples(E) -> int:
    """#{(a, b, c) : ||a - c|| = ||b - c|| != 0}."""
    D = _dist_matrix(E)
    # D[a, c] vs D[b, c]
    eq = (D[:, None, :] == D[None, :, :]) & (D[:, None, :] != 0)
    return int(eq.sum())


def _dot(ux, uy, vx, vy, p):
    return (ux * vx + uy * vy) % p


def rectangles(E) -> int:
    """Ordered quadruples passing all four corner tests and not all collinear."""
    if len(E) == 0:
        return 0
    p = E.p
    x, y = _coords(E)
    n = len(x)
    bx, cx, dx = x[:, None, None], x[None, :, None], x[None, None, :]
    by, cy, dy = y[:, None, None], y[None, :, None], y[None, None, :]
    total = 0
    for a in range(n):
        ax, ay = x[a], y[a]
        ok = _dot(bx - ax, by - ay, dx - ax, dy - ay, p) == 0          # (a, b, d)
        ok = ok & (_dot(ax - bx, ay - by, cx - bx, cy - by, p) == 0)       # (b, a, c)
        ok = ok & (_dot(bx - cx, by - cy, dx - cx, dy - cy, p) == 0)       # (c, b, d)
        ok = ok & (_dot(ax - dx, ay - dy, cx - dx, cy - dy, p) == 0)       # (d, a, c)
        # collinear iff the vectors b-a, c-a, d-a have rank <= 1
        u = (bx - ax, by - ay)
        v = (cx - ax, cy - ay)
        w = (dx - ax, dy - ay)
        deg = ((u[0] * v[1] - u[1] * v[0]) % p == 0)
        deg = deg & ((u[0] * w[1] - u[1] * w[0]) % p == 0)
        deg = deg & ((v[0] * w[1] - v[1] * w[0]) % p == 0)
        total += int((ok & ~deg).sum())
    return total


def paraboloid_quadruples(E) -> int:
    """#{(a, b, c, d) : a != b, c != d, (b - a, ||b|| - ||a||) = (d - c, ||d|| - ||c||)}."""
    if len(E) == 0:
        return 0
    p = E.p
    x, y = _coords(E)
    z = (x * x + y * y) % p
    n = len(x)
    idx = np.arange(n)
    # lifted differences for every ordered pair (a, b), flattened
    ddx = (x[None, :] - x[:, None]) % p
    ddy = (y[None, :] - y[:, None]) % p
    ddz = (z[None, :] - z[:, None]) % p
    offdiag = idx[:, None] != idx[None, :]
    total = 0
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            hit = (ddx == ddx[a, b]) & (ddy == ddy[a, b]) & (ddz == ddz[a, b]) & offdiag
            total += int(hit.sum())
    return total


def bisector_line_quadruples(E) -> int:
    """#{(a, b, c, d) : l_ab and l_cd both defined and equal}, comparing lines pairwise."""
    lines = [
        tuple(bisector(a, b, E.m))
        for a in E.points
        for b in E.points
        if dist2(a, b, E.m) != 0
    ]
    if not lines:
        return 0
    L = np.array(lines, dtype=np.int64)
    eq = (L[:, None, 0] == L[None, :, 0]) & (L[:, None, 1] == L[None, :, 1]) & (L[:, None, 2] == L[None, :, 2])
    return int(eq.sum())


def bisector_incidences(E) -> int:
    """#{(a, b, c) : ||a - b|| != 0 and c satisfies x . 2(b - a) = ||b|| - ||a||}."""
    p = E.p
    x, y = _coords(E)
    n = len(x)
    z = (x * x + y * y) % p
    total = 0
    for a in range(n):
        for b in range(n):
            if dist2(E.points[a], E.points[b], E.m) == 0:
                continue
            lhs = (2 * (x[b] - x[a]) * x + 2 * (y[b] - y[a]) * y) % p
            total += int((lhs == (z[b] - z[a]) % p).sum())
    return total


# -- residue sets ------------------------------------------------------------


def e4_eight_tuples(A) -> int:
    """#{(x1..x4, y1..y4) in (A^2)^8 : x1 - y1 = x2 - y2 = x3 - y3 = x4 - y4}."""
    p = A.m.p
    sq = np.array(sorted({a * a % p for a in A.elems}), dtype=np.int64)
    s = len(sq)
    if s == 0:
        return 0
    # axes x1, y1, x2, y2, x3, y3, x4, y4
    shape = [1] * 8

    def axis(k):
        sh = list(shape)
        sh[k] = s
        return sq.reshape(sh)

    d1 = (axis(0) - axis(1)) % p
    d2 = (axis(2) - axis(3)) % p
    d3 = (axis(4) - axis(5)) % p
    d4 = (axis(6) - axis(7)) % p
    return int(((d1 == d2) & (d2 == d3) & (d3 == d4)).sum())


def chi_quadruples(A, P, D) -> int:
    """sum_w #{(x, y, u, v) in P^2 x D^2 : x - u = y - v = w, u - v in P}, w over D.

    P is the popular set and D = A^2 - A^2; both as iterables of residues.
    """
    p = A.m.p
    Pa = np.array(sorted(P), dtype=np.int64)
    Da = np.array(sorted(D), dtype=np.int64)
    if len(Pa) == 0 or len(Da) == 0:
        return 0
    inD = np.zeros(p, dtype=bool)
    inD[Da] = True
    inP = np.zeros(p, dtype=bool)
    inP[Pa] = True
    x = Pa[:, None, None, None]
    y = Pa[None, :, None, None]
    u = Da[None, None, :, None]
    v = Da[None, None, None, :]
    w1 = (x - u) % p
    w2 = (y - v) % p
    hit = (w1 == w2) & inD[w1] & inP[(u - v) % p]
    return int(hit.sum())


def e4_six_fold(xs, us, ts, p) -> int:
    """#{(x, u, t, x', u', t') : (x + u)^2 - t = (x' + u')^2 - t'} by full enumeration."""
    X = np.array(sorted(set(xs)), dtype=np.int64)
    U = np.array(sorted(set(us)), dtype=np.int64)
    T = np.array(sorted(set(ts)), dtype=np.int64)
    vals = (((X[:, None, None] + U[None, :, None]) ** 2 - T[None, None, :]) % p).ravel()
    return int((vals[:, None] == vals[None, :]).sum())
