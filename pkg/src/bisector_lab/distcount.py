"""Counting quantities of a planar point set E in F_p^2.

All tuple counts are over ordered tuples. The fast paths here go through
:mod:`bisector_lab.kernels`; slow literal enumerations for cross-checking
live in :mod:`bisector_lab.oracles`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from . import kernels
from .errors import TooLarge
from .field import PrimeModulus
from .geom2 import (
    CanonicalLine,
    Point2,
    bisector,
    dist2,
    lifted_difference,
)


@dataclass(frozen=True)
class PlaneSet:
    m: PrimeModulus
    points: tuple[Point2, ...]

    @classmethod
    def from_points(cls, points: Iterable, m: PrimeModulus) -> "PlaneSet":
        p = m.p
        pts = sorted({Point2(int(x) % p, int(y) % p) for x, y in points})
        return cls(m, tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def p(self) -> int:
        return self.m.p


@dataclass
class LineClass:
    """One class S_i of the bisector partition."""

    size: int = 0
    # exact lifted difference vector -> |S_{i lambda}|
    sub: Counter = field(default_factory=Counter)


@dataclass
class BisectorPartition:
    classes: dict[CanonicalLine, LineClass]

    @property
    def total(self) -> int:
        return sum(c.size for c in self.classes.values())

    def square_sum(self) -> int:
        return sum(c.size * c.size for c in self.classes.values())

    def subclass_square_sum(self) -> int:
        return sum(s * s for c in self.classes.values() for s in c.sub.values())

    def max_subclasses(self) -> int:
        return max((len(c.sub) for c in self.classes.values()), default=0)


def distance_histogram(E: PlaneSet, threads: int | None = None) -> dict[int, int]:
    """t -> nu(t), the number of ordered pairs at distance t."""
    if not E.points:
        return {}
    vals, counts = kernels.distance_counts(E.points, E.p, threads)
    return {int(v): int(c) for v, c in zip(vals.tolist(), counts.tolist())}


def distance_set(E: PlaneSet, threads: int | None = None) -> set[int]:
    """Delta(E), which contains 0 as soon as E is nonempty."""
    return set(distance_histogram(E, threads))


def nonzero_distance_count(E: PlaneSet, threads: int | None = None) -> int:
    return len(distance_set(E, threads) - {0})


def second_moment(E: PlaneSet, threads: int | None = None) -> int:
    return sum(c * c for c in distance_histogram(E, threads).values())


def isosceles_count(E: PlaneSet, threads: int | None = None) -> int:
    """T(E) = #{(a, b, c) : ||a - c|| = ||b - c|| != 0}."""
    return kernels.isosceles_count(E.points, E.p, threads)


def lifted_energy(E: PlaneSet, threads: int | None = None) -> int:
    """Additive energy of the paraboloid lift {(a, ||a||)}."""
    if not E.points:
        return 0
    return kernels.lifted_sum_energy(E.points, E.p, threads)


def paraboloid_quadruples(E: PlaneSet, threads: int | None = None) -> int:
    """#{(a, b, c, d) : a != b, c != d, L(b) - L(a) = L(d) - L(c)}.

    a = b forces L(d) = L(c), i.e. d = c, so exactly |E|^2 solutions of the
    full energy are excluded.
    """
    n = len(E)
    return lifted_energy(E, threads) - n * n if n else 0


def rectangle_count(E: PlaneSet, threads: int | None = None) -> int:
    """Number of ordered non-degenerate rectangles (a, b, c, d) in E^4."""
    n = len(E)
    if n == 0:
        return 0
    if E.m.anisotropic:
        # a rectangle is a pair of diagonals with equal midpoint and length;
        # the 2|E|^2 - |E| collinear solutions are {b, d} = {a, c}
        return lifted_energy(E, threads) - (2 * n * n - n)
    return _rectangle_count_witness(E)


# cube of right-angle flags is built in chunks; beyond this size it is refused
WITNESS_LIMIT = 400


def _right_angle_cube(X: np.ndarray, p: int) -> np.ndarray:
    """W[i, j, k]: (X[i] - X[k]) . (X[j] - X[k]) == 0."""
    n = len(X)
    d = X[:, None, :] - X[None, :, :]  # d[i, k] = X[i] - X[k]
    W = np.empty((n, n, n), dtype=bool)
    step = max(1, (1 << 22) // max(1, n * n))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        dots = d[lo:hi, None, :, 0] * d[None, :, :, 0] + d[lo:hi, None, :, 1] * d[None, :, :, 1]
        W[lo:hi] = dots % p == 0
    return W


def _rectangle_count_witness(E: PlaneSet) -> int:
    """Literal corner-definition count, valid for every odd p.

    (a, b, c, d) is a rectangle iff b and d both see ac at a right angle
    and a and c both see bd at a right angle; collinear quadruples are
    dropped.
    """
    n = len(E)
    if n > WITNESS_LIMIT:
        raise TooLarge(f"witness rectangle count limited to {WITNESS_LIMIT} points, got {n}")
    p = E.p
    X = np.array(E.points, dtype=np.int64).reshape(-1, 2)
    W = _right_angle_cube(X, p)
    total = 0
    for a in range(n):
        for c in range(n):
            mem = np.flatnonzero(W[a, c])
            if len(mem) == 0:
                continue
            ok = W[np.ix_(mem, mem, [a, c])].all(axis=2)
            bi, di = np.nonzero(ok)
            if len(bi) == 0:
                continue
            b = X[mem[bi]] - X[a]
            d = X[mem[di]] - X[a]
            v = X[c] - X[a]
            deg = (b[:, 0] * v[1] - b[:, 1] * v[0]) % p == 0
            deg &= (d[:, 0] * v[1] - d[:, 1] * v[0]) % p == 0
            deg &= (b[:, 0] * d[:, 1] - b[:, 1] * d[:, 0]) % p == 0
            total += int((~deg).sum())
    return total


def bisector_partition(E: PlaneSet) -> BisectorPartition:
    """Classes S_i of pairs sharing a bisector, refined by exact lifted difference."""
    classes: dict[CanonicalLine, LineClass] = {}
    for a in E.points:
        for b in E.points:
            if dist2(a, b, E.m) == 0:
                continue
            cls = classes.setdefault(bisector(a, b, E.m), LineClass())
            cls.size += 1
            cls.sub[lifted_difference(a, b, E.m)] += 1
    return BisectorPartition(classes)


def q_count(E: PlaneSet, threads: int | None = None) -> int:
    """|Q(E)|: ordered quadruples whose two pairs share a bisector line."""
    if len(E) < 2:
        return 0
    return kernels.bisector_energy(E.points, E.p, threads)


def bisector_incidences(E: PlaneSet, part: BisectorPartition | None = None) -> int:
    """#{(a, b, c) : ||a - b|| != 0 and c on the bisector of a and b}."""
    part = part or bisector_partition(E)
    if not part.classes:
        return 0
    p = E.p
    X = np.array(E.points, dtype=np.int64).reshape(-1, 2)
    by_normal: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for line, cls in part.classes.items():
        by_normal.setdefault((line.n1, line.n2), []).append((line.c, cls.size))
    total = 0
    for (n1, n2), rows in by_normal.items():
        vals = (n1 * X[:, 0] + n2 * X[:, 1]) % p
        hist = Counter(vals.tolist())
        total += sum(size * hist.get(c, 0) for c, size in rows)
    return total


@dataclass(frozen=True)
class PlaneCounts:
    n: int
    delta_size: int
    second_moment: int
    t_count: int
    rect_count: int | None
    q_count: int
    para_count: int


def plane_counts(E: PlaneSet, threads: int | None = None) -> PlaneCounts:
    """The main counts with the lift energy computed once."""
    n = len(E)
    hist = distance_histogram(E, threads)
    energy = lifted_energy(E, threads)
    if n and E.m.anisotropic:
        rect = energy - (2 * n * n - n)
    elif n > WITNESS_LIMIT:
        # the literal count is cubic in n; left out rather than refused
        rect = None
    else:
        rect = rectangle_count(E, threads)
    return PlaneCounts(
        n=n,
        delta_size=len(hist),
        second_moment=sum(c * c for c in hist.values()),
        t_count=isosceles_count(E, threads),
        rect_count=rect,
        q_count=q_count(E, threads),
        para_count=energy - n * n if n else 0,
    )
