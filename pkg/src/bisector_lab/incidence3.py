"""Point-plane incidences in F_p^3."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import EmptyInput
from .field import PrimeModulus, fp_inv


class Point3(NamedTuple):
    x1: int
    x2: int
    x3: int


class CanonicalPlane(NamedTuple):
    """n1*X1 + n2*X2 + n3*X3 = c, first nonzero normal coordinate scaled to 1."""

    n1: int
    n2: int
    n3: int
    c: int


def canonical_plane(n1: int, n2: int, n3: int, c: int, m: PrimeModulus) -> CanonicalPlane:
    p = m.p
    coeffs = [n1 % p, n2 % p, n3 % p]
    lead = next((v for v in coeffs if v), None)
    if lead is None:
        raise ValueError("a plane needs a nonzero normal vector")
    s = fp_inv(lead, m)
    return CanonicalPlane(*(v * s % p for v in coeffs), c * s % p)


def on_plane(r: Point3, s: CanonicalPlane, p: int) -> bool:
    return (s.n1 * r[0] + s.n2 * r[1] + s.n3 * r[2] - s.c) % p == 0


@dataclass(frozen=True)
class IncidenceConfig:
    m: PrimeModulus
    R: tuple[Point3, ...]
    S: tuple[CanonicalPlane, ...]

    @classmethod
    def build(cls, points: Iterable, planes: Iterable, m: PrimeModulus) -> "IncidenceConfig":
        p = m.p
        R = sorted({Point3(*(int(v) % p for v in r)) for r in points})
        S = sorted({canonical_plane(*s, m) if not isinstance(s, CanonicalPlane) else s for s in planes})
        return cls(m, tuple(R), tuple(S))


# switch from the direct double loop to grouped evaluation above this |R||S|
DIRECT_LIMIT = 10**7


def incidence_count(cfg: IncidenceConfig) -> int:
    """|{(r, s) in R x S : r lies on s}|."""
    p = cfg.m.p
    if not cfg.R or not cfg.S:
        return 0
    R = np.array(cfg.R, dtype=np.int64)
    if len(cfg.R) * len(cfg.S) <= DIRECT_LIMIT:
        total = 0
        for s in cfg.S:
            vals = (s.n1 * R[:, 0] + s.n2 * R[:, 1] + s.n3 * R[:, 2]) % p
            total += int((vals == s.c).sum())
        return total
    # group planes sharing a normal and histogram the point evaluations once
    by_normal: dict[tuple[int, int, int], list[int]] = defaultdict(list)
    for s in cfg.S:
        by_normal[(s.n1, s.n2, s.n3)].append(s.c)
    total = 0
    for (n1, n2, n3), cs in by_normal.items():
        vals = (n1 * R[:, 0] + n2 * R[:, 1] + n3 * R[:, 2]) % p
        uniq, cnt = np.unique(vals, return_counts=True)
        lookup = dict(zip(uniq.tolist(), cnt.tolist()))
        total += sum(lookup.get(c, 0) for c in cs)
    return total


def _line_key(r: Point3, q: Point3, p: int, m: PrimeModulus):
    """Canonical (direction, base point) of the line through r != q."""
    d = [(q[k] - r[k]) % p for k in range(3)]
    lead = next(k for k in range(3) if d[k])
    s = fp_inv(d[lead], m)
    d = tuple(v * s % p for v in d)
    # base point: the point of the line whose lead coordinate is 0
    t = (-r[lead]) % p
    base = tuple((r[k] + t * d[k]) % p for k in range(3))
    return d, base


def collinear_rich_k(cfg: IncidenceConfig) -> int:
    """max over lines of min(#points of R on it, #planes of S containing it), at least 1."""
    p = cfg.m.p
    lines: dict = defaultdict(set)
    R = cfg.R
    for i in range(len(R)):
        for j in range(i + 1, len(R)):
            key = _line_key(R[i], R[j], p, cfg.m)
            lines[key].update((i, j))
    best = 1
    for (d, base), members in lines.items():
        npts = len(members)
        if npts <= best:
            continue
        nplanes = sum(
            1
            for s in cfg.S
            if (s.n1 * d[0] + s.n2 * d[1] + s.n3 * d[2]) % p == 0 and on_plane(base, s, p)
        )
        best = max(best, min(npts, nplanes))
    return best


def incidence_bound_report(cfg: IncidenceConfig, context: dict | None = None):
    """Incidences against |R||S|/p + |R|^(1/2)|S| + k|S| (informational ratio).

    k is one more than the collinear richness so that no line holds k points
    and k planes. When |R| > |S| the roles are swapped by duality.
    """
    from .verify import CheckReport

    p = cfg.m.p
    nR, nS = len(cfg.R), len(cfg.S)
    incidences = incidence_count(cfg)
    swapped = nR > nS
    if swapped:
        nR, nS = nS, nR
    k = (collinear_rich_k(cfg) if len(cfg.R) >= 2 else 1) + 1
    terms = [nR * nS / p, math.sqrt(nR) * nS, k * nS]
    bound = sum(terms)
    ratio = incidences / bound if bound else 0.0
    return CheckReport.report(
        "point_plane_incidences",
        incidences,
        bound,
        ratio,
        context=context or {"p": p, "R": len(cfg.R), "S": len(cfg.S)},
        detail={"k": k, "terms": terms, "swapped": swapped},
    )


def build_e4_config(x_values, u_values, t_values, m: PrimeModulus) -> IncidenceConfig:
    """Points (2x, u', -t + x^2 - u'^2) and planes uX - 2x'Y + Z = x'^2 - u^2 - t'.

    A point and a plane are incident iff (x + u)^2 - t = (x' + u')^2 - t'.
    """
    p = m.p
    xs = sorted({int(v) % p for v in x_values})
    us = sorted({int(v) % p for v in u_values})
    ts = sorted({int(v) % p for v in t_values})
    if not xs or not us or not ts:
        raise EmptyInput("build_e4_config needs nonempty x, u and t sets")
    points = [(2 * x, u, -t + x * x - u * u) for x in xs for u in us for t in ts]
    planes = [(u, -2 * x, 1, x * x - u * u - t) for u in us for x in xs for t in ts]
    return IncidenceConfig.build(points, planes, m)
