"""Points, distances, corners, rectangles and bisector lines in F_p^2."""

from __future__ import annotations

from typing import NamedTuple

from .errors import IsotropicOrEqualPair
from .field import PrimeModulus, fp_inv


class Point2(NamedTuple):
    x1: int
    x2: int


class CanonicalLine(NamedTuple):
    """The line n1*X1 + n2*X2 = c with the first nonzero normal coordinate equal to 1."""

    n1: int
    n2: int
    c: int


class LiftedPoint(NamedTuple):
    x1: int
    x2: int
    x3: int


def point(x1: int, x2: int, m: PrimeModulus) -> Point2:
    return Point2(x1 % m.p, x2 % m.p)


def dist2(x: Point2, y: Point2, m: PrimeModulus) -> int:
    d1 = x[0] - y[0]
    d2 = x[1] - y[1]
    return (d1 * d1 + d2 * d2) % m.p


def norm(a: Point2, m: PrimeModulus) -> int:
    return (a[0] * a[0] + a[1] * a[1]) % m.p


def is_corner(a: Point2, b: Point2, c: Point2, m: PrimeModulus) -> bool:
    """Right angle at a: (b - a) . (c - a) = 0."""
    return ((b[0] - a[0]) * (c[0] - a[0]) + (b[1] - a[1]) * (c[1] - a[1])) % m.p == 0


def is_rectangle(a: Point2, b: Point2, c: Point2, d: Point2, m: PrimeModulus) -> bool:
    return (
        is_corner(a, b, d, m)
        and is_corner(b, a, c, m)
        and is_corner(c, b, d, m)
        and is_corner(d, a, c, m)
    )


def _cross(u: tuple[int, int], v: tuple[int, int], p: int) -> int:
    return (u[0] * v[1] - u[1] * v[0]) % p


def collinear(points, m: PrimeModulus) -> bool:
    """True when all the given points lie on one affine line."""
    pts = list(dict.fromkeys(tuple(q) for q in points))
    if len(pts) <= 2:
        return True
    base = pts[0]
    u = (pts[1][0] - base[0], pts[1][1] - base[1])
    return all(_cross(u, (q[0] - base[0], q[1] - base[1]), m.p) == 0 for q in pts[2:])


def is_degenerate_quad(a: Point2, b: Point2, c: Point2, d: Point2, m: PrimeModulus) -> bool:
    return collinear((a, b, c, d), m)


def canonical_line(n1: int, n2: int, c: int, m: PrimeModulus) -> CanonicalLine:
    p = m.p
    n1, n2, c = n1 % p, n2 % p, c % p
    if n1:
        s = fp_inv(n1, m)
    elif n2:
        s = fp_inv(n2, m)
    else:
        raise ValueError("a line needs a nonzero normal vector")
    return CanonicalLine(n1 * s % p, n2 * s % p, c * s % p)


def bisector(a: Point2, b: Point2, m: PrimeModulus) -> CanonicalLine:
    """The line x . 2(b - a) = ||b|| - ||a|| of points equidistant from a and b."""
    if dist2(a, b, m) == 0:
        raise IsotropicOrEqualPair(f"||a - b|| = 0 for a={tuple(a)}, b={tuple(b)}")
    return canonical_line(2 * (b[0] - a[0]), 2 * (b[1] - a[1]), norm(b, m) - norm(a, m), m)


def on_line(c: Point2, line: CanonicalLine, m: PrimeModulus) -> bool:
    return (line.n1 * c[0] + line.n2 * c[1] - line.c) % m.p == 0


def lift(a: Point2, m: PrimeModulus) -> LiftedPoint:
    return LiftedPoint(a[0] % m.p, a[1] % m.p, norm(a, m))


def lifted_difference(a: Point2, b: Point2, m: PrimeModulus) -> tuple[int, int, int]:
    """The exact vector (2(b - a), ||b|| - ||a||) that labels the pair (a, b)."""
    p = m.p
    return (2 * (b[0] - a[0]) % p, 2 * (b[1] - a[1]) % p, (norm(b, m) - norm(a, m)) % p)
