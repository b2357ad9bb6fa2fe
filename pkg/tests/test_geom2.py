import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisector_lab.errors import IsotropicOrEqualPair
from bisector_lab.field import make_modulus
from bisector_lab.geom2 import (
    CanonicalLine,
    Point2,
    bisector,
    dist2,
    is_corner,
    is_degenerate_quad,
    is_rectangle,
    lift,
    on_line,
)

P = Point2


def test_dist2_examples():
    assert dist2(P(0, 0), P(0, 0), make_modulus(7)) == 0
    assert dist2(P(1, 2), P(3, 5), make_modulus(7)) == 6
    assert dist2(P(0, 0), P(1, 2), make_modulus(5)) == 0


def test_corner_examples(m7):
    assert is_corner(P(0, 0), P(0, 0), P(3, 4), m7)
    assert is_corner(P(0, 0), P(1, 0), P(0, 1), m7)
    assert not is_corner(P(0, 0), P(1, 0), P(1, 1), m7)


def test_rectangle_examples(m7):
    assert is_rectangle(P(0, 0), P(1, 0), P(1, 1), P(0, 1), m7)
    q = P(2, 3)
    assert is_rectangle(q, q, q, q, m7)
    assert not is_rectangle(P(0, 0), P(1, 0), P(0, 1), P(1, 1), m7)


def test_degenerate_examples(m7):
    q = P(2, 3)
    assert is_degenerate_quad(q, q, q, q, m7)
    assert is_degenerate_quad(P(0, 0), P(1, 0), P(2, 0), P(3, 0), m7)
    assert not is_degenerate_quad(P(0, 0), P(1, 0), P(1, 1), P(0, 1), m7)


def test_bisector_examples(m7):
    assert bisector(P(0, 0), P(2, 0), m7) == CanonicalLine(1, 0, 1)
    assert bisector(P(0, 0), P(0, 2), m7) == CanonicalLine(0, 1, 1)
    with pytest.raises(IsotropicOrEqualPair):
        bisector(P(0, 0), P(1, 2), make_modulus(5))
    with pytest.raises(IsotropicOrEqualPair):
        bisector(P(1, 1), P(1, 1), m7)


def test_on_line_and_lift_examples(m7):
    assert on_line(P(1, 3), CanonicalLine(1, 0, 1), m7)
    assert not on_line(P(2, 0), CanonicalLine(1, 0, 1), m7)
    assert tuple(lift(P(0, 0), m7)) == (0, 0, 0)
    assert tuple(lift(P(1, 2), m7)) == (1, 2, 5)
    assert tuple(lift(P(3, 5), m7)) == (3, 5, 6)


points = st.tuples(st.integers(0, 10**4), st.integers(0, 10**4))


@given(st.sampled_from([5, 7, 11, 13, 19, 29]), points, points)
def test_bisector_symmetry(p, a, b):
    m = make_modulus(p)
    a, b = P(a[0] % p, a[1] % p), P(b[0] % p, b[1] % p)
    if dist2(a, b, m) == 0:
        return
    assert bisector(a, b, m) == bisector(b, a, m)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_bisector_characterization_exhaustive_triples(p):
    m = make_modulus(p)
    rng = random.Random(p)
    pts = [P(rng.randrange(p), rng.randrange(p)) for _ in range(12)]
    for a, b in itertools.product(pts, repeat=2):
        if dist2(a, b, m) == 0:
            continue
        line = bisector(a, b, m)
        for x in range(p):
            for y in range(p):
                c = P(x, y)
                assert on_line(c, line, m) == (dist2(c, a, m) == dist2(c, b, m))


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_anisotropic_zero_distance(p):
    m = make_modulus(p)
    for x, y in itertools.product(range(p), repeat=2):
        assert (dist2(P(0, 0), P(x, y), m) == 0) == (x == 0 and y == 0)


def _diagonal_rule(a, b, c, d, m):
    p = m.p
    same_mid = (a[0] + c[0] - b[0] - d[0]) % p == 0 and (a[1] + c[1] - b[1] - d[1]) % p == 0
    return same_mid and dist2(a, c, m) == dist2(b, d, m)


def test_rectangle_diagonal_rule_exhaustive_p3():
    m = make_modulus(3)
    grid = [P(x, y) for x in range(3) for y in range(3)]
    for quad in itertools.product(grid, repeat=4):
        assert is_rectangle(*quad, m) == _diagonal_rule(*quad, m)


@pytest.mark.parametrize("p", [7, 11])
def test_rectangle_diagonal_rule_random(p):
    m = make_modulus(p)
    rng = random.Random(100 + p)
    hits = 0
    for _ in range(20000):
        a, b, c = (P(rng.randrange(p), rng.randrange(p)) for _ in range(3))
        # half the time force equal midpoints so true cases are exercised
        d = P((a[0] + c[0] - b[0]) % p, (a[1] + c[1] - b[1]) % p) if rng.random() < 0.5 else \
            P(rng.randrange(p), rng.randrange(p))
        r = is_rectangle(a, b, c, d, m)
        hits += r
        assert r == _diagonal_rule(a, b, c, d, m)
    assert hits > 0


def test_rectangle_diagonal_rule_fails_when_isotropic():
    # with p = 1 mod 4 the rule is not equivalent to the corner definition
    m = make_modulus(5)
    a = b = c = P(0, 0)
    d = P(1, 2)
    assert is_rectangle(a, b, c, d, m) != _diagonal_rule(a, b, c, d, m)
