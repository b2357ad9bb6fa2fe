import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisector_lab.errors import ParseError, SizeTooLarge, TooLarge
from bisector_lab.field import make_modulus
from bisector_lab.gen import GenSpec, enumerate_residue_subsets, enumerate_subsets, generate


def test_parse_roundtrip():
    spec = GenSpec.parse("circle:7:0:3:r=1,cy=0,cx=0")
    assert spec.params == (("cx", 0), ("cy", 0), ("r", 1))
    assert str(spec) == "circle:7:0:3:cx=0,cy=0,r=1"
    assert GenSpec.parse(str(spec)) == spec
    assert str(GenSpec.parse("random_plane:11:10:42")) == "random_plane:11:10:42"


@pytest.mark.parametrize("bad", ["nope:7:1:0", "random_plane:7:1", "random_plane:x:1:0", "circle:7:0:0:r"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        GenSpec.parse(bad)


def test_circle_and_cartesian():
    E = generate(GenSpec.parse("circle:7:0:0:cx=0,cy=0,r=1"))
    assert len(E) == 8
    assert all((x * x + y * y) % 7 == 1 for x, y in E.points)
    C = generate(GenSpec.parse("cartesian:7:2:0:start=0,step=1"))
    assert sorted(C.points) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_line_subset_on_line():
    E = generate(GenSpec.parse("line_subset:11:6:4:slope=3,intercept=2"))
    assert len(E) == 6
    assert all(y == (3 * x + 2) % 11 for x, y in E.points)


def test_determinism():
    spec = GenSpec.parse("random_plane:11:10:42")
    a, b = generate(spec), generate(spec)
    assert a.points == b.points and len(a) == 10
    assert generate(spec.with_seed(43)).points != a.points


@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 2**64 - 1), st.data())
def test_cardinality(p, seed, data):
    size = data.draw(st.integers(0, p * p))
    assert len(generate(GenSpec("random_plane", p, size, seed))) == size
    rsize = data.draw(st.integers(0, p))
    assert len(generate(GenSpec("random_residue", p, rsize, seed))) == rsize


def test_progression():
    A = generate(GenSpec.parse("arithmetic_progression:11:4:0:start=9,step=5"))
    assert A.elems == tuple(sorted({9, 3, 8, 2}))


def test_size_errors():
    with pytest.raises(SizeTooLarge):
        generate(GenSpec("random_plane", 3, 10, 0))
    with pytest.raises(SizeTooLarge):
        generate(GenSpec("random_residue", 7, 8, 0))
    with pytest.raises(SizeTooLarge):
        generate(GenSpec.parse("circle:7:9:0:r=1"))


def test_enumerate_subsets():
    m3 = make_modulus(3)
    subsets = [E.points for E in enumerate_subsets(m3)]
    assert len(subsets) == 512
    assert len(set(subsets)) == 512
    assert subsets[0] == ()
    assert subsets == sorted(subsets)
    assert len(list(enumerate_subsets(m3, k=2))) == 36
    with pytest.raises(TooLarge):
        next(enumerate_subsets(make_modulus(7)))
    with pytest.raises(TooLarge):
        next(enumerate_subsets(make_modulus(7), k=5))


def test_enumerate_residue_subsets():
    assert len(list(enumerate_residue_subsets(make_modulus(5), 2))) == 10
    sets = [A.elems for A in enumerate_residue_subsets(make_modulus(7), 3)]
    assert sets == list(itertools.combinations(range(7), 3))
    with pytest.raises(TooLarge):
        next(enumerate_residue_subsets(make_modulus(101), 4))
