from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisector_lab.errors import UnsolvableTerm
from bisector_lab.exponents import (
    ExponentExpr,
    crossover_exponent,
    distance_bound,
    epsilon_balance,
    exponent_solve,
    exponent_table,
    min_exponent,
    resubstitute,
    small_case_range,
    substitute,
)


def test_distance_bound_terms():
    terms = distance_bound().monomials()
    assert terms == [
        {"N": F(3)},
        {"N": F(48, 15), "X": F(4, 15)},
        {"N": F(8, 3), "X": F(4, 15), "R": F(4, 15)},
    ]


def test_solve_distance_bound():
    sols = exponent_solve(distance_bound())
    assert sols == [{"N": F(1)}, {"N": F(12, 19)}, {"N": F(20, 19), "R": F(-4, 19)}]
    # the N^3 term never binds: it forces only X >= N
    assert sols[0]["N"] > sols[1]["N"]


@pytest.mark.parametrize("gamma", [F(0), F(1), F(2), F(99, 41), F(3), F(5, 2)])
def test_min_matches_closed_form(gamma):
    got = min_exponent(exponent_solve(distance_bound()), {"R": {"N": gamma}})
    assert got == min(F(1), F(12, 19), F(20, 19) - F(4, 19) * gamma)


def test_headline_values():
    sols = exponent_solve(distance_bound())
    rect_known = min_exponent(sols, {"R": {"N": F(99, 41)}})
    assert rect_known == F(424, 779)
    assert rect_known - F(1, 2) == F(69, 1558)
    assert min_exponent(sols, {"R": {"N": 2}}) == F(12, 19)
    assert round(float(F(12, 19)), 4) == 0.6316
    conj = min_exponent(exponent_solve(distance_bound(F(2, 3))), {"R": {"N": 2}})
    assert conj == F(3, 4)


def test_epsilon_balance():
    eps, expo = epsilon_balance()
    assert eps == F(1, 71)
    assert expo == F(3, 2) + F(1, 142)
    assert F(1, 2) + eps / 2 == (9 - 27 * eps) / 17
    assert F(3, 2) + eps / 2 == 1 + (9 - 27 * eps) / 17


def test_ranges():
    assert small_case_range(F(1, 71)) == F(71, 125)
    assert crossover_exponent(F(424, 779)) == F(1558, 1489)


def test_resubstitution_identity():
    bound = distance_bound()
    for term, sol in zip(bound.monomials(), exponent_solve(bound)):
        assert resubstitute(term, sol) == {"N": F(4)}


@given(
    st.fractions(min_value=0, max_value=5, max_denominator=30),
    st.fractions(min_value=F(-9, 10), max_value=3, max_denominator=30),
    st.fractions(min_value=-2, max_value=2, max_denominator=30),
)
def test_resubstitution_property(a, b, c):
    term = {"N": a, "X": b, "R": c}
    (sol,) = exponent_solve(ExponentExpr.of(term))
    assert resubstitute(term, sol) == {"N": F(4)}


def test_unsolvable():
    with pytest.raises(UnsolvableTerm):
        exponent_solve(ExponentExpr.of({"N": 1, "X": -1}))
    with pytest.raises(UnsolvableTerm):
        exponent_solve(ExponentExpr.of({"X": F(-3, 2)}))


def test_terms_deduplicated():
    e = ExponentExpr.of({"N": 1}, {"N": F(2, 2)}, {"N": 1, "X": 0})
    assert len(e.terms) == 1


def test_substitute_and_unresolved():
    assert substitute({"N": 1, "R": F(1, 2)}, {"R": {"N": 2}}) == {"N": F(2)}
    with pytest.raises(ValueError):
        min_exponent([{"N": 1, "R": 1}])


def test_table_rows():
    table = dict(exponent_table())
    assert table["delta_exponent_rect_99_41"] == F(424, 779)
    assert table["delta_exponent_rect_99_41_minus_half"] == F(69, 1558)
    assert table["delta_exponent_rect_2"] == F(12, 19)
    assert table["delta_exponent_conjectured"] == F(3, 4)
    assert table["epsilon"] == F(1, 71)
    assert table["diff_sq_exponent"] == F(3, 2) + F(1, 142)
    assert table["diff_sq_range"] == F(71, 125)
