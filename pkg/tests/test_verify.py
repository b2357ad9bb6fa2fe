import random
from fractions import Fraction

import pytest

from bisector_lab.distcount import PlaneSet, plane_counts
from bisector_lab.errors import EmptySet, Mod4Mismatch
from bisector_lab.field import make_modulus
from bisector_lab.gen import GenSpec, enumerate_subsets, generate
from bisector_lab.sumprod import ResidueSet
from bisector_lab.verify import (
    ASSERT,
    REPORT,
    CheckReport,
    check_second_moment,
    check_bisector_energy,
    cs_delta_lower_bound,
    failures,
    plane_suite,
    ratio_bisector_energy,
    report_sumprod_suite,
    sort_rows,
)

from conftest import random_plane_set, random_residue_set

EXACT_NAMES = {
    "nu_mass", "cs_delta", "second_moment", "bisector_energy", "partition.class_square_sum", "partition.subclass_energy",
    "partition.subclass_count", "isosceles_identity", "paraboloid_identity",
}


def by_name(rows):
    return {r.name: r for r in rows}


def test_two_points(two_points):
    rows = by_name(plane_suite(two_points))
    assert not failures(rows.values())
    assert set(rows) >= EXACT_NAMES
    assert (rows["second_moment"].lhs, rows["second_moment"].rhs) == (8, 8)
    assert (rows["cs_delta"].lhs, rows["cs_delta"].rhs) == (2, 2)
    assert (rows["bisector_energy"].lhs, rows["bisector_energy"].rhs) == (4, 16)


def test_unit_square(unit_square):
    rows = by_name(plane_suite(unit_square))
    assert not failures(rows.values())
    assert (rows["bisector_energy"].lhs, rows["bisector_energy"].rhs) == (40, 144)
    assert rows["paraboloid_identity"].lhs == 20


def test_second_moment_correction_detail(two_points):
    row = check_second_moment(two_points)
    # the uncorrected form n * T fails on two points
    assert row.detail["uncorrected_rhs"] == 4
    assert row.detail["uncorrected_holds"] is False


def test_exhaustive_f3():
    m = make_modulus(3)
    total = 0
    for E in enumerate_subsets(m):
        rows = plane_suite(E, suite="exact")
        assert not failures(rows), (E.points, [r.to_dict() for r in failures(rows)])
        total += 1
    assert total == 512


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_random_sets_pass(p):
    rng = random.Random(p)
    for _ in range(15):
        E = random_plane_set(rng, p, rng.randint(1, min(60, p * p)))
        rows = plane_suite(E)
        assert not failures(rows)
        assert all(r.status == "PASS" for r in rows if r.mode == REPORT and not r.skipped)


def test_mod4_gated_rows_skip():
    rng = random.Random(5)
    E = random_plane_set(rng, 13, 30)
    rows = by_name(plane_suite(E))
    for name in ("second_moment", "bisector_energy", "partition", "isosceles_identity", "paraboloid_identity", "distance_chain"):
        assert rows[name].status == "SKIPPED"
        assert "mod 4" in rows[name].detail["reason"]
    for name in ("nu_mass", "cs_delta"):
        assert rows[name].status == "PASS"
    with pytest.raises(Mod4Mismatch):
        check_bisector_energy(E)


def test_empty_set_rows():
    E = PlaneSet.from_points([], make_modulus(7))
    rows = by_name(plane_suite(E))
    assert rows["cs_delta"].status == "SKIPPED"
    assert rows["isosceles_bound"].status == "SKIPPED"
    assert not failures(rows.values())
    with pytest.raises(EmptySet):
        cs_delta_lower_bound(E)


def test_size_limits_skip():
    E = generate(GenSpec("random_plane", 31, 700, 1))
    assert len(E) == 700
    rows = by_name(plane_suite(E, suite="exact"))
    assert rows["partition"].status == "SKIPPED"
    assert rows["paraboloid_identity"].status == "SKIPPED"
    assert rows["bisector_energy"].status == "PASS"


def test_check_report_invariants():
    r = CheckReport.exact("x", 3, 4)
    assert (r.mode, r.passed, r.ratio, r.status) == (ASSERT, True, Fraction(3, 4), "PASS")
    assert CheckReport.exact("x", 5, 4).status == "FAIL"
    assert CheckReport.exact("x", 4, 4, "<").status == "FAIL"
    assert CheckReport.exact("x", 0, 0).ratio == 0
    assert CheckReport.exact("x", 1, 0).ratio is None
    rep = CheckReport.report("y", 10.0, 1.0, 10.0)
    assert rep.mode == REPORT and rep.passed
    s = CheckReport.skip("z", ASSERT, "why")
    assert s.status == "SKIPPED" and s.detail == {"reason": "why"}
    assert list(r.to_dict()) == ["name", "mode", "status", "relation", "lhs", "rhs", "ratio", "context", "detail"]


def test_sort_rows_stable():
    rows = [CheckReport.exact("b", 1, 1, context={"seed": 2}),
            CheckReport.exact("a", 1, 1, context={"seed": 9}),
            CheckReport.exact("b", 1, 1, context={"seed": 1})]
    assert [(r.name, r.context["seed"]) for r in sort_rows(rows)] == [("a", 9), ("b", 1), ("b", 2)]


def test_ratio_bisector_energy():
    E = PlaneSet.from_points([(0, 0), (1, 0), (1, 1), (0, 1)], make_modulus(7))
    assert ratio_bisector_energy(plane_counts(E)) == pytest.approx(40 / 144)


def test_sumprod_singleton():
    A = ResidueSet.from_values([3], make_modulus(11))
    rows = by_name(report_sumprod_suite(A))
    assert not failures(rows.values())
    assert rows["sumprod.chi_sum"].lhs == 1


def test_sumprod_zero_one():
    A = ResidueSet.from_values([0, 1], make_modulus(7))
    rows = by_name(report_sumprod_suite(A))
    assert not failures(rows.values())
    assert rows["sumprod.chi_sum"].lhs == 15
    assert rows["sumprod.size_condition"].detail["holds"] is True


def test_sumprod_random():
    rng = random.Random(3)
    for p in (31, 101, 211):
        for _ in range(8):
            A = random_residue_set(rng, p, rng.randint(1, 20))
            assert not failures(report_sumprod_suite(A))


def test_sumprod_empty():
    with pytest.raises(EmptySet):
        report_sumprod_suite(ResidueSet.from_values([], make_modulus(7)))
