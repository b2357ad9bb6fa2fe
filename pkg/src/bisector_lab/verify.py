"""Named identity and inequality checks over planar point sets and residue sets.

ASSERT rows compare exact integers or rationals. REPORT rows carry a
floating-point ratio against a bound whose constant is unknown; they always
pass. Natural logs use the convention ln(1) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import distcount, sumprod
from .distcount import PlaneCounts, PlaneSet, plane_counts
from .errors import EmptySet, Mod4Mismatch, TooLarge
from .sumprod import PopularData, ResidueSet

ASSERT = "ASSERT"
REPORT = "REPORT"

# above these sizes the slow independent routes are skipped
PARTITION_LIMIT = 600
WITNESS_LIMIT = distcount.WITNESS_LIMIT


def _ratio(lhs, rhs):
    if isinstance(lhs, float) or isinstance(rhs, float):
        if rhs == 0:
            return 0.0 if lhs == 0 else math.inf
        return lhs / rhs
    if rhs == 0:
        return Fraction(0) if lhs == 0 else None
    return Fraction(lhs) / Fraction(rhs)


_RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: object
    rhs: object
    ratio: object
    mode: str
    passed: bool
    relation: str = "<="
    context: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)
    skipped: bool = False

    @classmethod
    def exact(cls, name: str, lhs, rhs, relation: str = "<=",
              context: dict | None = None, detail: dict | None = None) -> "CheckReport":
        return cls(name, lhs, rhs, _ratio(lhs, rhs), ASSERT, _RELATIONS[relation](lhs, rhs),
                   relation, dict(context or {}), dict(detail or {}))

    @classmethod
    def report(cls, name: str, lhs, rhs, ratio, context: dict | None = None,
               detail: dict | None = None) -> "CheckReport":
        return cls(name, lhs, rhs, ratio, REPORT, True, "~", dict(context or {}), dict(detail or {}))

    @classmethod
    def skip(cls, name: str, mode: str, reason: str, context: dict | None = None) -> "CheckReport":
        return cls(name, None, None, None, mode, True, "", dict(context or {}), {"reason": reason}, True)

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIPPED"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "status": self.status,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "context": self.context,
            "detail": self.detail,
        }


def ln1(n: int) -> float:
    return math.log(n) if n > 1 else 1.0


def _ctx(E: PlaneSet, context: dict | None) -> dict:
    out = {"p": E.p, "n": len(E)}
    out.update(context or {})
    return out


def _need_aniso(E: PlaneSet, name: str) -> None:
    if not E.m.anisotropic:
        raise Mod4Mismatch(f"{name} needs p = 3 mod 4, got p = {E.p}")


def _counts(E: PlaneSet, counts: PlaneCounts | None) -> PlaneCounts:
    return counts if counts is not None else plane_counts(E)


# -- planar ASSERT checks ----------------------------------------------------


def check_bisector_energy(E: PlaneSet, counts: PlaneCounts | None = None, context: dict | None = None) -> CheckReport:
    """Q <= 2 |Delta| (rect + n^2)."""
    _need_aniso(E, "check_bisector_energy")
    c = _counts(E, counts)
    rhs = 2 * c.delta_size * (c.rect_count + c.n * c.n)
    return CheckReport.exact("bisector_energy", c.q_count, rhs, context=_ctx(E, context))


def bisector_partition_checks(E: PlaneSet, counts: PlaneCounts | None = None,
                         context: dict | None = None) -> list[CheckReport]:
    """The pair partition by bisector line against the kernel counts.

    sum |S_i|^2 = Q, sum |S_i,lambda|^2 = paraboloid quadruples, and the
    number of subclasses per line is at most 2 |Delta \\ {0}|.
    """
    _need_aniso(E, "bisector partition checks")
    c = _counts(E, counts)
    ctx = _ctx(E, context)
    part = distcount.bisector_partition(E)
    nonzero = c.delta_size - (1 if c.n else 0)
    return [
        CheckReport.exact("partition.class_square_sum", part.square_sum(), c.q_count, "==", ctx),
        CheckReport.exact("partition.subclass_energy", part.subclass_square_sum(), c.para_count, "==", ctx),
        CheckReport.exact("partition.subclass_count", part.max_subclasses(), 2 * nonzero, "<=", ctx),
    ]


def check_paraboloid_identity(E: PlaneSet, counts: PlaneCounts | None = None,
                              context: dict | None = None) -> CheckReport:
    """para = rect + n^2 - n, with rect from the literal corner definition."""
    _need_aniso(E, "check_paraboloid_identity")
    c = _counts(E, counts)
    rect = distcount._rectangle_count_witness(E) if c.n else 0
    return CheckReport.exact(
        "paraboloid_identity", c.para_count, rect + c.n * c.n - c.n, "==", _ctx(E, context),
        {"rect_witness": rect, "rect_closed_form": c.rect_count},
    )


def check_isosceles_identity(E: PlaneSet, counts: PlaneCounts | None = None,
                             context: dict | None = None) -> CheckReport:
    """T = (bisector incidences) + n^2 - n."""
    _need_aniso(E, "check_isosceles_identity")
    c = _counts(E, counts)
    inc = distcount.bisector_incidences(E)
    return CheckReport.exact("isosceles_identity", c.t_count, inc + c.n * c.n - c.n, "==",
                             _ctx(E, context), {"incidences": inc})


def check_second_moment(E: PlaneSet, counts: PlaneCounts | None = None, context: dict | None = None) -> CheckReport:
    """sum nu^2 <= n (T + n); the bare n T form is reported alongside."""
    _need_aniso(E, "check_second_moment")
    c = _counts(E, counts)
    return CheckReport.exact("second_moment", c.second_moment, c.n * (c.t_count + c.n), "<=", _ctx(E, context),
                             {"uncorrected_rhs": c.n * c.t_count,
                              "uncorrected_holds": c.second_moment <= c.n * c.t_count})


def cs_delta_lower_bound(E: PlaneSet, counts: PlaneCounts | None = None,
                         context: dict | None = None) -> CheckReport:
    """n^4 / sum nu^2 <= |Delta|."""
    if len(E) == 0:
        raise EmptySet("cs_delta_lower_bound needs a nonempty set")
    c = _counts(E, counts)
    return CheckReport.exact("cs_delta", Fraction(c.n**4, c.second_moment), c.delta_size, "<=",
                             _ctx(E, context))


def check_nu_mass(E: PlaneSet, counts: PlaneCounts | None = None, context: dict | None = None) -> CheckReport:
    hist = distcount.distance_histogram(E)
    return CheckReport.exact("nu_mass", sum(hist.values()), len(E) ** 2, "==", _ctx(E, context))


# -- planar REPORT rows ------------------------------------------------------


def report_isosceles_bound(E: PlaneSet, counts: PlaneCounts | None = None, context: dict | None = None) -> CheckReport:
    """T against n^2 ln n + n^(5/3) Q^(4/15)."""
    c = _counts(E, counts)
    n = c.n
    terms = [n * n * ln1(n), n ** (5 / 3) * c.q_count ** (4 / 15)]
    bound = sum(terms)
    ratio = c.t_count / bound if bound else 0.0
    return CheckReport.report("isosceles_bound", c.t_count, bound, ratio, _ctx(E, context),
                              {"terms": terms, "log": "ln, ln(1)=1"})


def report_distance_chain(E: PlaneSet, counts: PlaneCounts | None = None,
                      context: dict | None = None) -> CheckReport:
    """T against the three-term bound, and |Delta| against min(n^(12/19), n^(20/19) / rect^(4/19))."""
    _need_aniso(E, "report_distance_chain")
    c = _counts(E, counts)
    n, X, R = c.n, c.delta_size, c.rect_count
    terms = [n * n * ln1(n), X ** (4 / 15) * n ** (33 / 15), n ** (5 / 3) * X ** (4 / 15) * R ** (4 / 15)]
    bound = sum(terms)
    ratio = c.t_count / bound if bound else 0.0
    delta_bound = n ** (12 / 19)
    if R:
        delta_bound = min(delta_bound, n ** (20 / 19) / R ** (4 / 19))
    delta_ratio = X / delta_bound if delta_bound else 0.0
    return CheckReport.report("distance_chain", c.t_count, bound, ratio, _ctx(E, context),
                              {"terms": terms, "delta": X, "delta_bound": delta_bound,
                               "delta_ratio": delta_ratio, "log": "ln, ln(1)=1"})


def ratio_bisector_energy(c: PlaneCounts) -> float | None:
    if c.rect_count is None:
        return None
    rhs = 2 * c.delta_size * (c.rect_count + c.n * c.n)
    return c.q_count / rhs if rhs else 0.0


# -- suites ------------------------------------------------------------------

PlaneCheck = Callable[..., "CheckReport | list[CheckReport]"]

_EXACT_PLANE: list[tuple[str, PlaneCheck, int | None]] = [
    ("nu_mass", check_nu_mass, None),
    ("cs_delta", cs_delta_lower_bound, None),
    ("second_moment", check_second_moment, None),
    ("bisector_energy", check_bisector_energy, None),
    ("partition", bisector_partition_checks, PARTITION_LIMIT),
    ("isosceles_identity", check_isosceles_identity, PARTITION_LIMIT),
    ("paraboloid_identity", check_paraboloid_identity, WITNESS_LIMIT),
]
_DASH_PLANE: list[tuple[str, PlaneCheck, int | None]] = [
    ("isosceles_bound", report_isosceles_bound, None),
    ("distance_chain", report_distance_chain, None),
]


def _run(name: str, fn: PlaneCheck, limit: int | None, mode: str, E, counts, context) -> list[CheckReport]:
    ctx = _ctx(E, context)
    if limit is not None and len(E) > limit:
        return [CheckReport.skip(name, mode, f"size {len(E)} above {limit}", ctx)]
    try:
        out = fn(E, counts=counts, context=context)
    except Mod4Mismatch as exc:
        return [CheckReport.skip(name, mode, str(exc), ctx)]
    except (EmptySet, TooLarge) as exc:
        return [CheckReport.skip(name, mode, str(exc), ctx)]
    return out if isinstance(out, list) else [out]


def plane_suite(E: PlaneSet, suite: str = "all", context: dict | None = None,
                threads: int | None = None, counts: PlaneCounts | None = None) -> list[CheckReport]:
    """Run the exact and/or dashboard rows; mod-4-gated rows are marked skipped."""
    counts = counts or plane_counts(E, threads)
    rows: list[CheckReport] = []
    if suite in ("exact", "all"):
        for name, fn, limit in _EXACT_PLANE:
            rows += _run(name, fn, limit, ASSERT, E, counts, context)
    if suite in ("dashboards", "all"):
        for name, fn, limit in _DASH_PLANE:
            if len(E) < 2:
                rows.append(CheckReport.skip(name, REPORT, "needs at least 2 points", _ctx(E, context)))
                continue
            rows += _run(name, fn, limit, REPORT, E, counts, context)
    return rows


# -- residue sets ------------------------------------------------------------


def _lg(x) -> float:
    return math.log(x) if x > 0 else -math.inf


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def report_sumprod_suite(A: ResidueSet, context: dict | None = None, suite: str = "all",
                         data: PopularData | None = None) -> list[CheckReport]:
    """Identities of the popularity machinery (ASSERT) and the size bounds (REPORT)."""
    from .exponents import epsilon_balance

    ctx = {"p": A.m.p, "n": len(A)}
    ctx.update(context or {})
    n = len(A)
    if n == 0:
        raise EmptySet("report_sumprod_suite needs a nonempty set")
    p = A.m.p
    data = data or PopularData.of(A)
    D, P, r = data.D, data.P, data.r
    prof = sumprod.mk_profile(A)
    M, K = float(prof.M), float(prof.K)
    rows: list[CheckReport] = []
    exact = suite in ("exact", "all")
    dash = suite in ("dashboards", "all")

    chi_val = sumprod.chi(A, data)
    diff = sumprod.difference_set(A, A)
    hyp_lhs = n * len(diff) * len(D)

    if exact:
        a2 = sumprod.square_set(A)
        rows.append(CheckReport.exact("sumprod.r_mass", sum(r.values()), len(a2) ** 2, "==", ctx))
        below = sum(c for x, c in r.items() if x not in P)
        rows.append(CheckReport.exact("sumprod.popular_mass", Fraction(below), Fraction(n * n, 2), "<", ctx))
        rpd = sumprod.r_p_minus_d(data)
        domain = sorted(set(rpd) | set(D.elems))
        bad = [w for w in domain if rpd.get(w, 0) != len(data.shifted(w))]
        rows.append(CheckReport.exact("sumprod.r_identity", len(bad), 0, "==", ctx,
                                      {"checked": len(domain), "first_mismatch": bad[:1]}))
        rows.append(CheckReport.exact("sumprod.chi_sum", chi_val, sumprod.chi_by_pairs(data), "==", ctx))
        # with 0 in A, A^2 - A^2 sits inside (A - A)^2 - (A - A)^2
        shift = A.elems[0]
        A0 = ResidueSet.from_values((a - shift for a in A.elems), A.m)
        d0 = sumprod.square_set(A0)
        target = sumprod.dist_like_sets(A).diff_sq_minus
        rows.append(CheckReport.exact("sumprod.translate_containment", len(sumprod.difference_set(d0, d0)),
                                      len(target), "<=", ctx))
        profile = sumprod.sorted_w_profile(A, data)
        rvals = [row[1] for row in profile]
        slack = min((sum(1 for v in rvals if v >= rvals[i]) - (i + 1) for i in range(len(rvals))), default=0)
        rows.append(CheckReport.exact("sumprod.shift_rank_order", 0, slack, "<=", ctx))

    if dash:
        e4 = sumprod.e4_energy(A)
        rhs = n**4 * M**3
        rows.append(CheckReport.report("sumprod.e4", e4, rhs, e4 / rhs, ctx))
        rhs = math.sqrt(e4) * math.sqrt(chi_val)
        rows.append(CheckReport.report("sumprod.energy_split", n**4, rhs, n**4 / rhs if rhs else 0.0, ctx))

        worst = (0.0, 0, 0.0, None)
        for w in D.elems:
            Pw = len(data.shifted(w))
            if Pw == 0:
                continue
            bound = M**1.5 * K * Pw**1.5 + M * M * K * Pw
            tw = data.t_w(w)
            if tw / bound > worst[0] or worst[3] is None:
                worst = (tw / bound, tw, bound, w)
        rows.append(CheckReport.report("sumprod.tw_bound", worst[1], worst[2], worst[0], ctx, {"w": worst[3]}))

        worst2 = (0.0, 0, 0.0, None)
        for i, (w, _, pw) in enumerate(sumprod.sorted_w_profile(A, data), start=1):
            bound = M**1.5 * K * K * n / math.sqrt(i)
            if pw / bound > worst2[0] or worst2[3] is None:
                worst2 = (pw / bound, pw, bound, i)
        rows.append(CheckReport.report("sumprod.shift_rank_bound", worst2[1], worst2[2], worst2[0], ctx, {"rank": worst2[3]}))

        terms = [M**3.75 * K**4.25 * n**1.75, M**3.5 * K**3.5 * n**1.5]
        rows.append(CheckReport.report("sumprod.chi_bound", chi_val, sum(terms), chi_val / sum(terms), ctx,
                                       {"terms": terms}))

        # ratios |A|^9 / (M^27 K^17) and |A|^5 / (M^13 K^7); the claim needs one bounded
        r1 = _safe_exp(9 * _lg(n) - 27 * _lg(M) - 17 * _lg(K))
        r2 = _safe_exp(5 * _lg(n) - 13 * _lg(M) - 7 * _lg(K))
        rows.append(CheckReport.report("sumprod.mk_dichotomy", n, None, min(r1, r2), ctx,
                                       {"ratio_first": r1, "ratio_second": r2,
                                        "M": str(prof.M), "K": str(prof.K)}))

        sets = sumprod.dist_like_sets(A, X=sumprod.dist_like_sets(A).diff_sq)
        X = sets.diff_sq
        lhs = len(sets.x_minus_diff_sq)
        bound = min(p, math.sqrt(len(X)) * n)
        rows.append(CheckReport.report("sumprod.shifted_diff_bound", lhs, bound, lhs / bound, ctx,
                                       {"X": "(A-A)^2", "size_X": len(X)}))

        eps, expo = epsilon_balance()
        e = float(eps)
        target = len(sets.diff_sq_minus)
        if len(diff) >= n ** (1 + e):
            case, cb = "large_difference", n ** (1.5 + e / 2)
        elif hyp_lhs >= p * p:
            case, cb = "large_product", p * p / n ** (2 + e)
        else:
            case, cb = "small_product", n ** (1 + (9 - 27 * e) / 17)
        headline = n ** float(expo)
        rows.append(CheckReport.report("sumprod.diff_sq_growth", target, headline, target / headline, ctx,
                                       {"case": case, "case_bound": cb, "case_ratio": target / cb,
                                        "range_holds": n <= p ** (71 / 125)}))

        pairs = sumprod.popular_pairs(A, data)
        rows.append(CheckReport.report("sumprod.popular_pairs", pairs, n * n, pairs / (n * n), ctx,
                                       {"below_quarter": 4 * pairs < n * n}))
        rows.append(CheckReport.report("sumprod.size_condition", hyp_lhs, p * p, hyp_lhs / (p * p), ctx,
                                       {"holds": hyp_lhs <= p * p}))
    return rows


def failures(rows: list[CheckReport]) -> list[CheckReport]:
    return [r for r in rows if r.mode == ASSERT and not r.skipped and not r.passed]


def sort_rows(rows: list[CheckReport]) -> list[CheckReport]:
    return sorted(rows, key=lambda r: (r.name, sorted((k, str(v)) for k, v in r.context.items())))
