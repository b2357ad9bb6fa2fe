"""Exact-rational exponent algebra for self-bounded lower bounds.

A bound is a sum of monomials in the symbols ``N`` (|E| or |A|), ``X``
(the unknown, e.g. |Delta(E)|) and ``R`` (the rectangle count). Solving
``X >= N^4 / sum(terms)`` term by term gives, for each term, the monomial
that X must dominate when that term is the largest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import UnsolvableTerm

Monomial = dict[str, Fraction]


def _mono(m: Mapping[str, object]) -> Monomial:
    return {k: Fraction(v) for k, v in m.items() if Fraction(v) != 0}


@dataclass(frozen=True)
class ExponentExpr:
    terms: tuple[tuple[tuple[str, Fraction], ...], ...]

    @classmethod
    def of(cls, *terms: Mapping[str, object]) -> "ExponentExpr":
        seen = []
        for t in terms:
            key = tuple(sorted(_mono(t).items()))
            if key not in seen:
                seen.append(key)
        return cls(tuple(seen))

    def monomials(self) -> list[Monomial]:
        return [dict(t) for t in self.terms]


def exponent_solve(
    bound: ExponentExpr,
    unknown: str = "X",
    numerator: Mapping[str, object] | None = None,
) -> list[Monomial]:
    """Per term, the monomial M with X >= M forced by X * term >= numerator."""
    num = _mono(numerator if numerator is not None else {"N": 4})
    out = []
    for term in bound.monomials():
        beta = term.get(unknown, Fraction(0))
        # X^(1 + beta) >= num / rest; the unknown's exponent on the right is -beta
        if -beta >= 1:
            raise UnsolvableTerm(f"term {term} has {unknown}-exponent {beta}; cannot isolate {unknown}")
        scale = 1 + beta
        syms = (set(num) | set(term)) - {unknown}
        out.append(_mono({s: (num.get(s, 0) - term.get(s, 0)) / scale for s in syms}))
    return out


def resubstitute(term: Mapping[str, object], solution: Mapping[str, object],
                 unknown: str = "X") -> Monomial:
    """Exponents of X * term after putting X = solution; equals the numerator exactly."""
    term = _mono(term)
    sol = _mono(solution)
    beta = term.get(unknown, Fraction(0))
    syms = (set(term) | set(sol)) - {unknown}
    return _mono({s: sol.get(s, 0) * (1 + beta) + term.get(s, 0) for s in syms})


def substitute(mono: Mapping[str, object], values: Mapping[str, Mapping[str, object]]) -> Monomial:
    """Replace symbols by monomials, e.g. R -> N^(99/41)."""
    out: dict[str, Fraction] = {}
    for sym, e in _mono(mono).items():
        if sym in values:
            for s2, e2 in _mono(values[sym]).items():
                out[s2] = out.get(s2, Fraction(0)) + e * e2
        else:
            out[sym] = out.get(sym, Fraction(0)) + e
    return _mono(out)


def min_exponent(solutions: list[Monomial], values: Mapping[str, Mapping[str, object]] | None = None,
                 base: str = "N") -> Fraction:
    """Smallest base-exponent among the solutions after substitution."""
    best = None
    for sol in solutions:
        s = substitute(sol, values or {})
        extra = set(s) - {base}
        if extra:
            raise ValueError(f"symbols {sorted(extra)} left unsubstituted")
        e = s.get(base, Fraction(0))
        best = e if best is None or e < best else best
    return best


def distance_bound(incidence_exponent=Fraction(11, 15)) -> ExponentExpr:
    """Upper bound for sum nu(t)^2 given a point-line incidence exponent s.

    An incidence bound I(m, n) << (mn)^s turns into
    T(E) << N^2 log N + N^(5s - 2) Q^(1 - s), and with Q << X (R + N^2)
    and sum nu^2 <= N (T + N) the three terms below follow (logs dropped).
    s = 11/15 gives N^3, X^(4/15) N^(48/15) and N^(8/3) X^(4/15) R^(4/15).
    """
    s = Fraction(incidence_exponent)
    b = 1 - s
    a = 5 * s - 2
    return ExponentExpr.of(
        {"N": 3},
        {"N": 1 + a + 2 * b, "X": b},
        {"N": 1 + a, "X": b, "R": b},
    )


def epsilon_balance() -> tuple[Fraction, Fraction]:
    """epsilon with 3/2 + eps/2 = 1 + (9 - 27 eps)/17, and that common exponent."""
    # left: 3/2 + eps/2 ; right: 1 + 9/17 - (27/17) eps
    a0, a1 = Fraction(3, 2), Fraction(1, 2)
    b0, b1 = 1 + Fraction(9, 17), Fraction(-27, 17)
    eps = (b0 - a0) / (a1 - b1)
    return eps, a0 + a1 * eps


def small_case_range(eps: Fraction) -> Fraction:
    """Largest c such that |A| <= p^c gives p^2 / |A|^(2 + eps) >= |A|^(3/2 + eps/2)."""
    return Fraction(2) / (2 + eps + Fraction(3, 2) + eps / 2)


def crossover_exponent(delta_exponent: Fraction) -> Fraction:
    """c with |E|^(3/2) / p = |E|^delta_exponent at |E| = p^c."""
    return 1 / (Fraction(3, 2) - delta_exponent)


def exponent_table() -> list[tuple[str, Fraction]]:
    """Rows of the exponent report, all exact."""
    sols = exponent_solve(distance_bound())
    general = min_exponent(sols[:2])
    rect_known = min_exponent(sols, {"R": {"N": Fraction(99, 41)}})
    square = min_exponent(sols, {"R": {"N": 2}})
    conj = min_exponent(exponent_solve(distance_bound(Fraction(2, 3))), {"R": {"N": 2}})
    eps, growth = epsilon_balance()
    return [
        ("delta_exponent_no_rectangles", general),
        ("delta_exponent_rect_99_41", rect_known),
        ("delta_exponent_rect_99_41_minus_half", rect_known - Fraction(1, 2)),
        ("delta_exponent_rect_2", square),
        ("delta_exponent_conjectured", conj),
        ("crossover_range", crossover_exponent(rect_known)),
        ("epsilon", eps),
        ("diff_sq_exponent", growth),
        ("diff_sq_exponent_minus_three_halves", growth - Fraction(3, 2)),
        ("diff_sq_range", small_case_range(eps)),
    ]
