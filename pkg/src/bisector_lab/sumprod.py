"""Difference sets, representation functions and popularity energies for A in F_p."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ModulusMismatch
from .field import PrimeModulus


@dataclass(frozen=True)
class ResidueSet:
    m: PrimeModulus
    elems: tuple[int, ...]

    @classmethod
    def from_values(cls, values: Iterable[int], m: PrimeModulus) -> "ResidueSet":
        return cls(m, tuple(sorted({int(v) % m.p for v in values})))

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x) -> bool:
        return x in self._members

    @property
    def _members(self) -> frozenset:
        # cached on first use; frozen dataclass so go through object.__setattr__
        try:
            return self.__dict__["_set"]
        except KeyError:
            s = frozenset(self.elems)
            object.__setattr__(self, "_set", s)
            return s


RFunction = Counter


@dataclass(frozen=True)
class MKProfile:
    size_a: int
    M: Fraction
    K: Fraction


def _same_modulus(X: ResidueSet, Y: ResidueSet) -> None:
    if X.m != Y.m:
        raise ModulusMismatch(f"moduli {X.m.p} and {Y.m.p} differ")


def difference_set(X: ResidueSet, Y: ResidueSet) -> ResidueSet:
    _same_modulus(X, Y)
    p = X.m.p
    return ResidueSet.from_values(((x - y) % p for x in X.elems for y in Y.elems), X.m)


def sum_set(X: ResidueSet, Y: ResidueSet) -> ResidueSet:
    _same_modulus(X, Y)
    p = X.m.p
    return ResidueSet.from_values(((x + y) % p for x in X.elems for y in Y.elems), X.m)


def square_set(A: ResidueSet) -> ResidueSet:
    p = A.m.p
    return ResidueSet.from_values((a * a % p for a in A.elems), A.m)


@dataclass(frozen=True)
class DistLikeSets:
    diff_sq: ResidueSet            # (A - A)^2
    diff_sq_minus: ResidueSet      # (A - A)^2 - (A - A)^2
    diff_sq_plus: ResidueSet       # (A - A)^2 + (A - A)^2
    sq_minus: ResidueSet           # A^2 - A^2
    x_minus_diff_sq: ResidueSet | None  # X - (A - A)^2


def dist_like_sets(A: ResidueSet, X: ResidueSet | None = None) -> DistLikeSets:
    dsq = square_set(difference_set(A, A))
    a2 = square_set(A)
    return DistLikeSets(
        diff_sq=dsq,
        diff_sq_minus=difference_set(dsq, dsq),
        diff_sq_plus=sum_set(dsq, dsq),
        sq_minus=difference_set(a2, a2),
        x_minus_diff_sq=difference_set(X, dsq) if X is not None else None,
    )


def r_function(X: ResidueSet, Y: ResidueSet) -> RFunction:
    """d -> #{(x, y) in X x Y : x - y = d}."""
    _same_modulus(X, Y)
    p = X.m.p
    return Counter((x - y) % p for x in X.elems for y in Y.elems)


def mk_profile(A: ResidueSet) -> MKProfile:
    n = len(A)
    a2 = square_set(A)
    return MKProfile(
        n,
        Fraction(len(difference_set(A, A)), n),
        Fraction(len(difference_set(a2, a2)), n),
    )


def e4_energy(A: ResidueSet) -> int:
    """E_4(A^2) = sum_d r_{A^2 - A^2}(d)^4."""
    a2 = square_set(A)
    return sum(c**4 for c in r_function(a2, a2).values())


def level_set(r: RFunction, k, m: PrimeModulus) -> ResidueSet:
    """{x : r(x) >= k} over the support of r, compared exactly."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("level threshold must be positive")
    return ResidueSet.from_values((x for x, c in r.items() if c * k.denominator >= k.numerator), m)


def _d_and_r(A: ResidueSet):
    a2 = square_set(A)
    r = r_function(a2, a2)
    return ResidueSet.from_values(r.keys(), A.m), r


def popular_threshold(A: ResidueSet) -> Fraction:
    """|A| / (2K) = |A|^2 / (2 |A^2 - A^2|)."""
    D, _ = _d_and_r(A)
    return Fraction(len(A) ** 2, 2 * len(D))


def popular_set_P(A: ResidueSet) -> ResidueSet:
    D, r = _d_and_r(A)
    return level_set(r, Fraction(len(A) ** 2, 2 * len(D)), A.m)


@dataclass(frozen=True)
class PopularData:
    """A^2 - A^2, its representation function and the popular set P, computed once."""

    A: ResidueSet
    D: ResidueSet
    r: RFunction
    P: ResidueSet

    @classmethod
    def of(cls, A: ResidueSet) -> "PopularData":
        D, r = _d_and_r(A)
        P = level_set(r, Fraction(len(A) ** 2, 2 * len(D)), A.m)
        return cls(A, D, r, P)

    def _masks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        try:
            return self.__dict__["_np"]
        except KeyError:
            p = self.A.m.p
            inP = np.zeros(p, dtype=bool)
            inP[list(self.P.elems)] = True
            inD = np.zeros(p, dtype=bool)
            inD[list(self.D.elems)] = True
            out = (np.array(self.P.elems, dtype=np.int64), inP, inD)
            object.__setattr__(self, "_np", out)
            return out

    def _shifted_array(self, w: int) -> np.ndarray:
        P, _, inD = self._masks()
        cand = (P - w) % self.A.m.p
        return np.sort(cand[inD[cand]])

    def shifted(self, w: int) -> ResidueSet:
        return ResidueSet(self.A.m, tuple(self._shifted_array(w).tolist()))

    def t_w(self, w: int) -> int:
        Pw = self._shifted_array(w)
        _, inP, _ = self._masks()
        return int(inP[(Pw[:, None] - Pw[None, :]) % self.A.m.p].sum())


def p_shifted(A: ResidueSet, w: int) -> ResidueSet:
    """P_w = (A^2 - A^2) intersected with (P - w)."""
    return PopularData.of(A).shifted(w % A.m.p)


def t_w(A: ResidueSet, w: int) -> int:
    """#{(u, v) in P_w x P_w : u - v in P}."""
    return PopularData.of(A).t_w(w % A.m.p)


def chi(A: ResidueSet, data: PopularData | None = None) -> int:
    """sum over w in A^2 - A^2 of T_w."""
    data = data or PopularData.of(A)
    return sum(data.t_w(w) for w in data.D.elems)


def chi_by_pairs(data: PopularData) -> int:
    """chi summed over (x, y) in P^2 with x - y in P, counting w in D with x - w, y - w in D."""
    P, inP, inD = data._masks()
    if len(P) == 0:
        return 0
    p = data.A.m.p
    Dw = np.array(data.D.elems, dtype=np.int64)
    M = inD[(P[:, None] - Dw[None, :]) % p].astype(np.int64)
    common = M @ M.T
    return int(common[inP[(P[:, None] - P[None, :]) % p]].sum())


def r_p_minus_d(data: PopularData) -> RFunction:
    """r_{P - (A^2 - A^2)}."""
    return r_function(data.P, data.D)


def w_level_set(A: ResidueSet, t, restrict: bool = True, data: PopularData | None = None) -> ResidueSet:
    """W_t: the w with r_{P - (A^2 - A^2)}(w) >= t, by default only w in A^2 - A^2."""
    data = data or PopularData.of(A)
    r = r_p_minus_d(data)
    W = level_set(r, t, A.m)
    if restrict:
        W = ResidueSet.from_values((w for w in W.elems if w in data.D), A.m)
    return W


def sorted_w_profile(A: ResidueSet, data: PopularData | None = None) -> list[tuple[int, int, int]]:
    """Rows (w, r_{P - (A^2 - A^2)}(w), |P_w|) for w in A^2 - A^2.

    Sorted by r descending with ties broken by ascending w, so |P_{w_n}|
    is non-increasing in n.
    """
    data = data or PopularData.of(A)
    r = r_p_minus_d(data)
    rows = [(w, r.get(w, 0), len(data.shifted(w))) for w in data.D.elems]
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows


def popular_pairs(A: ResidueSet, data: PopularData | None = None) -> int:
    """#{(a1, a2) in A x A : a1^2 - a2^2 in P}."""
    data = data or PopularData.of(A)
    p = A.m.p
    return sum(1 for a in A.elems for b in A.elems if (a * a - b * b) % p in data.P)
