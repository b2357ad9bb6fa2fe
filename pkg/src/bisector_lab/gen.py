"""Deterministic generators for point sets and residue sets."""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .distcount import PlaneSet
from .errors import ParseError, SizeTooLarge, TooLarge
from .field import PrimeModulus, make_modulus
from .sumprod import ResidueSet

PLANE_FAMILIES = ("random_plane", "cartesian", "circle", "line_subset")
RESIDUE_FAMILIES = ("random_residue", "arithmetic_progression")
FAMILIES = PLANE_FAMILIES + RESIDUE_FAMILIES


@dataclass(frozen=True)
class GenSpec:
    family: str
    p: int
    size: int
    seed: int = 0
    params: tuple[tuple[str, int], ...] = field(default_factory=tuple)

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        """family:p:size:seed[:k=v,...]"""
        parts = text.strip().split(":")
        if len(parts) not in (4, 5):
            raise ParseError(f"GenSpec needs family:p:size:seed[:k=v,...], got {text!r}")
        family = parts[0]
        if family not in FAMILIES:
            raise ParseError(f"unknown family {family!r}")
        try:
            p, size, seed = int(parts[1]), int(parts[2]), int(parts[3])
            params = []
            if len(parts) == 5 and parts[4]:
                for item in parts[4].split(","):
                    k, v = item.split("=")
                    params.append((k.strip(), int(v)))
        except ValueError as exc:
            raise ParseError(f"bad GenSpec {text!r}: {exc}") from None
        return cls(family, p, size, seed, tuple(sorted(params)))

    def __str__(self) -> str:
        tail = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}:{self.p}:{self.size}:{self.seed}" + (f":{tail}" if tail else "")

    def param(self, key: str, default: int | None = None) -> int | None:
        return dict(self.params).get(key, default)

    def with_seed(self, seed: int) -> "GenSpec":
        return GenSpec(self.family, self.p, self.size, seed, self.params)

    @property
    def is_plane(self) -> bool:
        return self.family in PLANE_FAMILIES


def _rng(spec: GenSpec) -> np.random.Generator:
    # counter-based stream keyed by the seed and a digest of (family, p, size)
    tag = hashlib.blake2b(f"{spec.family}:{spec.p}:{spec.size}".encode(), digest_size=16).digest()
    key = np.array([spec.seed & (2**64 - 1), int.from_bytes(tag[:8], "little")], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _sample(rng: np.random.Generator, ground: int, size: int) -> list[int]:
    """size distinct indices in range(ground)."""
    if size * 2 <= ground:
        chosen: dict[int, None] = {}
        while len(chosen) < size:
            for v in rng.integers(0, ground, size=size - len(chosen)).tolist():
                chosen.setdefault(v, None)
                if len(chosen) == size:
                    break
        return list(chosen)
    return rng.permutation(ground)[:size].tolist()


def _pick(rng, items: list, size: int, spec: GenSpec) -> list:
    if size > len(items):
        raise SizeTooLarge(f"{spec.family} has {len(items)} elements, asked for {size}")
    if size == 0 or size == len(items):
        return items
    return [items[i] for i in _sample(rng, len(items), size)]


def generate(spec: GenSpec) -> PlaneSet | ResidueSet:
    m = make_modulus(spec.p)
    p = m.p
    fam = spec.family
    rng = _rng(spec)
    if fam == "random_plane":
        if spec.size > p * p:
            raise SizeTooLarge(f"size {spec.size} exceeds p^2 = {p * p}")
        idx = _sample(rng, p * p, spec.size)
        return PlaneSet.from_points(((i // p, i % p) for i in idx), m)
    if fam == "cartesian":
        A = _residues(spec, m, rng)
        return PlaneSet.from_points(((a, b) for a in A for b in A), m)
    if fam == "circle":
        cx, cy, r = spec.param("cx", 0) % p, spec.param("cy", 0) % p, spec.param("r", 1) % p
        pts = [(x, y) for x in range(p) for y in range(p) if ((x - cx) ** 2 + (y - cy) ** 2 - r) % p == 0]
        return PlaneSet.from_points(_pick(rng, pts, spec.size, spec), m)
    if fam == "line_subset":
        a, b = spec.param("slope", 1) % p, spec.param("intercept", 0) % p
        pts = [(x, (a * x + b) % p) for x in range(p)]
        return PlaneSet.from_points(_pick(rng, pts, spec.size, spec), m)
    return ResidueSet.from_values(_residues(spec, m, rng), m)


def _residues(spec: GenSpec, m: PrimeModulus, rng) -> list[int]:
    p = m.p
    if spec.size > p:
        raise SizeTooLarge(f"size {spec.size} exceeds p = {p}")
    start, step = spec.param("start"), spec.param("step")
    if spec.family == "arithmetic_progression" or start is not None or step is not None:
        start = (start or 0) % p
        step = (1 if step is None else step) % p
        if step == 0 and spec.size > 1:
            raise SizeTooLarge("a progression with step 0 has one element")
        return [(start + i * step) % p for i in range(spec.size)]
    return _sample(rng, p, spec.size)


def enumerate_subsets(m: PrimeModulus, k: int | None = None, limit: int = 4) -> Iterator[PlaneSet]:
    """All subsets of F_p^2 (only p = 3), or all k-subsets with k <= limit, lexicographic."""
    p = m.p
    ground = [(x, y) for x in range(p) for y in range(p)]
    if k is None:
        if p * p > 16:
            raise TooLarge(f"full enumeration of F_{p}^2 has 2^{p * p} subsets")
        yield from (PlaneSet.from_points(c, m) for c in _all_subsets_lex(ground))
        return
    if k > limit:
        raise TooLarge(f"k = {k} exceeds the limit {limit}")
    for combo in itertools.combinations(ground, k):
        yield PlaneSet.from_points(combo, m)


def _all_subsets_lex(ground: list) -> Iterator[tuple]:
    """Subsets as sorted tuples in lexicographic order, empty set first."""
    yield ()

    def rec(prefix: tuple, start: int):
        for i in range(start, len(ground)):
            cur = prefix + (ground[i],)
            yield cur
            yield from rec(cur, i + 1)

    yield from rec((), 0)


RESIDUE_ENUM_LIMIT = 10**6


def enumerate_residue_subsets(m: PrimeModulus, k: int) -> Iterator[ResidueSet]:
    if math.comb(m.p, k) > RESIDUE_ENUM_LIMIT:
        raise TooLarge(f"C({m.p}, {k}) = {math.comb(m.p, k)} exceeds {RESIDUE_ENUM_LIMIT}")
    for combo in itertools.combinations(range(m.p), k):
        yield ResidueSet(m, combo)
