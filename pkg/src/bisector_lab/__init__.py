"""Exact counting of distance, bisector and rectangle statistics over F_p.

The hot loops live in a compiled extension; a numpy implementation with the
same results is used when the extension is missing or when
``BISECTOR_LAB_PURE_PYTHON=1`` is set.
"""

from .distcount import (
    PlaneCounts,
    PlaneSet,
    bisector_incidences,
    bisector_partition,
    distance_histogram,
    distance_set,
    isosceles_count,
    lifted_energy,
    paraboloid_quadruples,
    plane_counts,
    q_count,
    rectangle_count,
    second_moment,
)
from .field import PrimeModulus, make_modulus
from .gen import GenSpec, enumerate_residue_subsets, enumerate_subsets, generate
from .kernels import BACKEND
from .sumprod import ResidueSet
from .verify import CheckReport

__all__ = [
    "BACKEND",
    "CheckReport",
    "GenSpec",
    "PlaneCounts",
    "PlaneSet",
    "PrimeModulus",
    "ResidueSet",
    "bisector_incidences",
    "bisector_partition",
    "distance_histogram",
    "distance_set",
    "enumerate_residue_subsets",
    "enumerate_subsets",
    "generate",
    "isosceles_count",
    "lifted_energy",
    "make_modulus",
    "paraboloid_quadruples",
    "plane_counts",
    "q_count",
    "rectangle_count",
    "second_moment",
]
