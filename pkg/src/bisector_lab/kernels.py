"""Backend selection for the hot counting loops.

The compiled OpenMP extension is used when it imports; otherwise, or when
``BISECTOR_LAB_PURE_PYTHON`` is set, the numpy fallback runs instead. Both
produce identical integers. Inputs outside the compiled limits are routed
to the fallback automatically.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "numpy"
if os.environ.get("BISECTOR_LAB_PURE_PYTHON"):
    BACKEND = "numpy"

THREADS_ENV = "BISECTOR_LAB_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _impl(backend: str | None):
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    return _pykernels


def _compiled_ok(mod, n: int, p: int) -> bool:
    return mod is _ckernels and n <= _ckernels.MAX_POINTS and p < 2**31


def _arrays(points):
    arr = np.array(points, dtype=np.int64).reshape(-1, 2)
    return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])


def isosceles_count(points, p: int, threads: int | None = None, backend: str | None = None) -> int:
    """sum_c sum_{t != 0} #{a : ||a - c|| = t}^2."""
    xs, ys = _arrays(points)
    mod = _impl(backend)
    if not _compiled_ok(mod, len(xs), p):
        mod = _pykernels
    return mod.isosceles_count(xs, ys, p, threads or default_threads())


def distance_counts(points, p: int, threads: int | None = None, backend: str | None = None):
    """(values, counts) of the ordered-pair distance histogram."""
    xs, ys = _arrays(points)
    mod = _impl(backend)
    if _compiled_ok(mod, len(xs), p) and p <= 1 << 22:
        hist = mod.distance_counts(xs, ys, p, threads or default_threads())
        vals = np.flatnonzero(hist)
        return vals, hist[vals]
    return _pykernels.distance_counts(xs, ys, p)


def lifted_sum_energy(points, p: int, threads: int | None = None, backend: str | None = None) -> int:
    """#{(a, b, c, d) : L(a) + L(c) = L(b) + L(d)} with L(a) = (a, ||a||)."""
    xs, ys = _arrays(points)
    mod = _impl(backend)
    if not (_compiled_ok(mod, len(xs), p) and p <= _ckernels.MAX_RECT_MODULUS):
        mod = _pykernels
    u2, ud, _ = mod.pair_key_energy(0, xs, ys, p, threads or default_threads())
    return 4 * u2 + 4 * ud + len(xs)


def bisector_energy(points, p: int, threads: int | None = None, backend: str | None = None) -> int:
    """sum over bisector lines of (number of ordered pairs on that line)^2."""
    xs, ys = _arrays(points)
    mod = _impl(backend)
    if not _compiled_ok(mod, len(xs), p):
        mod = _pykernels
    u2, _, _ = mod.pair_key_energy(1, xs, ys, p, threads or default_threads())
    return 4 * u2
