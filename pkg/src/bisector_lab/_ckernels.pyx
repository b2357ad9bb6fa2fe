# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled counting kernels (OpenMP).

Every kernel takes canonical int64 coordinate arrays and returns exact
integer aggregates. Results do not depend on the thread count: all
aggregation is commutative integer addition, and keys are grouped in
per-bucket hash tables whose totals do not depend on insertion order.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange, parallel, threadid
from libc.stdint cimport int64_t, uint64_t, int32_t, uint32_t
from libc.stdlib cimport malloc, realloc, free, qsort
from libc.string cimport memset, memcpy

cnp.import_array()

# Direct-address count tables are used up to this modulus.
cdef int64_t TABLE_LIMIT = 1 << 22
# Keys buffered per enumeration round (8 bytes each, held twice).
DEFAULT_ROUND_CAP = 1 << 26
# n^4 must fit in a signed 64-bit accumulator.
MAX_POINTS = 55000
# rectangle keys pack three residues into one word
MAX_RECT_MODULUS = 2097143


cdef inline int64_t _inv(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline int64_t _mulmod(int64_t a, int64_t b, int64_t p, double pinv) noexcept nogil:
    # a, b in [0, p); exact through the double quotient estimate when p < 2**26
    cdef int64_t x = a * b
    cdef int64_t r
    if pinv == 0.0:
        return x % p
    r = x - <int64_t>(<double>x * pinv) * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


cdef inline uint64_t _mix(uint64_t k) noexcept nogil:
    k ^= k >> 31
    k *= <uint64_t>0x9E3779B97F4A7C15
    k ^= k >> 29
    return k


cdef int _cmp_i64(const void* a, const void* b) noexcept nogil:
    cdef int64_t x = (<int64_t*>a)[0]
    cdef int64_t y = (<int64_t*>b)[0]
    return (x > y) - (x < y)


def _check_inputs(cnp.int64_t[::1] xs, cnp.int64_t[::1] ys, int64_t p):
    if xs.shape[0] != ys.shape[0]:
        raise ValueError("coordinate arrays differ in length")
    if xs.shape[0] > MAX_POINTS:
        raise OverflowError(f"compiled kernels accept at most {MAX_POINTS} points")
    if p < 3 or p >= (1 << 31):
        raise OverflowError("compiled kernels need 3 <= p < 2**31")


def isosceles_count(cnp.int64_t[::1] xs, cnp.int64_t[::1] ys, int64_t p, int threads=1):
    """Sum over centres c of sum_{t != 0} m_c(t)^2."""
    _check_inputs(xs, ys, p)
    cdef Py_ssize_t n = xs.shape[0]
    if n == 0:
        return 0
    if threads < 1:
        threads = 1
    cdef int use_table = p <= TABLE_LIMIT
    cdef Py_ssize_t width = p if use_table else 1
    cdef cnp.int32_t[:, ::1] tables = np.zeros((threads, width), dtype=np.int32)
    cdef cnp.int64_t[:, ::1] dbuf = np.zeros((threads, n), dtype=np.int64)
    cdef Py_ssize_t c, j, tid, start
    cdef int64_t dx, dy, d, local, run
    cdef int64_t total = 0
    with nogil, parallel(num_threads=threads):
        tid = threadid()
        for c in prange(n, schedule="dynamic", chunksize=16):
            local = 0
            for j in range(n):
                dx = xs[j] - xs[c]
                dy = ys[j] - ys[c]
                dbuf[tid, j] = (dx * dx + dy * dy) % p
            if use_table:
                for j in range(n):
                    d = dbuf[tid, j]
                    if d != 0:
                        local = local + 2 * tables[tid, d] + 1
                        tables[tid, d] += 1
                for j in range(n):
                    tables[tid, dbuf[tid, j]] = 0
            else:
                qsort(&dbuf[tid, 0], n, sizeof(int64_t), _cmp_i64)
                start = 0
                for j in range(1, n + 1):
                    if j == n or dbuf[tid, j] != dbuf[tid, start]:
                        if dbuf[tid, start] != 0:
                            run = j - start
                            local = local + run * run
                        start = j
            total += local
    return int(total)


def distance_counts(cnp.int64_t[::1] xs, cnp.int64_t[::1] ys, int64_t p, int threads=1):
    """Histogram of ||a-b|| over ordered pairs, as a length-p int64 array."""
    _check_inputs(xs, ys, p)
    if p > TABLE_LIMIT:
        raise OverflowError("distance_counts needs p <= TABLE_LIMIT")
    cdef Py_ssize_t n = xs.shape[0]
    if threads < 1:
        threads = 1
    cdef cnp.int64_t[:, ::1] hist = np.zeros((threads, p), dtype=np.int64)
    cdef Py_ssize_t i, j, tid
    cdef int64_t dx, dy
    with nogil, parallel(num_threads=threads):
        tid = threadid()
        for i in prange(n, schedule="dynamic", chunksize=16):
            for j in range(n):
                dx = xs[j] - xs[i]
                dy = ys[j] - ys[i]
                hist[tid, (dx * dx + dy * dy) % p] += 1
    return np.asarray(hist).sum(axis=0)


# no valid key reaches this value (keys stay below p^3 < 2^63)
cdef uint64_t EMPTY = 0xFFFFFFFFFFFFFFFF


cdef inline uint64_t _pair_key(int kind, Py_ssize_t i, Py_ssize_t j, const int64_t* xs,
                               const int64_t* ys, const int64_t* nrm, int64_t p, double pinv,
                               int check_iso, const int64_t* invtab) noexcept nogil:
    # returned by value so the caller's variable stays thread-private in prange
    cdef int64_t a, b, c, iv
    if kind == 0:
        # lifted sum (a + c, ||a|| + ||c||)
        a = xs[i] + xs[j]
        if a >= p:
            a -= p
        b = ys[i] + ys[j]
        if b >= p:
            b -= p
        c = nrm[i] + nrm[j]
        if c >= p:
            c -= p
        return <uint64_t>((a * p + b) * p + c)
    # bisector line of (b - a, ||b|| - ||a||), canonical up to scaling
    a = xs[j] - xs[i]
    if a < 0:
        a += p
    b = ys[j] - ys[i]
    if b < 0:
        b += p
    if check_iso and (_mulmod(a, a, p, pinv) + _mulmod(b, b, p, pinv)) % p == 0:
        return EMPTY
    c = nrm[j] - nrm[i]
    if c < 0:
        c += p
    if a != 0:
        iv = invtab[a] if invtab != NULL else _inv(a, p)
        return <uint64_t>(_mulmod(b, iv, p, pinv) * p + _mulmod(c, iv, p, pinv))
    iv = invtab[b] if invtab != NULL else _inv(b, p)
    return <uint64_t>(p * p + _mulmod(c, iv, p, pinv))


cdef inline void _diag_key(Py_ssize_t i, const int64_t* xs, const int64_t* ys,
                           const int64_t* nrm, int64_t p, uint64_t* out) noexcept nogil:
    cdef int64_t a = (2 * xs[i]) % p
    cdef int64_t b = (2 * ys[i]) % p
    cdef int64_t c = (2 * nrm[i]) % p
    out[0] = <uint64_t>((a * p + b) * p + c)


cdef inline int64_t _round_of(uint64_t m, int64_t rounds) noexcept nogil:
    return <int64_t>(((m >> 24) & (<uint64_t>0xFFFFFFFFFF)) % <uint64_t>rounds)


cdef void _group_bucket(const uint64_t* keys, Py_ssize_t nk, const uint64_t* dkeys,
                        Py_ssize_t nd, uint64_t* tkeys, uint32_t* tcnt, uint32_t* tdiag,
                        Py_ssize_t tsize, uint64_t* out_u2, uint64_t* out_ud) noexcept nogil:
    """Count multiplicities of one bucket with an open-addressing table."""
    cdef Py_ssize_t mask = tsize - 1, i, h
    cdef uint64_t k, u2 = 0, ud = 0
    for i in range(tsize):
        tkeys[i] = EMPTY
    for i in range(nk):
        k = keys[i]
        h = <Py_ssize_t>(_mix(k) & <uint64_t>mask)
        while tkeys[h] != EMPTY and tkeys[h] != k:
            h = (h + 1) & mask
        if tkeys[h] == EMPTY:
            tkeys[h] = k
            tcnt[h] = 1
            tdiag[h] = 0
        else:
            tcnt[h] += 1
    for i in range(nd):
        k = dkeys[i]
        h = <Py_ssize_t>(_mix(k) & <uint64_t>mask)
        while tkeys[h] != EMPTY and tkeys[h] != k:
            h = (h + 1) & mask
        if tkeys[h] == k:
            ud += tcnt[h]
    for i in range(tsize):
        if tkeys[i] != EMPTY:
            u2 += <uint64_t>tcnt[i] * tcnt[i]
    out_u2[0] = u2
    out_ud[0] = ud


def pair_key_energy(int kind, cnp.int64_t[::1] xs, cnp.int64_t[::1] ys, int64_t p,
                    int threads=1, Py_ssize_t round_cap=DEFAULT_ROUND_CAP):
    """Group unordered pairs i < j by key and return (sum u^2, sum u*d, pairs).

    kind 0 keys a pair by its lifted sum; d marks the diagonal key (2a, 2||a||)
    of each point and sum u*d totals the off-diagonal multiplicity of those
    keys. kind 1 keys a pair by its bisector line and skips pairs with
    ||a-b|| = 0; the diagonal term is then 0. ``pairs`` is the number of
    keyed unordered pairs.

    Pairs are enumerated once per round; a round keeps the keys whose hash
    falls in it, scatters them into cache-sized buckets by the top hash bits
    and counts each bucket in its own table.
    """
    _check_inputs(xs, ys, p)
    if kind not in (0, 1):
        raise ValueError("kind must be 0 (lifted sum) or 1 (bisector line)")
    if kind == 0 and p > MAX_RECT_MODULUS:
        raise OverflowError("lifted-sum keys need p < 2**21")
    if round_cap < 1:
        raise ValueError("round_cap must be positive")
    cdef Py_ssize_t n = xs.shape[0]
    if threads < 1:
        threads = 1
    cdef cnp.int64_t[::1] nrm = (np.asarray(xs) * np.asarray(xs) + np.asarray(ys) * np.asarray(ys)) % p
    cdef cnp.int64_t[::1] invtab_arr
    cdef int64_t* invtab = NULL
    if kind == 1 and p <= TABLE_LIMIT:
        invtab_arr = _inverse_table(p)
        invtab = <int64_t*>&invtab_arr[0]
    # distinct points can be isotropic only when p = 1 (mod 4)
    cdef int check_iso = (p % 4) == 1
    cdef double pinv = 1.0 / p if p < (1 << 26) else 0.0
    cdef int64_t npairs = <int64_t>n * (n - 1) // 2
    cdef int64_t rounds = max(1, (npairs + round_cap - 1) // round_cap)
    cdef int64_t* px = NULL
    cdef int64_t* py = NULL
    cdef int64_t* pn = NULL
    if n > 0:
        px = <int64_t*>&xs[0]
        py = <int64_t*>&ys[0]
        pn = <int64_t*>&nrm[0]

    # diagonal keys, sorted by bucket inside each round below
    cdef cnp.uint64_t[::1] dk = np.zeros(max(n, 1), dtype=np.uint64)
    cdef cnp.uint64_t[::1] dmix = np.zeros(max(n, 1), dtype=np.uint64)
    cdef Py_ssize_t nd = n if kind == 0 else 0
    cdef Py_ssize_t i, j, t, tid, b
    cdef uint64_t key
    for i in range(nd):
        _diag_key(i, px, py, pn, p, <uint64_t*>&dk[i])
        dmix[i] = _mix(dk[i])

    cdef uint64_t** bufs = <uint64_t**>malloc(threads * sizeof(uint64_t*))
    cdef Py_ssize_t* lens = <Py_ssize_t*>malloc(threads * sizeof(Py_ssize_t))
    cdef Py_ssize_t* caps = <Py_ssize_t*>malloc(threads * sizeof(Py_ssize_t))
    cdef int* oom = <int*>malloc(threads * sizeof(int))
    for t in range(threads):
        caps[t] = max(1024, <Py_ssize_t>(1.05 * npairs / rounds / threads) + 1024)
        bufs[t] = <uint64_t*>malloc(caps[t] * sizeof(uint64_t))
        lens[t] = 0
        oom[t] = 0
        if bufs[t] == NULL:
            oom[t] = 1

    cdef uint64_t* scat = NULL
    cdef uint64_t* dscat = NULL
    cdef Py_ssize_t* offs = NULL
    cdef Py_ssize_t* doffs = NULL
    cdef uint64_t* tkeys = NULL
    cdef uint32_t* tcnt = NULL
    cdef uint32_t* tdiag = NULL
    cdef Py_ssize_t nkeys, nbuckets, tsize, maxb, bsz, ndr
    cdef int bbits, shift
    cdef int64_t r
    cdef uint64_t m
    cdef uint64_t* pu2
    cdef uint64_t* pud
    cdef Py_ssize_t lo, dlo
    cdef uint64_t sum_u2 = 0, sum_ud = 0
    cdef int64_t keyed = 0
    cdef uint64_t* grown
    try:
        for t in range(threads):
            if oom[t]:
                raise MemoryError("cannot allocate key buffers")
        for r in range(rounds):
            for t in range(threads):
                lens[t] = 0
            with nogil, parallel(num_threads=threads):
                tid = threadid()
                for i in prange(n, schedule="dynamic", chunksize=8):
                    for j in range(i + 1, n):
                        key = _pair_key(kind, i, j, px, py, pn, p, pinv, check_iso, invtab)
                        if key == EMPTY:
                            continue
                        if rounds > 1 and _round_of(_mix(key), rounds) != r:
                            continue
                        if lens[tid] == caps[tid]:
                            grown = <uint64_t*>realloc(bufs[tid], 2 * caps[tid] * sizeof(uint64_t))
                            if grown == NULL:
                                oom[tid] = 1
                                continue
                            bufs[tid] = grown
                            caps[tid] = 2 * caps[tid]
                        bufs[tid][lens[tid]] = key
                        lens[tid] += 1
            for t in range(threads):
                if oom[t]:
                    raise MemoryError("key buffer growth failed")
            nkeys = 0
            for t in range(threads):
                nkeys += lens[t]
            keyed += nkeys
            if nkeys == 0:
                continue

            bbits = 0
            while bbits < 16 and (nkeys >> bbits) > 8192:
                bbits += 1
            nbuckets = 1 << bbits
            shift = 64 - bbits
            offs = <Py_ssize_t*>malloc((nbuckets + 1) * sizeof(Py_ssize_t))
            doffs = <Py_ssize_t*>malloc((nbuckets + 1) * sizeof(Py_ssize_t))
            scat = <uint64_t*>malloc(nkeys * sizeof(uint64_t))
            dscat = <uint64_t*>malloc((nd + 1) * sizeof(uint64_t))
            if offs == NULL or doffs == NULL or scat == NULL or dscat == NULL:
                raise MemoryError("cannot allocate bucket buffers")
            with nogil:
                # counting-sort scatter by top hash bits
                memset(offs, 0, (nbuckets + 1) * sizeof(Py_ssize_t))
                for t in range(threads):
                    for i in range(lens[t]):
                        m = _mix(bufs[t][i])
                        offs[(m >> shift) + 1 if bbits > 0 else 1] += 1
                for b in range(nbuckets):
                    offs[b + 1] += offs[b]
                for t in range(threads):
                    for i in range(lens[t]):
                        key = bufs[t][i]
                        b = <Py_ssize_t>(_mix(key) >> shift) if bbits > 0 else 0
                        scat[offs[b]] = key
                        offs[b] += 1
                # offs[b] now marks the end of bucket b
                memset(doffs, 0, (nbuckets + 1) * sizeof(Py_ssize_t))
                ndr = 0
                for i in range(nd):
                    if rounds > 1 and _round_of(dmix[i], rounds) != r:
                        continue
                    doffs[((dmix[i] >> shift) if bbits > 0 else 0) + 1] += 1
                    ndr += 1
                for b in range(nbuckets):
                    doffs[b + 1] += doffs[b]
                for i in range(nd):
                    if rounds > 1 and _round_of(dmix[i], rounds) != r:
                        continue
                    b = <Py_ssize_t>(dmix[i] >> shift) if bbits > 0 else 0
                    dscat[doffs[b]] = dk[i]
                    doffs[b] += 1
            maxb = offs[0]
            for b in range(1, nbuckets):
                if offs[b] - offs[b - 1] > maxb:
                    maxb = offs[b] - offs[b - 1]
            tsize = 16
            while tsize < 2 * (maxb + 1):
                tsize <<= 1
            tkeys = <uint64_t*>malloc(threads * tsize * sizeof(uint64_t))
            tcnt = <uint32_t*>malloc(threads * tsize * sizeof(uint32_t))
            tdiag = <uint32_t*>malloc(threads * tsize * sizeof(uint32_t))
            if tkeys == NULL or tcnt == NULL or tdiag == NULL:
                raise MemoryError("cannot allocate bucket tables")
            u2s = np.zeros(nbuckets, dtype=np.uint64)
            uds = np.zeros(nbuckets, dtype=np.uint64)
            pu2 = <uint64_t*>cnp.PyArray_DATA(u2s)
            pud = <uint64_t*>cnp.PyArray_DATA(uds)
            with nogil, parallel(num_threads=threads):
                tid = threadid()
                for b in prange(nbuckets, schedule="dynamic", chunksize=4):
                    lo = offs[b - 1] if b > 0 else 0
                    dlo = doffs[b - 1] if b > 0 else 0
                    bsz = 16
                    while bsz < 2 * (offs[b] - lo + 1):
                        bsz = bsz * 2
                    _group_bucket(scat + lo, offs[b] - lo, dscat + dlo, doffs[b] - dlo,
                                  tkeys + tid * tsize, tcnt + tid * tsize,
                                  tdiag + tid * tsize, bsz, pu2 + b, pud + b)
            for b in range(nbuckets):
                sum_u2 += pu2[b]
                sum_ud += pud[b]
            free(tkeys)
            free(tcnt)
            free(tdiag)
            free(offs)
            free(doffs)
            free(scat)
            free(dscat)
            tkeys = NULL
            tcnt = NULL
            tdiag = NULL
            offs = NULL
            doffs = NULL
            scat = NULL
            dscat = NULL
    finally:
        for t in range(threads):
            free(bufs[t])
        free(bufs)
        free(lens)
        free(caps)
        free(oom)
        free(tkeys)
        free(tcnt)
        free(tdiag)
        free(offs)
        free(doffs)
        free(scat)
        free(dscat)
    return int(sum_u2), int(sum_ud), int(keyed)


def _inverse_table(int64_t p):
    """Inverses of 0..p-1 by the linear recurrence inv[i] = -(p // i) * inv[p % i]."""
    cdef cnp.int64_t[::1] inv = np.zeros(p, dtype=np.int64)
    cdef int64_t i
    inv[1] = 1
    with nogil:
        for i in range(2, p):
            inv[i] = (p - (p // i) * inv[p % i] % p) % p
    return inv
