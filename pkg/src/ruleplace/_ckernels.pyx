# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Output-identical to ``_pykernels``."""

from array import array

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free, calloc


cdef struct Rng:
    uint64_t s[4]


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef void _seed(Rng* rng, uint64_t seed) nogil:
    cdef uint64_t z
    cdef int i
    for i in range(4):
        seed += 0x9E3779B97F4A7C15ULL
        z = seed
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
        rng.s[i] = z ^ (z >> 31)


cdef inline uint64_t _next(Rng* rng) nogil:
    cdef uint64_t result = _rotl(rng.s[1] * 5, 7) * 9
    cdef uint64_t t = rng.s[1] << 17
    rng.s[2] ^= rng.s[0]
    rng.s[3] ^= rng.s[1]
    rng.s[1] ^= rng.s[2]
    rng.s[0] ^= rng.s[3]
    rng.s[2] ^= t
    rng.s[3] = _rotl(rng.s[3], 45)
    return result


cdef inline uint64_t _below(Rng* rng, uint64_t bound) nogil:
    cdef uint64_t threshold = (0 - bound) % bound
    cdef uint64_t r
    while True:
        r = _next(rng)
        if r >= threshold:
            return r % bound


def sample_groups(seed, Py_ssize_t node_count, Py_ssize_t min_nodes,
                  Py_ssize_t max_nodes, Py_ssize_t count):
    cdef Rng rng
    _seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    cdef unsigned char* mark = <unsigned char*>calloc(node_count, 1)
    cdef int64_t* buf = <int64_t*>malloc(max(max_nodes, 1) * sizeof(int64_t))
    if mark == NULL or buf == NULL:
        free(mark)
        free(buf)
        raise MemoryError()
    offsets = array("q", [0])
    members = array("q")
    cdef Py_ssize_t span = max_nodes - min_nodes + 1
    cdef Py_ssize_t g, k, j, t, i, m, total = 0
    try:
        for g in range(count):
            k = min_nodes + <Py_ssize_t>_below(&rng, span)
            m = 0
            for j in range(node_count - k, node_count):
                t = <Py_ssize_t>_below(&rng, j + 1)
                if mark[t]:
                    t = j
                mark[t] = 1
                buf[m] = t
                m += 1
            _sort(buf, m)
            for i in range(m):
                mark[buf[i]] = 0
                members.append(buf[i])
            total += m
            offsets.append(total)
    finally:
        free(mark)
        free(buf)
    return offsets, members


cdef void _sort(int64_t* a, Py_ssize_t n) nogil:
    # shell sort; group sizes are small
    cdef Py_ssize_t gap = n // 2, i, j
    cdef int64_t v
    while gap > 0:
        for i in range(gap, n):
            v = a[i]
            j = i
            while j >= gap and a[j - gap] > v:
                a[j] = a[j - gap]
                j -= gap
            a[j] = v
        gap //= 2


def permutation(seed, Py_ssize_t n):
    cdef Rng rng
    _seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    perm = list(range(n))
    cdef Py_ssize_t i, j
    for i in range(n - 1, 0, -1):
        j = <Py_ssize_t>_below(&rng, i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def admit(order, offsets, node_switch, capacity, int64_t rule_cost, bint rollback):
    cdef const int64_t[:] off = _as_q(offsets)
    cdef const int64_t[:] ns = _as_q(node_switch)
    cdef const int64_t[:] ordv = _as_q(order)
    res_arr = _as_q(capacity, copy=True)
    cdef int64_t[:] res = res_arr
    cdef Py_ssize_t n = off.shape[0] - 1
    placed = bytearray(n)
    cdef unsigned char[:] pl = placed
    fail_arr = array("q", [-1]) * n
    cdef int64_t[:] fail = fail_arr
    cdef Py_ssize_t idx, g, pos, start, stop, q
    cdef int64_t sw
    with nogil:
        for idx in range(ordv.shape[0]):
            g = ordv[idx]
            start = off[g]
            stop = off[g + 1]
            pos = start
            while pos < stop:
                sw = ns[pos]
                if res[sw] >= rule_cost:
                    res[sw] -= rule_cost
                else:
                    break
                pos += 1
            if pos == stop:
                pl[g] = 1
            else:
                fail[g] = ns[pos]
                if rollback:
                    for q in range(start, pos):
                        res[ns[q]] += rule_cost
    return placed, list(res_arr), list(fail_arr)


def _as_q(seq, copy=False):
    if not copy and isinstance(seq, array) and seq.typecode == "q":
        return seq
    return array("q", seq)
