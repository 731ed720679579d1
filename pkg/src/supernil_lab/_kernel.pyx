# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled closure kernel.

Same contract and enumeration order as ``_kernel_py.run_closure``.  Tuples
are packed as rows of bytes; membership uses a dense bitmap when
``n**width`` is small and a hash set of packed integer keys otherwise.
The main loop runs without the GIL.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint64_t, int32_t, int64_t
from libc.stdlib cimport malloc, calloc, realloc, free
from libc.string cimport memcpy
from libcpp.unordered_set cimport unordered_set

from .errors import BudgetExceeded

cnp.import_array()

cdef enum:
    DENSE_LIMIT = 1 << 28

cdef enum:
    ADD_DUP = 0
    ADD_NEW = 1
    ADD_HALT = 2
    ADD_BUDGET = 3
    ADD_NOMEM = 4


cdef class _Closure:
    cdef uint8_t* data
    cdef int64_t count, cap, budget, ceiling
    cdef int width, n
    cdef uint64_t* pw
    cdef uint8_t* bitmap
    cdef bint dense
    cdef unordered_set[uint64_t] hset
    cdef int stop_kind
    cdef int dim
    cdef int64_t* delta
    cdef unordered_set[uint64_t] targets
    cdef int64_t stop_index
    cdef bint stopped

    def __cinit__(self, int n, int width, int64_t budget, int64_t ceiling):
        cdef int c
        cdef uint64_t total = 1
        self.n = n
        self.width = width
        self.budget = budget
        self.ceiling = ceiling
        self.count = 0
        self.cap = 1024
        self.data = <uint8_t*> malloc(self.cap * width)
        self.pw = <uint64_t*> malloc(width * sizeof(uint64_t))
        self.delta = NULL
        self.bitmap = NULL
        self.stop_kind = 0
        self.stop_index = -1
        self.stopped = False
        for c in range(width):
            self.pw[c] = total
            total *= n
        self.dense = total <= DENSE_LIMIT
        if self.dense:
            self.bitmap = <uint8_t*> calloc((total >> 3) + 1, 1)
            if self.bitmap == NULL:
                raise MemoryError()
        if self.data == NULL or self.pw == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.data)
        free(self.pw)
        free(self.bitmap)
        free(self.delta)

    cdef inline uint64_t key(self, const uint8_t* t) noexcept nogil:
        cdef uint64_t k = 0
        cdef int c
        for c in range(self.width):
            k += t[c] * self.pw[c]
        return k

    cdef bint check_stop(self, const uint8_t* t, uint64_t k) noexcept nogil:
        cdef int v, half
        if self.stop_kind == 1:
            half = 1 << (self.dim - 1)
            for v in range(half - 1):
                if self.delta[t[v]] != self.delta[t[v + half]]:
                    return False
            return self.delta[t[half - 1]] != self.delta[t[2 * half - 1]]
        if self.stop_kind == 2:
            self.targets.erase(k)
            return self.targets.size() == 0
        if self.stop_kind == 3:
            return self.targets.count(k) > 0
        return False

    cdef int add(self, const uint8_t* t) noexcept nogil:
        cdef uint64_t k = self.key(t)
        cdef uint8_t* grown
        if self.dense:
            if self.bitmap[k >> 3] & (1 << (k & 7)):
                return ADD_DUP
            self.bitmap[k >> 3] |= <uint8_t> (1 << (k & 7))
        else:
            if not self.hset.insert(k).second:
                return ADD_DUP
        if self.count == self.cap:
            grown = <uint8_t*> realloc(self.data, 2 * self.cap * self.width)
            if grown == NULL:
                return ADD_NOMEM
            self.data = grown
            self.cap *= 2
        memcpy(self.data + self.count * self.width, t, self.width)
        self.count += 1
        if self.count > self.budget:
            return ADD_BUDGET
        if self.stop_kind and self.check_stop(t, k):
            self.stopped = True
            self.stop_index = self.count - 1
            return ADD_HALT
        if self.ceiling and self.count >= self.ceiling:
            return ADD_HALT
        return ADD_NEW

    cdef int general_loop(self, int nops, const int* arities,
                          const int32_t** tables, uint8_t* out,
                          int* idx, int* limits) noexcept nogil:
        cdef int64_t i = 0
        cdef int o, r, p, q, k, c, res
        cdef int64_t off
        cdef const int32_t* tab
        cdef const uint8_t* e
        cdef int n = self.n, w = self.width
        while i < self.count:
            for o in range(nops):
                r = arities[o]
                tab = tables[o]
                if r == 1:
                    e = self.data + i * w
                    for c in range(w):
                        out[c] = <uint8_t> tab[e[c]]
                    res = self.add(out)
                    if res >= ADD_HALT:
                        return res
                elif r >= 2:
                    for p in range(r):
                        if p > 0 and i == 0:
                            break
                        for q in range(r):
                            idx[q] = 0
                            limits[q] = <int> (i if q < p else i + 1)
                        idx[p] = <int> i
                        while True:
                            for c in range(w):
                                off = 0
                                for q in range(r):
                                    off = off * n + self.data[idx[q] * w + c]
                                out[c] = <uint8_t> tab[off]
                            res = self.add(out)
                            if res >= ADD_HALT:
                                return res
                            # odometer over free positions, rightmost fastest
                            k = r - 1
                            while k >= 0:
                                if k == p:
                                    k -= 1
                                    continue
                                idx[k] += 1
                                if idx[k] < limits[k]:
                                    break
                                idx[k] = 0
                                k -= 1
                            if k < 0:
                                break
            i += 1
        return ADD_NEW

    cdef int assoc_loop(self, const int32_t* mul, int nun,
                        const int32_t** unary, uint8_t* out) noexcept nogil:
        cdef int64_t si = 0, gi = 0, s, b, gcount, gcap
        cdef int c, u, res
        cdef int n = self.n, w = self.width
        cdef int64_t* G
        cdef int64_t* grown
        cdef const uint8_t* e
        cdef const uint8_t* g
        gcount = self.count
        gcap = gcount + 16
        G = <int64_t*> malloc(gcap * sizeof(int64_t))
        if G == NULL:
            return ADD_NOMEM
        for s in range(gcount):
            G[s] = s
        res = ADD_NEW
        while True:
            if gi < gcount:
                for s in range(si):
                    e = self.data + s * w
                    g = self.data + G[gi] * w
                    for c in range(w):
                        out[c] = <uint8_t> mul[e[c] * n + g[c]]
                    res = self.add(out)
                    if res >= ADD_HALT:
                        free(G)
                        return res
                gi += 1
            elif si < self.count:
                for b in range(gi):
                    e = self.data + si * w
                    g = self.data + G[b] * w
                    for c in range(w):
                        out[c] = <uint8_t> mul[e[c] * n + g[c]]
                    res = self.add(out)
                    if res >= ADD_HALT:
                        free(G)
                        return res
                for u in range(nun):
                    e = self.data + si * w
                    for c in range(w):
                        out[c] = <uint8_t> unary[u][e[c]]
                    res = self.add(out)
                    if res >= ADD_HALT:
                        free(G)
                        return res
                    if res == ADD_NEW:
                        if gcount == gcap:
                            grown = <int64_t*> realloc(G, 2 * gcap * sizeof(int64_t))
                            if grown == NULL:
                                free(G)
                                return ADD_NOMEM
                            G = grown
                            gcap *= 2
                        G[gcount] = self.count - 1
                        gcount += 1
                si += 1
            else:
                break
        free(G)
        return ADD_NEW


def run_closure(int n, ops, int width, gens, int64_t budget,
                int64_t ceiling=0, stop=None, bint assoc=False):
    """See ``_kernel_py.run_closure``."""
    cdef _Closure cl = _Closure(n, width, budget, ceiling)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] g = np.ascontiguousarray(
        np.asarray(gens, dtype=np.uint8).reshape(-1, width))
    cdef int nops = len(ops)
    cdef int i, res = ADD_NEW, maxr = 1
    cdef int* arities = <int*> malloc(max(nops, 1) * sizeof(int))
    cdef const int32_t** tables = <const int32_t**> malloc(max(nops, 1) * sizeof(int32_t*))
    cdef const int32_t** unary = <const int32_t**> malloc(max(nops, 1) * sizeof(int32_t*))
    cdef const int32_t* mul = NULL
    cdef int nun = 0
    cdef uint8_t* out = <uint8_t*> malloc(width)
    cdef int* idx = NULL
    cdef int* limits = NULL
    cdef cnp.ndarray[cnp.int32_t, ndim=1] arr
    keep = []
    try:
        for i in range(nops):
            r, tab = ops[i]
            arr = np.ascontiguousarray(np.asarray(tab, dtype=np.int32))
            keep.append(arr)
            arities[i] = r
            tables[i] = <const int32_t*> arr.data
            maxr = max(maxr, r)
            if r == 1:
                unary[nun] = tables[i]
                nun += 1
            elif r == 2:
                mul = tables[i]
        idx = <int*> malloc(maxr * sizeof(int))
        limits = <int*> malloc(maxr * sizeof(int))
        if stop is not None:
            if stop[0] == "centrality":
                cl.stop_kind = 1
                cl.dim = stop[1]
                cl.delta = <int64_t*> malloc(n * sizeof(int64_t))
                for i in range(n):
                    cl.delta[i] = stop[2][i]
            elif stop[0] in ("targets", "any_target"):
                trows = np.asarray(stop[1], dtype=np.uint8).reshape(-1, width)
                for row in trows:
                    cl.targets.insert(cl.key(<const uint8_t*> (<cnp.ndarray> np.ascontiguousarray(row)).data))
                if cl.targets.size():
                    cl.stop_kind = 2 if stop[0] == "targets" else 3
            else:
                raise ValueError(f"unknown stop kind {stop[0]!r}")
        for i in range(g.shape[0]):
            res = cl.add(&g[i, 0])
            if res >= ADD_HALT:
                break
        if res < ADD_HALT:
            with nogil:
                if assoc:
                    res = cl.assoc_loop(mul, nun, unary, out)
                else:
                    res = cl.general_loop(nops, arities, tables, out, idx, limits)
        if res == ADD_BUDGET:
            raise BudgetExceeded(cl.count, budget)
        if res == ADD_NOMEM:
            raise MemoryError()
        rows = np.empty((cl.count, width), dtype=np.uint8)
        if cl.count:
            memcpy(<void*> (<cnp.ndarray> rows).data, cl.data, cl.count * width)
        return rows, (1 if cl.stopped else 0), cl.stop_index
    finally:
        free(arities)
        free(tables)
        free(unary)
        free(out)
        free(idx)
        free(limits)
