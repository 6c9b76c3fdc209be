# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``."""
import numpy as np

NAME = "cython"

DEF MAXGEN = 64


def prepare(mul):
    return np.ascontiguousarray(mul, dtype=np.int32)


def extend_map(const int[:, ::1] kt, gens, imgs):
    cdef Py_ssize_t n = kt.shape[0]
    cdef Py_ssize_t k = len(gens)
    cdef int[::1] g = np.asarray(gens, dtype=np.int32)
    cdef int[::1] h = np.asarray(imgs, dtype=np.int32)
    out_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef unsigned char[::1] used = np.zeros(n, dtype=np.uint8)
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 1, i
    cdef int x, fx, y, fy, cur
    out[0] = 0
    used[0] = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        fx = out[x]
        for i in range(k):
            y = kt[x, g[i]]
            fy = kt[fx, h[i]]
            cur = out[y]
            if cur < 0:
                if used[fy]:
                    return 2, tail, out_arr, y, i
                out[y] = fy
                used[fy] = 1
                queue[tail] = y
                tail += 1
            elif cur != fy:
                return 1, tail, out_arr, x, i
    return 0, tail, out_arr, -1, -1


def first_nonassociative(mul):
    cdef const int[:, ::1] t = np.ascontiguousarray(mul, dtype=np.int32)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    cdef int xy
    for x in range(n):
        for y in range(n):
            xy = t[x, y]
            for z in range(n):
                if t[xy, z] != t[x, t[y, z]]:
                    return x, y, z
    return None


cdef inline long long _floordiv(long long a, long long b):
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef class Collector:
    cdef int m
    cdef long long[::1] orders
    cdef long long[:, ::1] pow_words
    cdef long long[:, :, ::1] comm_words
    cdef unsigned char[::1] central
    cdef unsigned char[::1] pow_central
    cdef unsigned char[:, ::1] has_comm

    def __init__(self, rel_orders, pow_words, comm_words, central):
        m = len(rel_orders)
        if m > MAXGEN:
            raise ValueError(f"at most {MAXGEN} generators supported")
        self.m = m
        self.orders = np.asarray(rel_orders, dtype=np.int64)
        self.pow_words = np.ascontiguousarray(np.asarray(pow_words, dtype=np.int64).reshape(m, m))
        cw = np.ascontiguousarray(np.asarray(comm_words, dtype=np.int64).reshape(m, m, m))
        self.comm_words = cw
        cen = np.asarray(central, dtype=np.uint8).reshape(m)
        self.central = cen
        pw = np.asarray(self.pow_words)
        self.pow_central = np.array(
            [all(cen[g] for g in range(m) if pw[j, g]) for j in range(m)], dtype=np.uint8)
        self.has_comm = np.ascontiguousarray((cw != 0).any(axis=2).astype(np.uint8))

    def product(self, u, v):
        cdef long long x[MAXGEN]
        cdef int j
        cdef long long e
        for j in range(self.m):
            x[j] = u[j]
        for j in range(self.m):
            e = v[j]
            if e:
                self._mul_gen(x, j, e)
        return tuple([x[j] for j in range(self.m)])

    def inverse(self, u):
        cdef long long x[MAXGEN]
        cdef int j
        for j in range(self.m):
            x[j] = 0
        for j in range(self.m - 1, -1, -1):
            if u[j]:
                self._mul_gen(x, j, -<long long>u[j])
        return tuple([x[j] for j in range(self.m)])

    cdef void _mul_gen(self, long long* x, int j, long long e):
        cdef int m = self.m, k, ncorr = 0
        cdef int corr_k[MAXGEN]
        cdef long long corr_t[MAXGEN]
        cdef long long tail[MAXGEN]
        cdef long long s, q, r
        if not self.central[j]:
            for k in range(j + 1, m):
                if x[k] and self.has_comm[k, j]:
                    corr_k[ncorr] = k
                    corr_t[ncorr] = x[k] * e
                    ncorr += 1
        s = x[j] + e
        q = _floordiv(s, self.orders[j])
        r = s - q * self.orders[j]
        x[j] = r
        if q:
            for k in range(j + 1, m):
                tail[k] = x[k]
                x[k] = 0
            self._mul_pow_word(x, j, q)
            for k in range(j + 1, m):
                if tail[k]:
                    self._mul_gen(x, k, tail[k])
        for k in range(ncorr):
            self._mul_comm_word(x, corr_k[k], j, corr_t[k])

    cdef void _mul_comm_word(self, long long* x, int k, int j, long long t):
        cdef int g
        for g in range(self.m):
            if self.comm_words[k, j, g]:
                self._mul_gen(x, g, self.comm_words[k, j, g] * t)

    cdef void _mul_pow_word(self, long long* x, int j, long long t):
        cdef int g, m = self.m
        cdef long long rep
        if self.pow_central[j]:
            for g in range(m):
                if self.pow_words[j, g]:
                    self._mul_gen(x, g, self.pow_words[j, g] * t)
        elif t > 0:
            for rep in range(t):
                for g in range(m):
                    if self.pow_words[j, g]:
                        self._mul_gen(x, g, self.pow_words[j, g])
        else:
            for rep in range(-t):
                for g in range(m - 1, -1, -1):
                    if self.pow_words[j, g]:
                        self._mul_gen(x, g, -self.pow_words[j, g])
