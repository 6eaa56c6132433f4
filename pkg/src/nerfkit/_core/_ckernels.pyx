# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: union-find with least representatives, open-addressing key table."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long long _find(long long[::1] parent, long long x) nogil:
    cdef long long root = x
    cdef long long nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def uf_min_labels(long long n, a, b):
    cdef long long[::1] aa = np.ascontiguousarray(a, dtype=np.int64)
    cdef long long[::1] bb = np.ascontiguousarray(b, dtype=np.int64)
    out = np.arange(n, dtype=np.int64)
    cdef long long[::1] parent = out
    cdef Py_ssize_t t, m = aa.shape[0]
    cdef long long ra, rb, i
    with nogil:
        for t in range(m):
            ra = _find(parent, aa[t])
            rb = _find(parent, bb[t])
            if ra < rb:
                parent[rb] = ra
            elif rb < ra:
                parent[ra] = rb
        for i in range(n):
            parent[i] = _find(parent, i)
    return out


cdef inline unsigned long long _mix(long long k) nogil:
    cdef unsigned long long z = <unsigned long long>k + 0x9E3779B97F4A7C15ULL
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef class KeyTable:
    cdef public object keys
    cdef long long[::1] _keys
    cdef long long[::1] _slots
    cdef unsigned long long _mask

    def __init__(self, keys):
        self.keys = np.ascontiguousarray(keys, dtype=np.int64)
        self._keys = self.keys
        cdef Py_ssize_t n = self._keys.shape[0]
        cdef unsigned long long cap = 16
        while cap < <unsigned long long>(2 * n + 1):
            cap <<= 1
        self._mask = cap - 1
        slots = np.full(cap, -1, dtype=np.int64)
        self._slots = slots
        cdef Py_ssize_t t
        cdef unsigned long long h
        with nogil:
            for t in range(n):
                h = _mix(self._keys[t]) & self._mask
                while self._slots[h] != -1:
                    if self._keys[self._slots[h]] == self._keys[t]:
                        break
                    h = (h + 1) & self._mask
                if self._slots[h] == -1:
                    self._slots[h] = t

    def find(self, query):
        q = np.ascontiguousarray(query, dtype=np.int64)
        shape = q.shape
        cdef long long[::1] qq = q.reshape(-1)
        out = np.empty(qq.shape[0], dtype=np.int64)
        cdef long long[::1] oo = out
        cdef Py_ssize_t t
        cdef unsigned long long h
        cdef long long s
        with nogil:
            for t in range(qq.shape[0]):
                h = _mix(qq[t]) & self._mask
                oo[t] = -1
                while True:
                    s = self._slots[h]
                    if s == -1:
                        break
                    if self._keys[s] == qq[t]:
                        oo[t] = s
                        break
                    h = (h + 1) & self._mask
        return out.reshape(shape)
