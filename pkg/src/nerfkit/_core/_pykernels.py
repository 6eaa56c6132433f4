"""Pure numpy implementations of the kernels (reference and fallback)."""

import numpy as np


def uf_min_labels(n, a, b):
    """Label every element of ``range(n)`` by the least element of its class.

    Classes are generated by the pairs ``(a[t], b[t])``.  Minimum-label
    propagation along the edges until a fixed point is reached.
    """
    labels = np.arange(n, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if n == 0 or a.size == 0:
        return labels
    while True:
        lo = np.minimum(labels[a], labels[b])
        new = labels.copy()
        np.minimum.at(new, a, lo)
        np.minimum.at(new, b, lo)
        new = new[new]  # pointer jumping
        if np.array_equal(new, labels):
            return labels
        labels = new


class KeyTable:
    """Exact-match lookup of int64 keys; ``find`` returns positions or -1."""

    def __init__(self, keys):
        self.keys = np.ascontiguousarray(keys, dtype=np.int64)
        self.order = np.argsort(self.keys, kind="stable")
        self.sorted = self.keys[self.order]

    def find(self, query):
        query = np.asarray(query, dtype=np.int64)
        out = np.full(query.shape, -1, dtype=np.int64)
        if self.sorted.size == 0 or query.size == 0:
            return out
        pos = np.searchsorted(self.sorted, query)
        pos_c = np.minimum(pos, self.sorted.size - 1)
        ok = self.sorted[pos_c] == query
        out[ok] = self.order[pos_c[ok]]
        return out
