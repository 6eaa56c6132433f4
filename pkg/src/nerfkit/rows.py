"""Integer-row utilities: exact row lookup and equi-joins on small-int tables.

Cells that are built from other cells (chains, grids, quadruple families) are
stored as rows of small non-negative integers.  :class:`RowIndex` turns rows
into int64 keys (mixed radix, re-ranking columns whenever the radix product
would overflow) and answers "which row is this?" queries in bulk.
"""

from __future__ import annotations

import numpy as np

from ._core import KeyTable

_LIMIT = 1 << 62


def as_rows(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return a


class RowIndex:
    """Bulk exact lookup of rows of a fixed-width integer table."""

    def __init__(self, rows):
        rows = as_rows(rows)
        self.size, self.width = rows.shape
        self.steps: list[tuple] = []
        key = np.zeros(self.size, dtype=np.int64)
        kmax = 0
        for c in range(self.width):
            col = rows[:, c]
            radix = int(col.max()) + 1 if self.size else 1
            if (kmax + 1) * radix >= _LIMIT:
                uniq = np.unique(key)
                self.steps.append(("rank", uniq))
                key = np.searchsorted(uniq, key).astype(np.int64)
                kmax = max(len(uniq) - 1, 0)
            self.steps.append(("col", c, radix))
            key = key * radix + col
            kmax = kmax * radix + radix - 1
        self.keys = key
        self.table = KeyTable(key)

    def encode(self, rows) -> tuple[np.ndarray, np.ndarray]:
        rows = as_rows(rows)
        if rows.shape[1] != self.width:
            raise ValueError(f"row width {rows.shape[1]} != {self.width}")
        n = rows.shape[0]
        key = np.zeros(n, dtype=np.int64)
        valid = np.ones(n, dtype=bool)
        for step in self.steps:
            if step[0] == "rank":
                uniq = step[1]
                if uniq.size == 0:
                    valid[:] = False
                    continue
                pos = np.searchsorted(uniq, key)
                pos_c = np.minimum(pos, uniq.size - 1)
                valid &= uniq[pos_c] == key
                key = pos_c.astype(np.int64)
            else:
                _, c, radix = step
                col = rows[:, c]
                valid &= (col >= 0) & (col < radix)
                key = key * radix + np.clip(col, 0, radix - 1)
        return key, valid

    def find(self, rows) -> np.ndarray:
        """Row positions of ``rows`` in the table (-1 where absent)."""
        key, valid = self.encode(rows)
        out = self.table.find(key)
        out[~valid] = -1
        return out


def expand_join(left_keys, right_keys) -> tuple[np.ndarray, np.ndarray]:
    """All index pairs ``(i, j)`` with ``left_keys[i] == right_keys[j]``.

    Output is ordered by ``i`` then ``j`` (lexicographic), which keeps every
    enumeration built from joins deterministic.
    """
    left_keys = np.asarray(left_keys, dtype=np.int64)
    right_keys = np.asarray(right_keys, dtype=np.int64)
    order = np.argsort(right_keys, kind="stable")
    rs = right_keys[order]
    lo = np.searchsorted(rs, left_keys, side="left")
    hi = np.searchsorted(rs, left_keys, side="right")
    counts = hi - lo
    total = int(counts.sum())
    li = np.repeat(np.arange(left_keys.size, dtype=np.int64), counts)
    if total == 0:
        return li, np.zeros(0, dtype=np.int64)
    starts = np.repeat(lo, counts)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    rj = order[starts + offsets]
    return li, rj.astype(np.int64)


def joint_keys(*columns) -> np.ndarray:
    """Combine equally long integer columns into one int64 key per position."""
    rows = np.stack([np.asarray(c, dtype=np.int64) for c in columns], axis=1)
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    shift = rows.min(axis=0)
    return RowIndex(rows - shift).keys


def group_distinct_counts(keys, values) -> tuple[np.ndarray, np.ndarray]:
    """For each distinct key, how many distinct values occur with it.

    Returns ``(unique_keys, counts)`` with ``unique_keys`` sorted.
    """
    keys = np.asarray(keys, dtype=np.int64)
    values = np.asarray(values, dtype=np.int64)
    if keys.size == 0:
        return keys, keys
    pairs = np.unique(np.stack([keys, values], axis=1), axis=0)
    uk, counts = np.unique(pairs[:, 0], return_counts=True)
    return uk, counts


def smallest_dtype(max_value: int):
    for dt in (np.int8, np.int16, np.int32):
        if max_value < np.iinfo(dt).max:
            return dt
    return np.int64
