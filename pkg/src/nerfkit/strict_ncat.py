"""Strict n-categories and their multi-nerves.

``C[q]`` is the set of q-cells, ``s[q], b[q] : C[q+1] -> C[q]`` the source and
target, ``e[q] : C[q] -> C[q+1]`` the identities.  ``comp[(i, j)]`` is a dense
``|C_j| x |C_j|`` table: ``comp[(i, j)][x, y]`` composes the j-cells ``x`` and
``y`` along a common i-cell, ``x`` first (``b_i(x) == s_i(y)``), and is ``-1``
off the composable pairs.  For 2-cells ``comp[(1, 2)][a, b]`` is the vertical
composite ``b . a`` and ``comp[(0, 2)][a, b]`` the horizontal one ``b * a``.

The multi-nerve at ``M = (m_1, .., m_n)`` with first zero coordinate at axis
``p`` (``p = n + 1`` if none) consists of grids of shape ``(m_1, .., m_{p-1})``
of (p-1)-cells, consecutive along axis k over a common (k-1)-cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cat_nerve import FinCategory
from .presheaf import (FinPresheaf, PresheafError, Region, ValidationReport, build_from_rows,
                       check_budget)
from .rows import expand_join
from ._core import uf_min_labels

MAX_ARITY = 3


class StrictError(ValueError):
    pass


@dataclass
class StrictNCategory:
    n: int
    sizes: list
    s: list
    b: list
    e: list
    comp: dict
    labels: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.sizes = [int(c) for c in self.sizes]
        self.s = [np.asarray(a, dtype=np.int64) for a in self.s]
        self.b = [np.asarray(a, dtype=np.int64) for a in self.b]
        self.e = [np.asarray(a, dtype=np.int64) for a in self.e]
        self.comp = {(int(i), int(j)): np.asarray(t, dtype=np.int64).reshape(
            self.sizes[j], self.sizes[j]) for (i, j), t in self.comp.items()}
        if not self.labels:
            self.labels = [[f"c{q}_{x}" for x in range(c)] for q, c in enumerate(self.sizes)]

    # iterated structure maps --------------------------------------------
    def src(self, q: int, level: int, cells=None) -> np.ndarray:
        """Iterated source ``C_q -> C_level``."""
        out = np.arange(self.sizes[q], dtype=np.int64) if cells is None else \
            np.asarray(cells, dtype=np.int64)
        for r in range(q - 1, level - 1, -1):
            out = self.s[r][out]
        return out

    def tgt(self, q: int, level: int, cells=None) -> np.ndarray:
        out = np.arange(self.sizes[q], dtype=np.int64) if cells is None else \
            np.asarray(cells, dtype=np.int64)
        for r in range(q - 1, level - 1, -1):
            out = self.b[r][out]
        return out

    def ident(self, level: int, q: int, cells=None) -> np.ndarray:
        """Iterated identity ``C_level -> C_q``."""
        out = np.arange(self.sizes[level], dtype=np.int64) if cells is None else \
            np.asarray(cells, dtype=np.int64)
        for r in range(level, q):
            out = self.e[r][out]
        return out

    def category(self, i: int, j: int) -> FinCategory:
        """``(C_i, C_j, *_ij)`` as a category."""
        return FinCategory(self.sizes[i], self.src(j, i), self.tgt(j, i), self.ident(i, j),
                           self.comp[(i, j)], list(self.labels[i]), list(self.labels[j]),
                           name=f"{self.name}[{i},{j}]")

    def to_json(self):
        return {"kind": "strict", "name": self.name, "n": self.n,
                "cells": [list(map(str, lab)) for lab in self.labels],
                "s": [a.tolist() for a in self.s], "b": [a.tolist() for a in self.b],
                "e": [a.tolist() for a in self.e],
                "comp": {f"{i},{j}": t.tolist() for (i, j), t in sorted(self.comp.items())}}


def strict_from_category(C: FinCategory) -> StrictNCategory:
    return StrictNCategory(1, [C.n_objects, C.n_arrows], [C.src], [C.tgt], [C.ident],
                           {(0, 1): C.comp}, [list(C.object_labels), list(C.arrow_labels)],
                           name=C.name)


def _fail(check: int, law: str, **where) -> ValidationReport:
    return ValidationReport(False, check, dict(law=law, **{k: (v.tolist() if isinstance(v, np.ndarray) else v)
                                                           for k, v in where.items()}))


def validate_strict(C: StrictNCategory) -> ValidationReport:
    """Globularity, every ``(C_i, C_j, *_ij)`` a category, boundary and identity
    compatibility of the compositions, and the Godement interchange law."""
    n = C.n
    checked = 0
    if len(C.sizes) != n + 1 or not (len(C.s) == len(C.b) == len(C.e) == n):
        return _fail(0, "shape")
    for q in range(n):
        for arr, lim, nm in ((C.s[q], C.sizes[q], "s"), (C.b[q], C.sizes[q], "b"),
                             (C.e[q], C.sizes[q + 1], "e")):
            if arr.size and (arr.min() < 0 or arr.max() >= lim):
                return _fail(0, f"{nm}_{q} range")
        if C.s[q].size != C.sizes[q + 1] or C.b[q].size != C.sizes[q + 1] or \
                C.e[q].size != C.sizes[q]:
            return _fail(0, f"level {q} table length")
    # globularity
    for q in range(1, n):
        for a, bb, nm in ((C.s[q - 1][C.s[q]], C.s[q - 1][C.b[q]], "s s = s b"),
                          (C.b[q - 1][C.s[q]], C.b[q - 1][C.b[q]], "b s = b b")):
            checked += 1
            if not np.array_equal(a, bb):
                x = int(np.nonzero(a != bb)[0][0])
                return _fail(checked, f"globularity {nm}", level=q + 1, cell=x)
    for q in range(n):
        ids = np.arange(C.sizes[q])
        checked += 1
        if not (np.array_equal(C.s[q][C.e[q]], ids) and np.array_equal(C.b[q][C.e[q]], ids)):
            return _fail(checked, "identity boundaries", level=q)
    for i in range(n):
        for j in range(i + 1, n + 1):
            if (i, j) not in C.comp:
                return _fail(checked, "missing composition", pair=[i, j])
            rep = C.category(i, j).validate()
            checked += rep.checked + 1
            if not rep.ok:
                return _fail(checked, f"category C[{i},{j}]", detail=rep.violation)
    # boundaries and identities commute with composition along lower levels
    for i in range(n):
        for j in range(i + 2, n + 1):
            x, y = np.nonzero(C.comp[(i, j)] >= 0)
            xy = C.comp[(i, j)][x, y]
            for bnd, nm in ((C.s[j - 1], "s"), (C.b[j - 1], "b")):
                lhs = bnd[xy]
                rhs = C.comp[(i, j - 1)][bnd[x], bnd[y]]
                checked += 1
                if np.any(lhs != rhs):
                    t = int(np.nonzero(lhs != rhs)[0][0])
                    return _fail(checked, f"{nm}_{j - 1} of *_{i}{j}", cells=[int(x[t]), int(y[t])])
    for i in range(n):
        for j in range(i + 1, n):
            x, y = np.nonzero(C.comp[(i, j)] >= 0)
            lhs = C.e[j][C.comp[(i, j)][x, y]]
            rhs = C.comp[(i, j + 1)][C.e[j][x], C.e[j][y]]
            checked += 1
            if np.any(lhs != rhs):
                t = int(np.nonzero(lhs != rhs)[0][0])
                return _fail(checked, f"identity of *_{i}{j}", cells=[int(x[t]), int(y[t])])
    # Godement: (a *_j a') *_i (b *_j b') == (a *_i b) *_j (a' *_i b')
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n + 1):
                rep = _godement(C, i, j, k)
                checked += rep.checked
                if not rep.ok:
                    return ValidationReport(False, checked, rep.violation)
    return ValidationReport(True, checked, None)


def _godement(C: StrictNCategory, i: int, j: int, k: int) -> ValidationReport:
    cj, ci = C.comp[(j, k)], C.comp[(i, k)]
    a, a2 = np.nonzero(cj >= 0)                 # a then a' along j
    # pair each j-composable (a, a') with a j-composable (b, b') such that
    # a, b are i-composable and a', b' are i-composable
    li, rj = expand_join(C.tgt(k, i, a), C.src(k, i, a))
    A, A2, B, B2 = a[li], a2[li], a[rj], a2[rj]
    ok = (ci[A, B] >= 0) & (ci[A2, B2] >= 0)
    A, A2, B, B2 = A[ok], A2[ok], B[ok], B2[ok]
    lhs = ci[cj[A, A2], cj[B, B2]]
    rhs = cj[ci[A, B], ci[A2, B2]]
    if np.any(lhs != rhs):
        t = int(np.nonzero(lhs != rhs)[0][0])
        return ValidationReport(False, int(A.size), {
            "law": f"Godement *_{i}{k} / *_{j}{k}",
            "quadruple": [int(A[t]), int(A2[t]), int(B[t]), int(B2[t])],
            "got": int(lhs[t]), "expected": int(rhs[t])})
    return ValidationReport(True, int(A.size), None)


# ---------------------------------------------------------------------------
# multi-nerve


def first_zero(M) -> int:
    """1-based axis of the first zero coordinate (``len(M) + 1`` if none)."""
    for k, m in enumerate(M, start=1):
        if m == 0:
            return k
    return len(M) + 1


def grids(C: StrictNCategory, shape: tuple, q: int) -> np.ndarray:
    """Composable grids of q-cells with the given shape, rows flattened in C order."""
    cur = np.arange(C.sizes[q], dtype=np.int64).reshape(-1, 1)
    width = 1
    for r in range(len(shape), 0, -1):        # axis r composes over (r-1)-cells
        m = shape[r - 1]
        first = cur[:, 0]
        bk = C.tgt(q, r - 1, first)
        sk = C.src(q, r - 1, first)
        chain = np.arange(cur.shape[0], dtype=np.int64).reshape(-1, 1)
        for _ in range(m - 1):
            check_budget(f"grids of shape {shape}", chain.shape[0] * max(cur.shape[0], 1))
            li, rj = expand_join(bk[chain[:, -1]], sk)
            chain = np.concatenate([chain[li], rj.reshape(-1, 1)], axis=1)
        cur = cur[chain].reshape(chain.shape[0], m * width)
        width *= m
    return cur


def _nested_label(labels, grid: np.ndarray) -> str:
    if grid.ndim == 0:
        return str(labels[int(grid)])
    return "(" + ",".join(_nested_label(labels, g) for g in grid) + ")"


def multi_nerve(C: StrictNCategory, D=None, labels: bool = True) -> FinPresheaf:
    n = C.n
    if n > MAX_ARITY:
        raise StrictError(f"multi-nerves are limited to arity <= {MAX_ARITY}")
    rep = validate_strict(C)
    if not rep.ok:
        raise StrictError(f"invalid strict category: {rep.violation}")
    region = Region.coerce(n, D)
    cache: dict = {}
    rows = {}
    for M in region.indices():
        p = first_zero(M)
        shape = tuple(M[:p - 1])
        key = (shape, p - 1)
        if key not in cache:
            cache[key] = grids(C, shape, p - 1)
        rows[M] = cache[key]

    def act(akey, r):
        kind, k, i, M = akey
        p = first_zero(M)
        q = p - 1
        shape = tuple(M[:q])
        g = r.reshape((-1,) + shape)
        cnt = g.shape[0]
        if k >= p:
            if kind == "e" and k == p:
                N = list(M)
                N[k - 1] += 1
                p2 = first_zero(N)
                extra = tuple(N[q:p2 - 1])
                ids = C.ident(q, p2 - 1, g.reshape(-1)).reshape(g.shape)
                ids = ids.reshape(g.shape + (1,) * len(extra))
                return np.broadcast_to(ids, g.shape + extra).reshape(cnt, -1)
            return r
        ax = k                                 # axis 0 of g counts cells
        m = M[k - 1]
        if kind == "d":
            if m == 1:
                take = [slice(None)] * g.ndim
                for a in range(k, g.ndim):
                    take[a] = 0
                ent = g[tuple(take)]
                fn = C.tgt if i == 0 else C.src
                return fn(q, k - 1, ent.reshape(-1)).reshape(cnt, -1)
            if i == 0:
                return np.delete(g, 0, axis=ax).reshape(cnt, -1)
            if i == m:
                return np.delete(g, m - 1, axis=ax).reshape(cnt, -1)
            x = np.take(g, i - 1, axis=ax)
            y = np.take(g, i, axis=ax)
            z = C.comp[(k - 1, q)][x, y]
            out = np.delete(g, i, axis=ax)
            idx = [slice(None)] * g.ndim
            idx[ax] = i - 1
            out[tuple(idx)] = z
            return out.reshape(cnt, -1)
        base = np.take(g, min(i, m - 1), axis=ax)
        fn = C.src if i < m else C.tgt
        bnd = fn(q, k - 1, base.reshape(-1))
        ins = C.ident(k - 1, q, bnd).reshape(base.shape)
        return np.insert(g, i, ins, axis=ax).reshape(cnt, -1)

    labs = None
    if labels:
        labs = {}
        for M, r in rows.items():
            p = first_zero(M)
            shape = tuple(M[:p - 1])
            lab = C.labels[p - 1]
            labs[M] = [_nested_label(lab, row.reshape(shape)) for row in r]
    return build_from_rows(n, region, rows, act, labels=labs,
                           name=f"N({C.name})" if C.name else "multi_nerve",
                           meta={"origin": "multi_nerve", "strict": C.name})


# ---------------------------------------------------------------------------
# truncation of a strict n-category


def strict_truncate(C: StrictNCategory) -> tuple[StrictNCategory, np.ndarray]:
    """Collapse isomorphism classes of (n-1)-cells; returns ``(TC, class map)``."""
    n = C.n
    if n < 1:
        raise StrictError("nothing to truncate")
    cat = C.category(n - 1, n)
    inv = cat.invertible()
    iso = np.nonzero(inv >= 0)[0]
    lab = uf_min_labels(C.sizes[n - 1], cat.src[iso], cat.tgt[iso])
    reps = np.unique(lab)
    t = np.searchsorted(reps, lab).astype(np.int64)
    sizes = C.sizes[:n - 1] + [int(reps.size)]
    if n >= 2:
        s = C.s[:n - 2] + [C.s[n - 2][reps]]
        b = C.b[:n - 2] + [C.b[n - 2][reps]]
        e = C.e[:n - 2] + [t[C.e[n - 2]]]
    else:
        s, b, e = [], [], []
    comp = {}
    for (i, j), tab in C.comp.items():
        if j < n - 1:
            comp[(i, j)] = tab
        elif j == n - 1:
            x, y = np.nonzero(tab >= 0)
            merged = -np.ones((reps.size, reps.size), dtype=np.int64)
            merged[t[x], t[y]] = t[tab[x, y]]
            check = merged[t[x], t[y]] == t[tab[x, y]]
            if not np.all(check):
                raise StrictError(f"*_{i}{j} does not descend to isomorphism classes")
            comp[(i, j)] = merged
    labels = [list(l) for l in C.labels[:n - 1]] + [[C.labels[n - 1][x] for x in reps]]
    TC = StrictNCategory(n - 1, sizes, s, b, e, comp, labels,
                         name=f"T({C.name})" if C.name else "")
    return TC, t
