"""Weak 2-categories: the axiom checker, the double nerve, extraction from a
2-nerve, and strictification.

Conventions (all tables are dense integer arrays, ``-1`` off their domain):

* ``comp1[f, g]`` is ``gf`` ("f, then g");
* ``vcomp[a, b]`` is ``b . a`` for ``b2(a) == s2(b)``;
* ``hcomp[a, b]`` is ``b * a`` for 2-cells over composable 1-cells, ``a`` on
  the first arrow;
* ``assoc[f, g, h]`` is an invertible 2-cell ``(hg)f => h(gf)``;
* ``U[f] : f I_x => f`` and ``V[f] : I_y f => f`` for ``f : x -> y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import delta_core as dc
from ._core import uf_min_labels
from .presheaf import (FinPresheaf, PresheafError, PresheafMorphism, Region, build_from_rows,
                       check_budget, fmt_index)
from .rows import RowIndex, expand_join, joint_keys


class Weak2Error(ValueError):
    pass


@dataclass
class Weak2Category:
    n0: int
    n1: int
    n2: int
    s1: np.ndarray
    b1: np.ndarray
    e1: np.ndarray
    s2: np.ndarray
    b2: np.ndarray
    e2: np.ndarray
    comp1: np.ndarray
    vcomp: np.ndarray
    hcomp: np.ndarray
    assoc: np.ndarray
    U: np.ndarray
    V: np.ndarray
    labels0: list = field(default_factory=list)
    labels1: list = field(default_factory=list)
    labels2: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        for nm in ("s1", "b1", "e1", "s2", "b2", "e2", "comp1", "vcomp", "hcomp",
                   "assoc", "U", "V"):
            setattr(self, nm, np.asarray(getattr(self, nm), dtype=np.int64))
        self.comp1 = self.comp1.reshape(self.n1, self.n1)
        self.vcomp = self.vcomp.reshape(self.n2, self.n2)
        self.hcomp = self.hcomp.reshape(self.n2, self.n2)
        self.assoc = self.assoc.reshape(self.n1, self.n1, self.n1)
        if not self.labels0:
            self.labels0 = [f"x{i}" for i in range(self.n0)]
        if not self.labels1:
            self.labels1 = [f"f{i}" for i in range(self.n1)]
        if not self.labels2:
            self.labels2 = [f"a{i}" for i in range(self.n2)]
        self._inverse = None

    # -- derived data -------------------------------------------------------
    def composable1(self) -> tuple[np.ndarray, np.ndarray]:
        f, g = np.nonzero(self.b1[:, None] == self.s1[None, :])
        return f.astype(np.int64), g.astype(np.int64)

    def composable_triples(self):
        f, g = self.composable1()
        li, h = expand_join(self.b1[g], self.s1)
        return f[li], g[li], h

    def inverse2(self) -> np.ndarray:
        """Vertical inverse of every 2-cell (-1 if not invertible)."""
        if self._inverse is None:
            inv = np.full(self.n2, -1, dtype=np.int64)
            a, b = np.nonzero(self.b2[:, None] == self.s2[None, :])
            ok = (self.b2[b] == self.s2[a])
            a, b = a[ok], b[ok]
            good = (self.vcomp[a, b] == self.e2[self.s2[a]]) & \
                   (self.vcomp[b, a] == self.e2[self.b2[a]])
            for x, y in zip(a[good][::-1], b[good][::-1]):
                inv[x] = y
            self._inverse = inv
        return self._inverse

    def is_strict(self) -> bool:
        f, g, h = self.composable_triples()
        ids = np.arange(self.n1)
        return bool(np.all(self.assoc[f, g, h] == self.e2[self.comp1[self.comp1[f, g], h]])
                    and np.all(self.U == self.e2[ids]) and np.all(self.V == self.e2[ids]))

    def to_json(self):
        f, g, h = self.composable_triples()
        return {"kind": "weak2", "name": self.name,
                "objects": list(map(str, self.labels0)),
                "arrows": [[str(self.labels1[a]), int(self.s1[a]), int(self.b1[a])]
                           for a in range(self.n1)],
                "cells2": [[str(self.labels2[a]), int(self.s2[a]), int(self.b2[a])]
                           for a in range(self.n2)],
                "e1": self.e1.tolist(), "e2": self.e2.tolist(),
                "comp1": self.comp1.tolist(), "vcomp": self.vcomp.tolist(),
                "hcomp": self.hcomp.tolist(),
                "assoc": [[int(a), int(b), int(c), int(self.assoc[a, b, c])]
                          for a, b, c in zip(f, g, h)],
                "U": self.U.tolist(), "V": self.V.tolist()}


def weak2_from_strict(S) -> Weak2Category:
    """View a strict 2-category (``StrictNCategory`` with n = 2) as a weak one."""
    if S.n != 2:
        raise Weak2Error("need a strict 2-category")
    n1 = S.sizes[1]
    comp1 = S.comp[(0, 1)]
    assoc = -np.ones((n1, n1, n1), dtype=np.int64)
    f, g = np.nonzero(comp1 >= 0)
    li, h = expand_join(S.b[0][g], S.s[0])
    ff, gg = f[li], g[li]
    assoc[ff, gg, h] = S.e[1][comp1[comp1[ff, gg], h]]
    ids = S.e[1][np.arange(n1)]
    return Weak2Category(S.sizes[0], n1, S.sizes[2], S.s[0], S.b[0], S.e[0], S.s[1], S.b[1],
                         S.e[1], comp1, S.comp[(1, 2)], S.comp[(0, 2)], assoc, ids, ids,
                         list(S.labels[0]), list(S.labels[1]), list(S.labels[2]), name=S.name)


def weak2_to_strict(C: Weak2Category):
    """The strict 2-category with the same cells and compositions (associator dropped)."""
    from .strict_ncat import StrictNCategory

    return StrictNCategory(2, [C.n0, C.n1, C.n2], [C.s1, C.s2], [C.b1, C.b2], [C.e1, C.e2],
                           {(0, 1): C.comp1, (1, 2): C.vcomp, (0, 2): C.hcomp},
                           [list(C.labels0), list(C.labels1), list(C.labels2)], name=C.name)


# ---------------------------------------------------------------------------
# the axioms


@dataclass
class Weak2Report:
    ok: bool
    axiom: str | None = None
    tuple: list | None = None
    checked: int = 0
    detail: str | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "axiom": self.axiom, "tuple": self.tuple,
                "checked": self.checked, "detail": self.detail}


class _Fail(Exception):
    def __init__(self, axiom, tup, detail=""):
        self.axiom, self.tup, self.detail = axiom, tup, detail


def _compare(axiom: str, lhs, rhs, cols, detail=""):
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    bad = (lhs != rhs) | (lhs < 0) | (rhs < 0)
    if np.any(bad):
        t = int(np.nonzero(bad)[0][0])
        raise _Fail(axiom, [int(c[t]) for c in cols],
                    detail or f"got {int(lhs[t])}, expected {int(rhs[t])}")
    return int(lhs.size)


def _safe(table, *idx):
    """Table lookup that propagates -1 for undefined arguments."""
    idx = [np.asarray(i, dtype=np.int64) for i in idx]
    bad = np.zeros(np.broadcast(*idx).shape, dtype=bool)
    for i in idx:
        bad |= i < 0
    out = table[tuple(np.maximum(i, 0) for i in idx)]
    return np.where(bad, -1, out)


def validate_weak2(C: Weak2Category) -> Weak2Report:
    """Typing, invertibility and axioms (1)-(10), each checked exhaustively."""
    checked = 0
    try:
        checked += _typing(C)
        checked += _axioms(C)
    except _Fail as exc:
        return Weak2Report(False, exc.axiom, exc.tup, checked, exc.detail)
    return Weak2Report(True, None, None, checked)


def _typing(C: Weak2Category) -> int:
    n0, n1, n2 = C.n0, C.n1, C.n2
    for arr, size, lim, nm in ((C.s1, n1, n0, "s1"), (C.b1, n1, n0, "b1"), (C.e1, n0, n1, "e1"),
                               (C.s2, n2, n1, "s2"), (C.b2, n2, n1, "b2"), (C.e2, n1, n2, "e2"),
                               (C.U, n1, n2, "U"), (C.V, n1, n2, "V")):
        if arr.shape != (size,) or (arr.size and (arr.min() < 0 or arr.max() >= lim)):
            raise _Fail("typing", [], f"table {nm} has the wrong shape or range")
    c = 0
    o, a = np.arange(n0), np.arange(n1)
    c += _compare("typing", C.s1[C.e1], o, [o], "s1 e1 = id")
    c += _compare("typing", C.b1[C.e1], o, [o], "b1 e1 = id")
    c += _compare("typing", C.s2[C.e2], a, [a], "s2 e2 = id")
    c += _compare("typing", C.b2[C.e2], a, [a], "b2 e2 = id")
    t = np.arange(n2)
    c += _compare("typing", C.s1[C.s2], C.s1[C.b2], [t], "s1 s2 = s1 b2")
    c += _compare("typing", C.b1[C.s2], C.b1[C.b2], [t], "b1 s2 = b1 b2")
    # domains of definition
    for tab, dom, nm in ((C.comp1, C.b1[:, None] == C.s1[None, :], "comp1"),
                         (C.vcomp, C.b2[:, None] == C.s2[None, :], "vcomp"),
                         (C.hcomp, C.b1[C.s2][:, None] == C.s1[C.s2][None, :], "hcomp")):
        if tab.size and (tab.min() < -1 or tab.max() >= tab.shape[0]):
            raise _Fail("typing", [], f"{nm} values out of range")
        mism = (tab >= 0) != dom
        if np.any(mism):
            x, y = np.argwhere(mism)[0]
            raise _Fail("typing", [int(x), int(y)], f"{nm} defined off (or not on) its domain")
    f, g = C.composable1()
    gf = C.comp1[f, g]
    c += _compare("typing", C.s1[gf], C.s1[f], [f, g], "s1(gf) = s1(f)")
    c += _compare("typing", C.b1[gf], C.b1[g], [f, g], "b1(gf) = b1(g)")
    x, y = np.nonzero(C.vcomp >= 0)
    v = C.vcomp[x, y]
    c += _compare("typing", C.s2[v], C.s2[x], [x, y], "s2 of a vertical composite")
    c += _compare("typing", C.b2[v], C.b2[y], [x, y], "b2 of a vertical composite")
    x, y = np.nonzero(C.hcomp >= 0)
    hz = C.hcomp[x, y]
    c += _compare("typing", C.s2[hz], C.comp1[C.s2[x], C.s2[y]], [x, y],
                  "s2 of a horizontal composite")
    c += _compare("typing", C.b2[hz], C.comp1[C.b2[x], C.b2[y]], [x, y],
                  "b2 of a horizontal composite")
    f, g, h = C.composable_triples()
    A = C.assoc[f, g, h]
    c += _compare("typing", _safe(C.s2, A), C.comp1[f, C.comp1[g, h]], [f, g, h],
                  "source of A(f,g,h) is (hg)f")
    c += _compare("typing", _safe(C.b2, A), C.comp1[C.comp1[f, g], h], [f, g, h],
                  "target of A(f,g,h) is h(gf)")
    c += _compare("typing", C.s2[C.U], C.comp1[C.e1[C.s1[a]], a], [a], "source of U(f) is f I")
    c += _compare("typing", C.b2[C.U], a, [a], "target of U(f) is f")
    c += _compare("typing", C.s2[C.V], C.comp1[a, C.e1[C.b1[a]]], [a], "source of V(f) is I f")
    c += _compare("typing", C.b2[C.V], a, [a], "target of V(f) is f")
    # (2) first: the later axioms compose vertically
    x, y = np.nonzero(C.vcomp >= 0)
    li, z = expand_join(C.b2[y], C.s2)
    X, Y = x[li], y[li]
    c += _compare("2", C.vcomp[C.vcomp[X, Y], z], C.vcomp[X, C.vcomp[Y, z]], [X, Y, z],
                  "vertical composition is associative")
    c += _compare("2", C.vcomp[C.e2[C.s2[t]], t], t, [t], "left identity for vertical composition")
    c += _compare("2", C.vcomp[t, C.e2[C.b2[t]]], t, [t], "right identity for vertical composition")
    inv = C.inverse2()
    for nm, cells, cols in (("A", A, [f, g, h]), ("U", C.U, [a]), ("V", C.V, [a])):
        bad = inv[cells] < 0
        if np.any(bad):
            k = int(np.nonzero(bad)[0][0])
            raise _Fail("invertibility", [int(cc[k]) for cc in cols], f"{nm} is not invertible")
    return c


def _axioms(C: Weak2Category) -> int:
    c = 0
    V_, H_ = C.vcomp, C.hcomp
    I2 = C.e2
    A = C.assoc

    def vt(a, b):
        return _safe(V_, a, b)

    def hz(a, b):
        return _safe(H_, a, b)

    def c1(f, g):
        return _safe(C.comp1, f, g)

    def ax(f, g, h):
        return _safe(A, f, g, h)

    # (1) pentagon over composable quadruples
    f, g, h = C.composable_triples()
    li, k = expand_join(C.b1[h], C.s1)
    f4, g4, h4 = f[li], g[li], h[li]
    gf, hg, kh = c1(f4, g4), c1(g4, h4), c1(h4, k)
    lhs = vt(ax(f4, g4, kh), ax(gf, h4, k))
    rhs = vt(vt(hz(I2[f4], ax(g4, h4, k)), ax(f4, hg, k)), hz(ax(f4, g4, h4), I2[k]))
    c += _compare("1", lhs, rhs, [f4, g4, h4, k])
    # (3) Godement
    a1, a2 = np.nonzero(V_ >= 0)                    # a1 then a2 vertically
    li, rj = expand_join(C.b1[C.s2[a1]], C.s1[C.s2[a1]])
    al, al2, be, be2 = a1[li], a2[li], a1[rj], a2[rj]
    c += _compare("3", hz(vt(al, al2), vt(be, be2)), vt(hz(al, be), hz(al2, be2)),
                  [al, al2, be, be2])
    # (4), (5) unitor naturality
    t = np.arange(C.n2)
    fa, ga = C.s2[t], C.b2[t]
    x, y = C.s1[fa], C.b1[fa]
    c += _compare("4", vt(hz(t, I2[C.e1[y]]), C.V[ga]), vt(C.V[fa], t), [t])
    c += _compare("5", vt(hz(I2[C.e1[x]], t), C.U[ga]), vt(C.U[fa], t), [t])
    # (6)
    o = np.arange(C.n0)
    c += _compare("6", C.V[C.e1[o]], C.U[C.e1[o]], [o])
    f, g = C.composable1()
    c += _compare("6", hz(I2[f], I2[g]), I2[C.comp1[f, g]], [f, g])
    # (7) associator naturality over horizontally composable triples of 2-cells
    p, q = np.nonzero(H_ >= 0)
    li, r = expand_join(C.b1[C.s2[q]], C.s1[C.s2])
    P, Q = p[li], q[li]
    F, G, Hh = C.s2[P], C.s2[Q], C.s2[r]
    F2, G2, H2 = C.b2[P], C.b2[Q], C.b2[r]
    lhs = vt(hz(P, hz(Q, r)), ax(F2, G2, H2))
    rhs = vt(ax(F, G, Hh), hz(hz(P, Q), r))
    c += _compare("7", lhs, rhs, [P, Q, r])
    # (8), (9), (10) triangle-type identities
    f, g = C.composable1()
    y = C.b1[f]
    x = C.s1[f]
    z = C.b1[g]
    c += _compare("8", vt(ax(f, C.e1[y], g), hz(C.V[f], I2[g])), hz(I2[f], C.U[g]), [f, g])
    c += _compare("9", vt(ax(C.e1[x], f, g), hz(C.U[f], I2[g])), C.U[C.comp1[f, g]], [f, g])
    c += _compare("10", vt(ax(f, g, C.e1[z]), C.V[C.comp1[f, g]]), hz(I2[f], C.V[g]), [f, g])
    return c


# ---------------------------------------------------------------------------
# double nerve


class _Layout:
    """Column layout of a double-nerve cell at ``(m, n)``.

    ``x_0..x_m``, then ``f^a_ij`` for every column ``a``, then the consecutive
    ``lam^{a,a+1}_ij``, then ``eps^a_ijk``; pairs and triples in lexicographic order.
    """

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.pairs = list(combinations(range(m + 1), 2))
        self.triples = list(combinations(range(m + 1), 3))
        self.pidx = {p: i for i, p in enumerate(self.pairs)}
        self.tidx = {t: i for i, t in enumerate(self.triples)}
        P, T = len(self.pairs), len(self.triples)
        self.P, self.T = P, T
        self.f0 = m + 1
        self.l0 = self.f0 + (n + 1) * P
        self.e0 = self.l0 + n * P
        self.width = self.e0 + (n + 1) * T

    def x(self, i):
        return i

    def f(self, a, i, j):
        return self.f0 + a * self.P + self.pidx[(i, j)]

    def lam(self, a, i, j):
        return self.l0 + a * self.P + self.pidx[(i, j)]

    def eps(self, a, i, j, k):
        return self.e0 + a * self.T + self.tidx[(i, j, k)]


def _branch(state: dict, key_rows: np.ndarray, key_cands: np.ndarray, cands: np.ndarray,
            what: str) -> tuple[dict, np.ndarray]:
    li, rj = expand_join(key_rows, key_cands)
    check_budget(what, float(li.size))
    return {k: v[li] for k, v in state.items()}, cands[rj]


def _filter(state: dict, mask: np.ndarray) -> dict:
    return {k: v[mask] for k, v in state.items()}


def _tetra_ok(C: Weak2Category, st: dict, a, b, c, d) -> np.ndarray:
    f, g, h = st[("f", a, b)], st[("f", b, c)], st[("f", c, d)]
    lhs = _safe(C.vcomp, _safe(C.hcomp, C.e2[f], st[("e", b, c, d)]), st[("e", a, b, d)])
    rhs = _safe(C.vcomp, _safe(C.vcomp, _safe(C.assoc, f, g, h),
                               _safe(C.hcomp, st[("e", a, b, c)], C.e2[h])),
                st[("e", a, c, d)])
    return (lhs == rhs) & (lhs >= 0)


def _columns(C: Weak2Category, m: int) -> np.ndarray:
    """``Phi(m, 0)``: objects, 1-cells ``f_ij`` and coherent invertible ``eps_ijk``."""
    L = _Layout(m, 0)
    if m == 0:
        return np.arange(C.n0, dtype=np.int64).reshape(-1, 1)
    chain = np.arange(C.n1, dtype=np.int64).reshape(-1, 1)
    for _ in range(m - 1):
        check_budget(f"double nerve column ({m},0)", chain.shape[0] * C.n1)
        li, rj = expand_join(C.b1[chain[:, -1]], C.s1)
        chain = np.concatenate([chain[li], rj.reshape(-1, 1)], axis=1)
    st = {("f", i, i + 1): chain[:, i] for i in range(m)}
    inv = C.inverse2()
    inv_ids = np.nonzero(inv >= 0)[0].astype(np.int64)
    done = set()
    n1 = C.n1
    for k in range(2, m + 1):
        for i in range(k - 2, -1, -1):
            for j in range(i + 1, k):
                src = C.comp1[st[("f", i, j)], st[("f", j, k)]]
                if j == i + 1:
                    st, new = _branch(st, src, C.s2[inv_ids], inv_ids,
                                      f"double nerve column ({m},0)")
                    st[("e", i, j, k)] = new
                    st[("f", i, k)] = C.b2[new]
                else:
                    key = src * n1 + st[("f", i, k)]
                    st, new = _branch(st, key, C.s2[inv_ids] * n1 + C.b2[inv_ids], inv_ids,
                                      f"double nerve column ({m},0)")
                    st[("e", i, j, k)] = new
                done.add((i, j, k))
                for a, b, c, d in combinations(range(m + 1), 4):
                    faces = {(a, b, c), (a, b, d), (a, c, d), (b, c, d)}
                    if (i, j, k) in faces and faces <= done:
                        st = _filter(st, _tetra_ok(C, st, a, b, c, d))
    cnt = st[("f", 0, 1)].size
    rows = np.zeros((cnt, L.width), dtype=np.int64)
    rows[:, 0] = C.s1[st[("f", 0, 1)]]
    for i in range(1, m + 1):
        rows[:, i] = C.b1[st[("f", i - 1, i)]]
    for (i, j) in L.pairs:
        rows[:, L.f(0, i, j)] = st[("f", i, j)]
    for (i, j, k) in L.triples:
        rows[:, L.eps(0, i, j, k)] = st[("e", i, j, k)]
    return rows[np.lexsort(rows.T[::-1])] if cnt else rows


def _squares(C: Weak2Category, m: int, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``Phi(m, 1)`` as ``(c0, c1, lam)``: two columns and all ``lam_ij`` satisfying (i)."""
    L0 = _Layout(m, 0)
    xk = joint_keys(*[cols[:, i] for i in range(m + 1)]) if cols.shape[0] else \
        np.zeros(0, dtype=np.int64)
    c0, c1 = expand_join(xk, xk)
    if m == 0:
        return c0, c1, np.zeros((c0.size, 0), dtype=np.int64)
    st = {"c0": c0, "c1": c1}
    n1 = C.n1
    cells = np.arange(C.n2, dtype=np.int64)
    lam = {}
    for i in range(m):
        fx = cols[st["c0"], L0.f(0, i, i + 1)]
        fy = cols[st["c1"], L0.f(0, i, i + 1)]
        st, new = _branch({**st, **{("l", p): v for p, v in lam.items()}},
                          fx * n1 + fy, C.s2 * n1 + C.b2, cells, f"double nerve square ({m},1)")
        lam = {p: st.pop(("l", p)) for p in list(lam)}
        lam[(i, i + 1)] = new
    inv = C.inverse2()
    X, Y = st["c0"], st["c1"]
    for length in range(2, m + 1):
        for i in range(0, m + 1 - length):
            k = i + length
            ex = cols[X, L0.eps(0, i, i + 1, k)]
            ey = cols[Y, L0.eps(0, i, i + 1, k)]
            mid = _safe(C.hcomp, lam[(i, i + 1)], lam[(i + 1, k)])
            lam[(i, k)] = _safe(C.vcomp, inv[ex], _safe(C.vcomp, mid, ey))
    ok = np.ones(X.size, dtype=bool)
    for (i, k) in L0.pairs:
        ok &= lam[(i, k)] >= 0
    for (i, j, k) in L0.triples:
        ex = cols[X, L0.eps(0, i, j, k)]
        ey = cols[Y, L0.eps(0, i, j, k)]
        lhs = _safe(C.vcomp, ex, lam[(i, k)])
        rhs = _safe(C.vcomp, _safe(C.hcomp, lam[(i, j)], lam[(j, k)]), ey)
        ok &= (lhs == rhs) & (lhs >= 0)
    lam_arr = np.stack([lam[p] for p in L0.pairs], axis=1)
    return X[ok], Y[ok], lam_arr[ok]


def _assemble(m: int, n: int, cols: np.ndarray, colidx: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """Full rows from column indices ``(cnt, n+1)`` and consecutive lams ``(cnt, n, P)``."""
    L, L0 = _Layout(m, n), _Layout(m, 0)
    cnt = colidx.shape[0]
    rows = np.zeros((cnt, L.width), dtype=np.int64)
    rows[:, :m + 1] = cols[colidx[:, 0], :m + 1]
    for a in range(n + 1):
        block = cols[colidx[:, a]]
        rows[:, L.f0 + a * L.P: L.f0 + (a + 1) * L.P] = block[:, L0.f0:L0.f0 + L.P]
        rows[:, L.e0 + a * L.T: L.e0 + (a + 1) * L.T] = block[:, L0.e0:L0.e0 + L.T]
    for a in range(n):
        rows[:, L.l0 + a * L.P: L.l0 + (a + 1) * L.P] = lams[:, a, :]
    return rows


def _double_rows(C: Weak2Category, region: Region) -> dict:
    rows = {}
    by_m: dict = {}
    for (m, n) in region.indices():
        by_m.setdefault(m, []).append(n)
    for m, ns in sorted(by_m.items()):
        cols = _columns(C, m)
        top = max(ns)
        if top >= 1:
            c0, c1, lam = _squares(C, m, cols)
        for n in sorted(ns):
            if n == 0:
                rows[(m, 0)] = cols
                continue
            colidx = np.stack([c0, c1], axis=1)
            lams = lam[:, None, :]
            for _ in range(n - 1):
                check_budget(f"double nerve ({m},{n})",
                             colidx.shape[0] * c0.size / max(1, cols.shape[0]))
                li, rj = expand_join(colidx[:, -1], c0)
                colidx = np.concatenate([colidx[li], c1[rj].reshape(-1, 1)], axis=1)
                lams = np.concatenate([lams[li], lam[rj][:, None, :]], axis=1)
            rows[(m, n)] = _assemble(m, n, cols, colidx, lams)
    return rows


def _face1(C: Weak2Category, m: int, n: int, a: int, r: np.ndarray) -> np.ndarray:
    """Drop vertex ``a`` of ``[m]``: pure column selection."""
    L, L2 = _Layout(m, n), _Layout(m - 1, n)
    keep = [v for v in range(m + 1) if v != a]
    out = np.empty((r.shape[0], L2.width), dtype=np.int64)
    for i2, i in enumerate(keep):
        out[:, i2] = r[:, i]
    for (i2, j2) in L2.pairs:
        i, j = keep[i2], keep[j2]
        for al in range(n + 1):
            out[:, L2.f(al, i2, j2)] = r[:, L.f(al, i, j)]
        for al in range(n):
            out[:, L2.lam(al, i2, j2)] = r[:, L.lam(al, i, j)]
    for (i2, j2, k2) in L2.triples:
        for al in range(n + 1):
            out[:, L2.eps(al, i2, j2, k2)] = r[:, L.eps(al, keep[i2], keep[j2], keep[k2])]
    return out


def _degen1(C: Weak2Category, m: int, n: int, a: int, r: np.ndarray) -> np.ndarray:
    """Repeat vertex ``a`` of ``[m]``: identities, unitors where an edge collapses."""
    L, L2 = _Layout(m, n), _Layout(m + 1, n)
    th = [v if v <= a else v - 1 for v in range(m + 2)]
    out = np.empty((r.shape[0], L2.width), dtype=np.int64)
    for i2 in range(m + 2):
        out[:, i2] = r[:, th[i2]]
    for (i2, j2) in L2.pairs:
        i, j = th[i2], th[j2]
        for al in range(n + 1):
            out[:, L2.f(al, i2, j2)] = C.e1[r[:, i]] if i == j else r[:, L.f(al, i, j)]
        for al in range(n):
            out[:, L2.lam(al, i2, j2)] = C.e2[C.e1[r[:, i]]] if i == j else r[:, L.lam(al, i, j)]
    for (i2, j2, k2) in L2.triples:
        i, j, k = th[i2], th[j2], th[k2]
        for al in range(n + 1):
            if i == j:
                col = C.U[r[:, L.f(al, j, k)]]
            elif j == k:
                col = C.V[r[:, L.f(al, i, j)]]
            else:
                col = r[:, L.eps(al, i, j, k)]
            out[:, L2.eps(al, i2, j2, k2)] = col
    return out


def _face2(C: Weak2Category, m: int, n: int, a: int, r: np.ndarray) -> np.ndarray:
    """Drop column ``a``; an interior drop composes the two lams vertically."""
    L, L2 = _Layout(m, n), _Layout(m, n - 1)
    keep = [v for v in range(n + 1) if v != a]
    out = np.empty((r.shape[0], L2.width), dtype=np.int64)
    out[:, :m + 1] = r[:, :m + 1]
    for b2, b in enumerate(keep):
        out[:, L2.f0 + b2 * L.P: L2.f0 + (b2 + 1) * L.P] = r[:, L.f0 + b * L.P: L.f0 + (b + 1) * L.P]
        out[:, L2.e0 + b2 * L.T: L2.e0 + (b2 + 1) * L.T] = r[:, L.e0 + b * L.T: L.e0 + (b + 1) * L.T]
    for b2 in range(n - 1):
        lo, hi = keep[b2], keep[b2 + 1]
        for p in L.pairs:
            if hi == lo + 1:
                col = r[:, L.lam(lo, *p)]
            else:
                col = C.vcomp[r[:, L.lam(lo, *p)], r[:, L.lam(lo + 1, *p)]]
            out[:, L2.lam(b2, *p)] = col
    return out


def _degen2(C: Weak2Category, m: int, n: int, a: int, r: np.ndarray) -> np.ndarray:
    """Repeat column ``a``; the new lam is the identity 2-cell."""
    L, L2 = _Layout(m, n), _Layout(m, n + 1)
    th = [v if v <= a else v - 1 for v in range(n + 2)]
    out = np.empty((r.shape[0], L2.width), dtype=np.int64)
    out[:, :m + 1] = r[:, :m + 1]
    for b2 in range(n + 2):
        b = th[b2]
        out[:, L2.f0 + b2 * L.P: L2.f0 + (b2 + 1) * L.P] = r[:, L.f0 + b * L.P: L.f0 + (b + 1) * L.P]
        out[:, L2.e0 + b2 * L.T: L2.e0 + (b2 + 1) * L.T] = r[:, L.e0 + b * L.T: L.e0 + (b + 1) * L.T]
    for b2 in range(n + 1):
        for p in L.pairs:
            if th[b2] == th[b2 + 1]:
                col = C.e2[r[:, L.f(th[b2], *p)]]
            else:
                col = r[:, L.lam(th[b2], *p)]
            out[:, L2.lam(b2, *p)] = col
    return out


def double_nerve(C: Weak2Category, D=None, labels: bool = True, check: bool = True) -> FinPresheaf:
    """The bisimplicial set of quadruple families, on the region ``D``."""
    if check:
        rep = validate_weak2(C)
        if not rep.ok:
            raise Weak2Error(f"invalid weak 2-category: axiom {rep.axiom} at {rep.tuple} "
                             f"({rep.detail})")
    region = Region.coerce(2, D)
    rows = _double_rows(C, region)

    def act(key, r):
        kind, k, i, (m, n) = key
        if k == 1:
            return (_face1 if kind == "d" else _degen1)(C, m, n, i, r)
        return (_face2 if kind == "d" else _degen2)(C, m, n, i, r)

    labs = None
    if labels:
        labs = {}
        for (m, n), r in rows.items():
            L = _Layout(m, n)
            if m == 0:
                labs[(m, n)] = [str(C.labels0[x]) for x in r[:, 0]]
            elif m == 1 and n == 0:
                labs[(m, n)] = [str(C.labels1[x]) for x in r[:, L.f(0, 0, 1)]]
            elif m == 1 and n == 1:
                labs[(m, n)] = [str(C.labels2[x]) for x in r[:, L.lam(0, 0, 1)]]
    small = {M: r for M, r in rows.items()}
    phi = build_from_rows(2, region, small, act, labels=labs,
                          name=f"N2({C.name})" if C.name else "double_nerve",
                          meta={"origin": "double_nerve", "weak2": C.name})
    return phi


def cell_data(phi: FinPresheaf, M, cell: int) -> dict:
    """Decode a double-nerve cell into its families ``x, f, lam, eps``."""
    m, n = M
    L = _Layout(m, n)
    r = phi.rows(M)[cell]
    return {"x": r[:m + 1].tolist(),
            "f": {f"{a}:{i}{j}": int(r[L.f(a, i, j)]) for a in range(n + 1) for i, j in L.pairs},
            "lam": {f"{a}{a + 1}:{i}{j}": int(r[L.lam(a, i, j)]) for a in range(n)
                    for i, j in L.pairs},
            "eps": {f"{a}:{i}{j}{k}": int(r[L.eps(a, i, j, k)]) for a in range(n + 1)
                    for i, j, k in L.triples}}


# ---------------------------------------------------------------------------
# extraction of a weak 2-category from a 2-nerve


class ExtractionError(Weak2Error):
    pass


class _Sections:
    """Canonical choices ``L_m`` on ``Phi(m, 0)`` and the comparison cells ``a_m``."""

    def __init__(self, phi: FinPresheaf, klass: np.ndarray, iso2: np.ndarray, order: str):
        self.phi = phi
        self.klass = klass
        self.iso2 = iso2
        self.order = order
        self._idx: dict = {}

    def spine(self, m: int) -> np.ndarray:
        phi = self.phi
        return np.stack([phi.on_axis((m, 0), 1, dc.edge(m, a, a + 1)) for a in range(m)], axis=1)

    def _index(self, m: int):
        if m not in self._idx:
            sp = self.spine(m)
            cnt = sp.shape[0]
            perm = np.arange(cnt) if self.order == "min" else np.arange(cnt)[::-1]
            exact = RowIndex(sp[perm])
            klass = RowIndex(self.klass[sp[perm]])
            self._idx[m] = (sp, perm, exact, klass)
        return self._idx[m]

    def choose(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        m = X.shape[1]
        sp, perm, exact, klass = self._index(m)
        pos = exact.find(X)
        miss = pos < 0
        if np.any(miss):
            pos[miss] = klass.find(self.klass[X[miss]])
        if np.any(pos < 0):
            bad = X[np.nonzero(pos < 0)[0][0]].tolist()
            raise ExtractionError(f"no {m}-simplex with spine isomorphic to {bad}")
        return perm[pos]

    def comparison(self, cells: np.ndarray, X: np.ndarray) -> np.ndarray:
        """``a_m``: componentwise chosen invertible 2-cells ``spine(L) => X``."""
        sp = self._index(X.shape[1])[0][cells]
        out = self.iso2[sp, X]
        if np.any(out < 0):
            raise ExtractionError("missing invertible comparison 2-cell")
        return out


def extract_weak2(phi: FinPresheaf, order: str = "min", check: bool = True) -> Weak2Category:
    """Read a weak 2-category off a 2-nerve.

    Uses ``Phi(0,0)``, ``Phi(1,0)``, ``Phi(1,1)`` as cells, ``Phi(1,2)`` for vertical
    composition, ``Phi(2,0)``/``Phi(3,0)`` with canonical sections for composition,
    unitors and associators, and ``Phi(2,1)`` to lift spine comparisons.
    """
    if phi.n != 2:
        raise ExtractionError("extraction needs an arity-2 presheaf")
    for M in ((3, 0), (2, 1), (1, 2)):
        if M not in phi.region:
            raise ExtractionError(f"extraction needs cells at ({fmt_index(M)})")
    if order not in ("min", "max"):
        raise ExtractionError("order must be 'min' or 'max'")
    n0, n1, n2 = phi.sizes[(0, 0)], phi.sizes[(1, 0)], phi.sizes[(1, 1)]
    s1, b1 = phi.action("d", 1, 1, (1, 0)), phi.action("d", 1, 0, (1, 0))
    e1 = phi.action("e", 1, 0, (0, 0))
    s2, b2 = phi.action("d", 2, 1, (1, 1)), phi.action("d", 2, 0, (1, 1))
    e2 = phi.action("e", 2, 0, (1, 0))
    # vertical composition via the (bijective) Segal map at (1, 2)
    v01 = phi.on_axis((1, 2), 2, dc.edge(2, 0, 1))
    v12 = phi.on_axis((1, 2), 2, dc.edge(2, 1, 2))
    v02 = phi.on_axis((1, 2), 2, dc.edge(2, 0, 2))
    vidx = RowIndex(np.stack([v01, v12], axis=1))
    a, b = np.nonzero(b2[:, None] == s2[None, :])
    cell = vidx.find(np.stack([a, b], axis=1))
    if np.any(cell < 0):
        t = int(np.nonzero(cell < 0)[0][0])
        raise ExtractionError(f"no vertical composite for 2-cells ({a[t]}, {b[t]})")
    vcomp = -np.ones((n2, n2), dtype=np.int64)
    vcomp[a, b] = v02[cell]
    # invertible 2-cells and the chosen comparisons iso2[p, f] : p => f
    inv = _inverses(vcomp, s2, b2, e2)
    S = _make_sections(phi, inv, s2, b2, e2, order)

    # lifting of spine comparisons through Phi(2,1)
    col0 = phi.on_axis((2, 1), 2, dc.vertex(1, 0))
    col1 = phi.on_axis((2, 1), 2, dc.vertex(1, 1))
    sq01 = phi.pull(dc.ProductMap((dc.edge(2, 0, 1), dc.identity(1))))
    sq12 = phi.pull(dc.ProductMap((dc.edge(2, 1, 2), dc.identity(1))))
    sq02 = phi.pull(dc.ProductMap((dc.edge(2, 0, 2), dc.identity(1))))
    lidx = RowIndex(np.stack([col0, col1, sq01, sq12], axis=1))

    def lift(sig, sig2, g0, g1):
        pos = lidx.find(np.stack([sig, sig2, g0, g1], axis=1))
        if np.any(pos < 0):
            t = int(np.nonzero(pos < 0)[0][0])
            raise ExtractionError(f"no (2,1)-cell lifting spine 2-cells ({g0[t]}, {g1[t]})")
        return sq02[pos]

    def vt(x, y):
        out = vcomp[x, y]
        if np.any(out < 0):
            raise ExtractionError("vertical composite undefined during extraction")
        return out

    d02 = phi.on_axis((2, 0), 1, dc.edge(2, 0, 2))
    sp2 = S.spine(2)
    # composition of 1-cells
    f, g = np.nonzero(b1[:, None] == s1[None, :])
    f, g = f.astype(np.int64), g.astype(np.int64)
    Lfg = S.choose(np.stack([f, g], axis=1))
    comp1 = -np.ones((n1, n1), dtype=np.int64)
    comp1[f, g] = d02[Lfg]
    # horizontal composition
    x, y = np.nonzero(b1[s2][:, None] == s1[s2][None, :])
    x, y = x.astype(np.int64), y.astype(np.int64)
    F, G, F2, G2 = s2[x], s2[y], b2[x], b2[y]
    sig = S.choose(np.stack([F, G], axis=1))
    sig2 = S.choose(np.stack([F2, G2], axis=1))
    a_s = S.comparison(sig, np.stack([F, G], axis=1))
    a_t = S.comparison(sig2, np.stack([F2, G2], axis=1))
    g0 = vt(vt(a_s[:, 0], x), inv[a_t[:, 0]])
    g1 = vt(vt(a_s[:, 1], y), inv[a_t[:, 1]])
    hcomp = -np.ones((n2, n2), dtype=np.int64)
    hcomp[x, y] = lift(sig, sig2, g0, g1)
    # unitors
    arr = np.arange(n1, dtype=np.int64)
    Ix, Iy = e1[s1[arr]], e1[b1[arr]]
    tauV = phi.action("e", 1, 1, (1, 0))
    XV = np.stack([arr, Iy], axis=1)
    sV = S.choose(XV)
    aV = S.comparison(sV, XV)
    Vc = lift(sV, tauV, aV[:, 0], aV[:, 1])
    tauU = phi.action("e", 1, 0, (1, 0))
    XU = np.stack([Ix, arr], axis=1)
    sU = S.choose(XU)
    aU = S.comparison(sU, XU)
    Uc = lift(sU, tauU, aU[:, 0], aU[:, 1])
    # associators
    assoc = -np.ones((n1, n1, n1), dtype=np.int64)
    li, h = expand_join(b1[g], s1)
    f3, g3, h3 = f[li], g[li], h.astype(np.int64)
    if f3.size:
        X3 = np.stack([f3, g3, h3], axis=1)
        T = S.choose(X3)
        aT = S.comparison(T, X3)
        faces = {i: phi.action("d", 1, i, (3, 0))[T] for i in range(4)}
        hg, gf = comp1[g3, h3], comp1[f3, g3]
        # eta1 : hg => d13(T), through L(g, h) and the face 123
        s_gh = S.choose(np.stack([g3, h3], axis=1))
        a_gh = S.comparison(s_gh, np.stack([g3, h3], axis=1))
        eta1 = lift(s_gh, faces[0], vt(a_gh[:, 0], inv[aT[:, 1]]),
                    vt(a_gh[:, 1], inv[aT[:, 2]]))
        # mu1 : (hg)f => d03(T), through L(f, hg) and the face 013
        s_f_hg = S.choose(np.stack([f3, hg], axis=1))
        a_f_hg = S.comparison(s_f_hg, np.stack([f3, hg], axis=1))
        mu1 = lift(s_f_hg, faces[2], vt(a_f_hg[:, 0], inv[aT[:, 0]]),
                   vt(a_f_hg[:, 1], eta1))
        # eta2 : gf => d02(T), through L(f, g) and the face 012
        s_fg = S.choose(np.stack([f3, g3], axis=1))
        a_fg = S.comparison(s_fg, np.stack([f3, g3], axis=1))
        eta2 = lift(s_fg, faces[3], vt(a_fg[:, 0], inv[aT[:, 0]]),
                    vt(a_fg[:, 1], inv[aT[:, 1]]))
        # nu : d03(T) => h(gf), from the face 023 to L(gf, h)
        s_gf_h = S.choose(np.stack([gf, h3], axis=1))
        a_gf_h = S.comparison(s_gf_h, np.stack([gf, h3], axis=1))
        inv_eta2 = inv[eta2]
        if np.any(inv_eta2 < 0):
            raise ExtractionError("comparison 2-cell is not invertible")
        nu = lift(faces[1], s_gf_h, vt(inv_eta2, inv[a_gf_h[:, 0]]),
                  vt(aT[:, 2], inv[a_gf_h[:, 1]]))
        assoc[f3, g3, h3] = vt(mu1, nu)
    out = Weak2Category(n0, n1, n2, s1, b1, e1, s2, b2, e2, comp1, vcomp, hcomp, assoc,
                        Uc, Vc, phi.label_list((0, 0)), phi.label_list((1, 0)),
                        phi.label_list((1, 1)), name=f"E({phi.name})" if phi.name else "")
    return out


def _make_sections(phi, inv, s2, b2, e2, order) -> _Sections:
    n1 = e2.size
    iso_cells = np.nonzero(inv >= 0)[0]
    iso2 = -np.ones((n1, n1), dtype=np.int64)
    for c in iso_cells[::-1]:
        iso2[s2[c], b2[c]] = c
    iso2[np.arange(n1), np.arange(n1)] = e2
    labels = uf_min_labels(n1, s2[iso_cells], b2[iso_cells])
    klass = np.searchsorted(np.unique(labels), labels).astype(np.int64)
    return _Sections(phi, klass, iso2, order)


def canonical_sections(phi: FinPresheaf, E: Weak2Category, order: str = "min") -> _Sections:
    """The sections ``L_m`` and comparisons ``a_m`` used by extraction, for reuse."""
    return _make_sections(phi, E.inverse2(), E.s2, E.b2, E.e2, order)


def _inverses(vcomp, s2, b2, e2) -> np.ndarray:
    n2 = s2.size
    inv = np.full(n2, -1, dtype=np.int64)
    a, b = np.nonzero((b2[:, None] == s2[None, :]) & (s2[:, None] == b2[None, :]))
    good = (vcomp[a, b] == e2[s2[a]]) & (vcomp[b, a] == e2[b2[a]])
    for x, y in zip(a[good][::-1], b[good][::-1]):
        inv[x] = y
    return inv


# ---------------------------------------------------------------------------
# strictification


@dataclass
class Strictification:
    extracted: Weak2Category
    strict: object
    S: FinPresheaf
    alpha: PresheafMorphism
    beta: PresheafMorphism


def spine_grid_morphism(phi: FinPresheaf, S: FinPresheaf, name: str = "") -> PresheafMorphism:
    """Send a cell to its grid of elementary sub-cells, located among the cells of ``S``.

    At ``M`` with first zero axis ``p`` the grid entry at position ``pi`` is the
    image of ``prod_k delta_{pi_k, pi_k + 1}`` (axes ``k < p``) and of the vertex 0
    on the remaining axes, a cell of ``Phi(I_{p-1}, 0)``.
    """
    from .strict_ncat import first_zero

    n = phi.n
    region = phi.region.intersect(S.region)
    comps = {}
    for M in region.indices():
        p = first_zero(M)
        shape = tuple(M[:p - 1])
        positions = list(np.ndindex(*shape)) if shape else [()]
        entries = []
        for pos in positions:
            parts = []
            for k in range(n):
                if k < p - 1:
                    parts.append(dc.edge(M[k], pos[k], pos[k] + 1))
                else:
                    parts.append(dc.vertex(M[k], 0))
            entries.append(phi.pull(dc.ProductMap(tuple(parts))))
        grid = np.stack(entries, axis=1) if entries else np.zeros((phi.sizes[M], 0), np.int64)
        loc = S.locate(M, grid) if phi.sizes[M] else np.zeros(0, dtype=np.int64)
        if loc.size and loc.min() < 0:
            bad = int(np.nonzero(loc < 0)[0][0])
            raise Weak2Error(f"grid of cell {bad} at ({fmt_index(M)}) is not a cell of the "
                             f"strict nerve")
        comps[M] = loc
    from .presheaf import restrict

    return PresheafMorphism(restrict(phi, region), restrict(S, region), comps, name=name)


def strictify(phi: FinPresheaf, order: str = "min") -> Strictification:
    """Strict 2-nerve ``S`` built from the extracted cells, with the grid maps
    ``alpha : Phi -> S`` and ``beta : N2(E) -> S``."""
    from .strict_ncat import multi_nerve, validate_strict

    E = extract_weak2(phi, order=order)
    strict = weak2_to_strict(E)
    rep = validate_strict(strict)
    if not rep.ok:
        raise Weak2Error(f"the extracted compositions are not strict: {rep.violation}")
    S = multi_nerve(strict, phi.region)
    alpha = spine_grid_morphism(phi, S, name="alpha")
    DE = double_nerve(E, phi.region)
    beta = spine_grid_morphism(DE, S, name="beta")
    return Strictification(E, strict, S, alpha, beta)


# ---------------------------------------------------------------------------
# comparison helpers used by tests and the CLI


def cell_maps(C: Weak2Category, phi: FinPresheaf) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For a double nerve: the input cells represented by the cells at (0,0), (1,0), (1,1)."""
    L10, L11 = _Layout(1, 0), _Layout(1, 1)
    obj = phi.rows((0, 0))[:, 0]
    one = phi.rows((1, 0))[:, L10.f(0, 0, 1)]
    two = phi.rows((1, 1))[:, L11.lam(0, 0, 1)]
    return obj, one, two


def second_axis_functoriality(C: Weak2Category, phi: FinPresheaf) -> Weak2Report:
    """For every monotone ``theta : [m'] -> [m]`` (m, m' <= 2) the induced maps on the
    second-axis data preserve identities and vertical composition."""
    checked = 0
    for m in range(0, 3):
        if (m, 2) not in phi.region:
            continue
        for mp in range(0, 3):
            for theta in dc.monotone_maps(mp, m):
                mu1 = dc.ProductMap((theta, dc.identity(1)))
                mu2 = dc.ProductMap((theta, dc.identity(2)))
                mu0 = dc.ProductMap((theta, dc.identity(0)))
                top = phi.pull(mu2)
                one = phi.pull(mu1)
                zero = phi.pull(mu0)
                comp = phi.on_axis((m, 2), 2, dc.edge(2, 0, 2))
                comp_p = phi.on_axis((mp, 2), 2, dc.edge(2, 0, 2))
                lhs = one[comp]
                rhs = comp_p[top]
                checked += lhs.size
                if not np.array_equal(lhs, rhs):
                    return Weak2Report(False, "functoriality", [m, mp, list(theta.values)],
                                       checked, "vertical composition not preserved")
                idl = phi.degenerate((m, 0), 2)
                idl_p = phi.degenerate((mp, 0), 2)
                if not np.array_equal(one[idl], idl_p[zero]):
                    return Weak2Report(False, "functoriality", [m, mp, list(theta.values)],
                                       checked, "identities not preserved")
    return Weak2Report(True, None, None, checked)


def transported_tables(C: Weak2Category, phi: FinPresheaf, E: Weak2Category) -> dict:
    """Compare the extraction ``E`` of ``double_nerve(C)`` with ``C`` through the cell
    bijections of :func:`cell_maps`: which structure tables agree exactly."""
    obj, one, two = cell_maps(C, phi)
    out = {"cells": bool(np.array_equal(np.sort(obj), np.arange(C.n0))
                         and np.array_equal(np.sort(one), np.arange(C.n1))
                         and np.array_equal(np.sort(two), np.arange(C.n2)))}
    if not out["cells"]:
        return out

    def same(tab_e, tab_c, maps, res):
        grids = np.nonzero(tab_e >= 0) if tab_e.ndim > 1 else (np.arange(tab_e.size),)
        img = tab_e[grids]
        lhs = res[img]
        rhs = tab_c[tuple(m[g] for m, g in zip(maps, grids))]
        return bool(np.array_equal(lhs, rhs)) and \
            int((tab_c >= 0).sum()) == int(img.size)

    out["globular"] = bool(np.array_equal(obj[E.s1], C.s1[one]) and
                           np.array_equal(obj[E.b1], C.b1[one]) and
                           np.array_equal(one[E.s2], C.s2[two]) and
                           np.array_equal(one[E.b2], C.b2[two]))
    out["comp1"] = same(E.comp1, C.comp1, (one, one), one)
    out["vcomp"] = same(E.vcomp, C.vcomp, (two, two), two)
    out["hcomp"] = same(E.hcomp, C.hcomp, (two, two), two)
    out["assoc"] = same(E.assoc, C.assoc, (one, one, one), two)
    out["unitors"] = bool(np.array_equal(two[E.U], C.U[one]) and
                          np.array_equal(two[E.V], C.V[one]))
    return out
