"""Finite categories and their nerves (arity-1 presheaves with bijective Segal maps)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import delta_core as dc
from ._core import uf_min_labels
from .presheaf import (FinPresheaf, PresheafError, Region, ValidationReport, build_from_rows,
                       segal_map)


class CategoryError(ValueError):
    pass


@dataclass
class FinCategory:
    """Objects ``0..n_objects-1``, arrows ``0..n_arrows-1``.

    ``comp[f, g]`` is the composite ``gf`` ("f, then g") when ``tgt[f] == src[g]``
    and ``-1`` otherwise.
    """

    n_objects: int
    src: np.ndarray
    tgt: np.ndarray
    ident: np.ndarray
    comp: np.ndarray
    object_labels: list[str] = field(default_factory=list)
    arrow_labels: list[str] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.src = np.asarray(self.src, dtype=np.int64)
        self.tgt = np.asarray(self.tgt, dtype=np.int64)
        self.ident = np.asarray(self.ident, dtype=np.int64)
        self.comp = np.asarray(self.comp, dtype=np.int64).reshape(self.n_arrows, self.n_arrows)
        if not self.object_labels:
            self.object_labels = [str(x) for x in range(self.n_objects)]
        if not self.arrow_labels:
            self.arrow_labels = [f"a{f}" for f in range(self.n_arrows)]

    @property
    def n_arrows(self) -> int:
        return int(self.src.size)

    def composable(self) -> tuple[np.ndarray, np.ndarray]:
        f, g = np.nonzero(self.tgt[:, None] == self.src[None, :])
        return f.astype(np.int64), g.astype(np.int64)

    def hom(self, x: int, y: int) -> np.ndarray:
        return np.nonzero((self.src == x) & (self.tgt == y))[0]

    def validate(self) -> ValidationReport:
        n, a = self.n_objects, self.n_arrows
        if self.tgt.size != a or self.ident.size != n:
            return ValidationReport(False, 0, {"law": "shape"})
        for arr, lim, what in ((self.src, n, "src"), (self.tgt, n, "tgt"), (self.ident, a, "id")):
            if arr.size and (arr.min() < 0 or arr.max() >= lim):
                return ValidationReport(False, 0, {"law": f"{what} range"})
        if a and (self.comp.min() < -1 or self.comp.max() >= a):
            return ValidationReport(False, 0, {"law": "composition range"})
        ids = self.ident
        if n and (np.any(self.src[ids] != np.arange(n)) or np.any(self.tgt[ids] != np.arange(n))):
            x = int(np.nonzero((self.src[ids] != np.arange(n)) | (self.tgt[ids] != np.arange(n)))[0][0])
            return ValidationReport(False, 0, {"law": "identity typing", "object": x})
        f, g = self.composable()
        gf = self.comp[f, g]
        defined = self.comp >= 0
        mask = np.zeros((a, a), dtype=bool)
        mask[f, g] = True
        if np.any(defined != mask):
            bad = np.argwhere(defined != mask)[0]
            return ValidationReport(False, 0, {"law": "composition domain",
                                               "pair": [int(bad[0]), int(bad[1])]})
        bad = (self.src[gf] != self.src[f]) | (self.tgt[gf] != self.tgt[g])
        if np.any(bad):
            t = int(np.nonzero(bad)[0][0])
            return ValidationReport(False, 0, {"law": "composite typing",
                                               "pair": [int(f[t]), int(g[t])]})
        arrows = np.arange(a)
        left = self.comp[ids[self.src], arrows]
        right = self.comp[arrows, ids[self.tgt]]
        if np.any(left != arrows) or np.any(right != arrows):
            t = int(np.nonzero((left != arrows) | (right != arrows))[0][0])
            return ValidationReport(False, 0, {"law": "identity", "arrow": t})
        # associativity over composable triples
        li, h = np.nonzero(self.tgt[g][:, None] == self.src[None, :])
        ff, gg = f[li], g[li]
        lhs = self.comp[self.comp[ff, gg], h]
        rhs = self.comp[ff, self.comp[gg, h]]
        if np.any(lhs != rhs):
            t = int(np.nonzero(lhs != rhs)[0][0])
            return ValidationReport(False, int(li.size), {
                "law": "associativity", "triple": [int(ff[t]), int(gg[t]), int(h[t])]})
        return ValidationReport(True, int(li.size), None)

    def invertible(self) -> np.ndarray:
        """``inv[f]`` = an inverse of ``f`` (least index) or -1."""
        inv = np.full(self.n_arrows, -1, dtype=np.int64)
        f, g = self.composable()
        ok = (self.comp[f, g] == self.ident[self.src[f]]) & \
             (self.comp[g, f] == self.ident[self.tgt[f]])
        for a, b in zip(f[ok][::-1], g[ok][::-1]):
            inv[a] = b
        return inv

    def is_groupoid(self) -> bool:
        return bool(np.all(self.invertible() >= 0))


def category_from_tables(objects, arrows, ident, comp, name="") -> FinCategory:
    """Build from labelled data.

    ``arrows`` is a list of ``(label, src_label, tgt_label)``; ``ident`` maps
    object label to arrow label; ``comp`` maps ``(f_label, g_label)`` to the
    label of ``gf``.
    """
    obj = {o: i for i, o in enumerate(objects)}
    arr = {a[0]: i for i, a in enumerate(arrows)}
    src = [obj[a[1]] for a in arrows]
    tgt = [obj[a[2]] for a in arrows]
    ids = [arr[ident[o]] for o in objects]
    table = -np.ones((len(arrows), len(arrows)), dtype=np.int64)
    for (f, g), h in comp.items():
        table[arr[f], arr[g]] = arr[h]
    return FinCategory(len(objects), src, tgt, ids, table, list(map(str, objects)),
                       [str(a[0]) for a in arrows], name=name)


def group_category(table, labels=None, name="") -> FinCategory:
    """One-object category of a group (or monoid) given by ``table[a, b] = a*b``.

    The composite "f, then g" is ``g * f``; element 0 must be the unit.
    """
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    comp = table.T.copy()
    return FinCategory(1, np.zeros(n), np.zeros(n), [0], comp, ["*"],
                       labels or [f"g{i}" for i in range(n)], name=name)


# ---------------------------------------------------------------------------
# nerve


def nerve(C: FinCategory, D=None) -> FinPresheaf:
    """Chains of composable arrows, stored spine-first."""
    region = Region.coerce(1, D)
    if region.maxima()[0] < 2:
        raise PresheafError("nerve needs degree bound >= 2")
    rep = C.validate()
    if not rep.ok:
        raise CategoryError(f"invalid category: {rep.violation}")
    rows = {(0,): np.arange(C.n_objects, dtype=np.int64).reshape(-1, 1)}
    chain = np.arange(C.n_arrows, dtype=np.int64).reshape(-1, 1)
    for m in range(1, region.maxima()[0] + 1):
        if m > 1:
            last = C.tgt[chain[:, -1]]
            f_idx, g_idx = np.nonzero(last[:, None] == C.src[None, :])
            chain = np.concatenate([chain[f_idx], g_idx.reshape(-1, 1)], axis=1)
        rows[(m,)] = chain

    def vertex_object(r, m, i):
        return C.src[r[:, i]] if i < m else C.tgt[r[:, m - 1]]

    def act(key, r):
        kind, _, i, (m,) = key
        if kind == "d":
            if m == 1:
                return (C.tgt[r[:, 0]] if i == 0 else C.src[r[:, 0]]).reshape(-1, 1)
            if i == 0:
                return r[:, 1:]
            if i == m:
                return r[:, :-1]
            mid = C.comp[r[:, i - 1], r[:, i]].reshape(-1, 1)
            return np.concatenate([r[:, :i - 1], mid, r[:, i + 1:]], axis=1)
        if m == 0:
            return C.ident[r[:, 0]].reshape(-1, 1)
        ins = C.ident[vertex_object(r, m, i)].reshape(-1, 1)
        return np.concatenate([r[:, :i], ins, r[:, i:]], axis=1)

    labels = {(0,): list(C.object_labels)}
    for (m,), r in rows.items():
        if m >= 1:
            labels[(m,)] = (list(C.arrow_labels) if m == 1 else
                            ["(" + ",".join(C.arrow_labels[x] for x in row) + ")" for row in r])
    return build_from_rows(1, region, rows, act, labels=labels,
                           name=f"N({C.name})" if C.name else "nerve",
                           meta={"origin": "nerve", "segal_certified": "all degrees"})


@dataclass
class NerveReport:
    ok: bool
    certified_up_to: int
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "certified_up_to": self.certified_up_to, "witness": self.witness}


def segal_bijectivity(phi: FinPresheaf, M=(), n_rest_index=None) -> NerveReport:
    """Bijectivity of every Segal map ``delta^[m]`` at prefix ``M`` (last axis free)."""
    M = tuple(M)
    s = len(M)
    rest = () if n_rest_index is None else tuple(n_rest_index)
    top = max((N[s] for N in phi.region.indices() if N[:s] == M and N[s + 1:] == rest),
              default=-1)
    for m in range(2, top + 1):
        F = segal_map(phi, M, m)
        comp = F.components[rest]
        size_t = F.target.sizes[rest]
        uniq, first, counts = np.unique(comp, return_index=True, return_counts=True)
        if np.any(counts > 1):
            spine = int(uniq[np.nonzero(counts > 1)[0][0]])
            cells = np.nonzero(comp == spine)[0][:2].tolist()
            return NerveReport(False, m - 1, {"m": m, "kind": "injectivity",
                                              "cells": cells, "spine": spine})
        if uniq.size < size_t:
            missing = int(np.setdiff1d(np.arange(size_t), uniq)[0])
            return NerveReport(False, m - 1, {"m": m, "kind": "surjectivity",
                                              "spine": missing,
                                              "chain": F.target.rows(rest)[missing].tolist()})
    return NerveReport(True, max(top, 1), None)


def is_one_nerve(phi: FinPresheaf) -> NerveReport:
    """Are all Segal maps ``Phi(m) -> Phi(1) x ... x Phi(1)`` bijective (m <= bound)?"""
    if phi.n != 1:
        raise PresheafError("is_one_nerve expects an arity-1 presheaf")
    return segal_bijectivity(phi)


def extract_category(phi: FinPresheaf, name: str = "") -> FinCategory:
    """Objects ``Phi(0)``, arrows ``Phi(1)``, composition through the Segal inverse at 2."""
    if phi.n != 1:
        raise PresheafError("extract_category expects an arity-1 presheaf")
    if (2,) not in phi.region:
        raise PresheafError("composition needs cells of degree 2")
    F = segal_map(phi, (), 2)
    comp2 = F.components[()]
    if np.unique(comp2).size != comp2.size or comp2.size != F.target.sizes[()]:
        raise CategoryError("Segal map at degree 2 is not bijective")
    n_obj, n_arr = phi.sizes[(0,)], phi.sizes[(1,)]
    src = phi.action("d", 1, 1, (1,))
    tgt = phi.action("d", 1, 0, (1,))
    ident = phi.action("e", 1, 0, (0,))
    pairs = F.target.rows(())[comp2]
    d02 = phi.on_axis((2,), 1, dc.edge(2, 0, 2))
    comp = -np.ones((n_arr, n_arr), dtype=np.int64)
    comp[pairs[:, 0], pairs[:, 1]] = d02
    labels_o = phi.label_list((0,))
    labels_a = phi.label_list((1,))
    return FinCategory(n_obj, src, tgt, ident, comp, labels_o, labels_a,
                       name=name or phi.name)


@dataclass
class IsoClasses:
    """Quotient of objects by isomorphism; ``t[x]`` is the class number of ``x``."""

    t: np.ndarray
    representatives: np.ndarray

    @property
    def count(self) -> int:
        return int(self.representatives.size)


def iso_classes(C: FinCategory) -> IsoClasses:
    """Union-find quotient of the objects; classes numbered by least member."""
    inv = C.invertible()
    iso = np.nonzero(inv >= 0)[0]
    labels = uf_min_labels(C.n_objects, C.src[iso], C.tgt[iso])
    reps = np.unique(labels)
    t = np.searchsorted(reps, labels).astype(np.int64)
    return IsoClasses(t, reps.astype(np.int64))


def check_isomorphism(C: FinCategory, D: FinCategory, obj_map, arr_map) -> bool:
    """Do the given bijections commute with src, tgt, identities and composition?"""
    obj_map = np.asarray(obj_map, dtype=np.int64)
    arr_map = np.asarray(arr_map, dtype=np.int64)
    if C.n_objects != D.n_objects or C.n_arrows != D.n_arrows:
        return False
    if np.unique(obj_map).size != C.n_objects or np.unique(arr_map).size != C.n_arrows:
        return False
    if np.any(D.src[arr_map] != obj_map[C.src]) or np.any(D.tgt[arr_map] != obj_map[C.tgt]):
        return False
    if np.any(D.ident[obj_map] != arr_map[C.ident]):
        return False
    f, g = C.composable()
    return bool(np.all(D.comp[arr_map[f], arr_map[g]] == arr_map[C.comp[f, g]]))
