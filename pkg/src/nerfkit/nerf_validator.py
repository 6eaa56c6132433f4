"""The headline predicates: n-nerf, strict n-nerf, n-groupoid."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .equivalence import is_outer_k_equivalence
from .presheaf import FinPresheaf, PresheafError, fmt_index, segal_map, slice_presheaf
from .truncation import TruncationError, truncation_tower


@dataclass
class NerfReport:
    ok: bool
    axiom: str | None = None
    index: tuple | None = None
    detail: dict | None = None
    checks: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "axiom": self.axiom,
                "index": None if self.index is None else fmt_index(self.index),
                "detail": self.detail, "checks": self.checks}


def _prefixes(phi: FinPresheaf, s: int):
    """Pairs ``(M, m)``: ``M`` of length ``n-s-1`` with ``(M, m, 0_s)`` in the region."""
    n = phi.n
    seen = set()
    for idx in phi.region.indices():
        if all(c == 0 for c in idx[n - s:]):
            M, m = idx[:n - s - 1], idx[n - s - 1]
            if (M, m) not in seen:
                seen.add((M, m))
    return sorted(seen)


def is_constant(psi: FinPresheaf) -> tuple[bool, dict | None]:
    """Literal constancy: every cell set has the size at ``0``, every action is the identity."""
    zero = (0,) * psi.n
    size = psi.sizes[zero]
    for M in psi.region.indices():
        if psi.sizes[M] != size:
            return False, {"reason": "size", "index": fmt_index(M),
                           "size": psi.sizes[M], "expected": size}
    ident = np.arange(size, dtype=np.int64)
    for key, arr in sorted(psi.actions.items()):
        if not np.array_equal(arr, ident):
            kind, k, i, M = key
            return False, {"reason": "action", "key": f"{kind}/{k}/{i}@{fmt_index(M)}"}
    return True, None


def is_n_nerf(phi: FinPresheaf, stop_early: bool = True) -> NerfReport:
    """n-truncatability, then (C1) constancy of ``Phi_{M,0}`` and (C2) Segal maps are
    outer s-equivalences, for every ``1 <= s <= n-1`` and every in-bound ``(M, m)``."""
    n = phi.n
    if n < 1:
        return NerfReport(True, checks=["arity 0: a set"])
    try:
        truncation_tower(phi, n)
    except TruncationError as exc:
        return NerfReport(False, "truncatable", exc.index,
                          {"level": exc.level, "witness": exc.witness, "message": str(exc)})
    checks = [f"{n}-truncatable"]
    failure = None
    for s in range(1, n):
        for M, m in _prefixes(phi, s):
            if m == 0:
                ok, det = is_constant(slice_presheaf(phi, M + (0,)))
                checks.append(f"C1 s={s} M=({fmt_index(M)})")
                if not ok and failure is None:
                    failure = NerfReport(False, "C1", M, det)
            elif m >= 2:
                F = segal_map(phi, M, m)
                try:
                    rep = is_outer_k_equivalence(F, s, stop_early=True)
                    det = rep.to_json() if not rep.verdict else None
                    ok = rep.verdict
                except TruncationError as exc:
                    ok, det = False, {"message": str(exc), "level": exc.level}
                checks.append(f"C2 s={s} M=({fmt_index(M)}) m={m}")
                if not ok and failure is None:
                    failure = NerfReport(False, "C2", M + (m,), det)
            if failure is not None and stop_early:
                failure.checks = checks
                return failure
    if failure is not None:
        failure.checks = checks
        return failure
    return NerfReport(True, checks=checks)


def segal_family(phi: FinPresheaf):
    """Every Segal map ``(M, m)``: prefix ``M`` of any length ``< n``, ``m >= 2``."""
    n = phi.n
    keys = set()
    for idx in phi.region.indices():
        for s in range(n):
            if idx[s] >= 2 and all(c == 0 for c in idx[s + 1:]):
                keys.add((idx[:s], idx[s]))
    return sorted(keys, key=lambda t: (len(t[0]), t[0], t[1]))


def is_strict_nerf(phi: FinPresheaf) -> NerfReport:
    """Every Segal map is bijective at every index where it is defined."""
    checks = []
    for M, m in segal_family(phi):
        F = segal_map(phi, M, m)
        checks.append(f"segal M=({fmt_index(M)}) m={m}")
        for N in F.region.indices():
            comp = F.components[N]
            size_t = F.target.sizes[N]
            if np.unique(comp).size != comp.size:
                vals, counts = np.unique(comp, return_counts=True)
                spine = int(vals[counts > 1][0])
                cells = np.nonzero(comp == spine)[0][:2].tolist()
                return NerfReport(False, "strict", M + (m,) + N,
                                  {"kind": "injectivity", "cells": cells, "spine": spine},
                                  checks)
            if comp.size != size_t:
                missing = int(np.setdiff1d(np.arange(size_t), comp)[0])
                return NerfReport(False, "strict", M + (m,) + N,
                                  {"kind": "surjectivity", "spine": missing}, checks)
    return NerfReport(True, checks=checks)


def is_n_groupoid(phi: FinPresheaf) -> NerfReport:
    """n-nerf whose component categories ``C_1 .. C_n`` are groupoids."""
    from .homotopy import component_category

    rep = is_n_nerf(phi)
    if not rep.ok:
        return rep
    for i in range(1, phi.n + 1):
        try:
            C = component_category(phi, i)
        except PresheafError as exc:
            return NerfReport(False, "groupoid", None, {"i": i, "message": str(exc)})
        inv = C.invertible()
        if np.any(inv < 0):
            f = int(np.nonzero(inv < 0)[0][0])
            return NerfReport(False, "groupoid", None,
                              {"i": i, "arrow": f, "label": C.arrow_labels[f]},
                              rep.checks + [f"C_{i}"])
        rep.checks.append(f"C_{i} groupoid")
    return NerfReport(True, checks=rep.checks)
