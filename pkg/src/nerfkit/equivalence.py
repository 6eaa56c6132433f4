"""Inner and outer k-equivalence.

A j-arrow of an arity-n presheaf is a cell of ``Phi(I_j, 0_{n-j})``; its
source and target are the two vertex faces along axis j.  Two parallel
(n-k)-arrows are inner k-equivalent when the class map ``t^k`` identifies them.

A morphism ``F`` is an outer k-equivalence when for every level
``h <= k``, every pair of parallel (n-h-1)-arrows ``u, v`` of the source and
every (n-h)-arrow ``w`` of the target running from ``F(u)`` to ``F(v)``,

* (a) some (n-h)-arrow ``x : u -> v`` has ``F(x)`` h-equivalent to ``w``, and
* (b) any two such ``x`` are h-equivalent;

at ``h = n`` this says that ``T^n F`` is a bijection.  Two routes are
implemented: the enumerative check above, and the characterisation through
the hom-class maps ``G^{u,v}`` of the component categories.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .presheaf import (FinPresheaf, PresheafError, PresheafMorphism, check_budget, fmt_index,
                       slice_morphism, slice_presheaf)
from .rows import RowIndex, expand_join, joint_keys
from .truncation import truncate_morphism, truncation_tower

MAX_WITNESSES = 16


def arrow_index(n: int, j: int) -> tuple[int, ...]:
    """``(I_j, 0_{n-j})``: where the j-arrows live."""
    return (1,) * j + (0,) * (n - j)


def arrows(phi: FinPresheaf, j: int) -> int:
    return phi.size(arrow_index(phi.n, j))


def arrow_source_target(phi: FinPresheaf, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Source and target of every j-arrow (as (j-1)-arrows); ``j >= 1``."""
    idx = arrow_index(phi.n, j)
    return phi.source(idx, j), phi.target(idx, j)


def parallel(phi: FinPresheaf, j: int, u, v) -> np.ndarray:
    """Elementwise: are the j-arrows ``u`` and ``v`` parallel?  (Always true for j = 0.)"""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if j == 0:
        return np.ones(np.broadcast(u, v).shape, dtype=bool)
    s, b = arrow_source_target(phi, j)
    return (s[u] == s[v]) & (b[u] == b[v])


def inner_equivalent(phi: FinPresheaf, k: int, u: int, v: int) -> bool:
    """Are the parallel (n-k)-arrows ``u`` and ``v`` k-equivalent?"""
    n = phi.n
    if not 0 <= k <= n:
        raise PresheafError(f"level {k} out of range for arity {n}")
    j = n - k
    if not bool(parallel(phi, j, u, v)):
        raise PresheafError(f"{j}-arrows {u} and {v} are not parallel")
    if k == 0:
        return int(u) == int(v)
    t = truncation_tower(phi, k).t(k, (1,) * j)
    return bool(t[u] == t[v])


def inner_classes(phi: FinPresheaf, k: int) -> np.ndarray:
    """``t^k`` on the (n-k)-arrows (class numbers in ``T^k Phi(I_{n-k})``)."""
    n = phi.n
    if k == 0:
        return np.arange(arrows(phi, n), dtype=np.int64)
    return truncation_tower(phi, k).t(k, (1,) * (n - k))


@dataclass
class EquivalenceReport:
    kind: str
    k: int
    verdict: bool
    witnesses: list = field(default_factory=list)
    hom_map_audit: list | None = None
    failures: int = 0

    def __bool__(self):
        return self.verdict

    def to_json(self):
        return {"kind": self.kind, "k": self.k, "verdict": self.verdict,
                "failures": self.failures, "witnesses": self.witnesses,
                "hom_map_audit": self.hom_map_audit}


def _witness(h, u, v, w, reason, **extra):
    rec = {"h": h, "u": None if u is None else int(u), "v": None if v is None else int(v),
           "w": None if w is None else int(w), "reason": reason}
    rec.update({k: (int(x) if isinstance(x, (np.integer, int)) else x) for k, x in extra.items()})
    return rec


def _sort_key(rec):
    return tuple(-1 if rec[k] is None else rec[k] for k in ("h", "u", "v", "w"))


def _level_check(F: PresheafMorphism, h: int, phi_classes, psi_classes) -> tuple[list, int]:
    """Witnesses of failure of the h-equivalence property for ``F``."""
    phi, psi = F.source, F.target
    n = F.n
    out: list = []
    if h == n:
        B = (0,) * n
        cls_f = psi_classes[F.components[B]]
        cls_x = phi_classes
        uk, first = np.unique(cls_f, return_index=True)
        missing = np.setdiff1d(np.unique(psi_classes), uk)
        for c in missing[:MAX_WITNESSES]:
            w = int(np.nonzero(psi_classes == c)[0][0])
            out.append(_witness(h, None, None, w, "existence"))
        pairs = np.unique(np.stack([cls_f, cls_x], axis=1), axis=0) if cls_f.size else \
            np.zeros((0, 2), dtype=np.int64)
        keys, counts = np.unique(pairs[:, 0], return_counts=True)
        bad = keys[counts > 1]
        for c in bad[:MAX_WITNESSES]:
            xs = np.nonzero(cls_f == c)[0]
            x = int(xs[0])
            y = int(xs[np.nonzero(cls_x[xs] != cls_x[x])[0][0]])
            out.append(_witness(h, None, None, int(F.components[B][x]), "uniqueness", x=x, y=y))
        return out, int(missing.size + bad.size)

    j = n - h                     # x, w are j-arrows; u, v are (j-1)-arrows
    A, B = arrow_index(n, j - 1), arrow_index(n, j)
    FA, FB = F.components[A], F.components[B]
    sx, bx = arrow_source_target(phi, j)
    sw, bw = arrow_source_target(psi, j)
    cls_f = psi_classes[FB]
    failures = 0
    # (b) uniqueness up to h-equivalence among lifts with the same key
    if sx.size:
        key = joint_keys(sx, bx, cls_f)
        pair = np.unique(np.stack([key, phi_classes], axis=1), axis=0)
        keys, counts = np.unique(pair[:, 0], return_counts=True)
        bad = keys[counts > 1]
        failures += int(bad.size)
        recs = []
        for kk in bad:
            xs = np.nonzero(key == kk)[0]
            x = int(xs[0])
            y = int(xs[np.nonzero(phi_classes[xs] != phi_classes[x])[0][0]])
            recs.append(_witness(h, sx[x], bx[x], FB[x], "uniqueness", x=x, y=y))
        out.extend(sorted(recs, key=_sort_key)[:MAX_WITNESSES])
    # (a) existence of a lift for every admissible (u, v, w)
    wi, ui = expand_join(sw, FA)
    check_budget(f"lift triples at level h={h}", float(wi.size) * max(1, FA.size))
    ti, vi = expand_join(bw[wi], FA)
    w_all, u_all, v_all = wi[ti], ui[ti], vi
    ok = parallel(phi, j - 1, u_all, v_all)
    w_all, u_all, v_all = w_all[ok], u_all[ok], v_all[ok]
    if w_all.size:
        wc = psi_classes[w_all]
        if sx.size:
            have = RowIndex(np.stack([sx, bx, cls_f], axis=1))
            miss = have.find(np.stack([u_all, v_all, wc], axis=1)) < 0
        else:
            miss = np.ones(w_all.size, dtype=bool)
        failures += int(miss.sum())
        if miss.any():
            order = np.lexsort((w_all[miss], v_all[miss], u_all[miss]))
            for t in order[:MAX_WITNESSES]:
                out.append(_witness(h, u_all[miss][t], v_all[miss][t], w_all[miss][t],
                                    "existence"))
    return out, failures


def is_outer_k_equivalence(F: PresheafMorphism, k: int, audit: bool = False,
                           stop_early: bool = False) -> EquivalenceReport:
    """Enumerative outer k-equivalence check; witnesses are ``(h, u, v, w, reason)``."""
    n = F.n
    if not 0 <= k <= n:
        raise PresheafError(f"level {k} out of range for arity {n}")
    nat = F.naturality()
    if not nat.ok:
        return EquivalenceReport("outer", k, False,
                                 [_witness(-1, None, None, None, "naturality",
                                           detail=nat.violation)], failures=1)
    phi, psi = F.source, F.target
    tphi = truncation_tower(phi, k) if k else None
    tpsi = truncation_tower(psi, k) if k else None
    witnesses: list = []
    failures = 0
    for h in range(k + 1):
        B = arrow_index(n, n - h)
        if h == 0:
            pc = np.arange(phi.size(B), dtype=np.int64)
            qc = np.arange(psi.size(B), dtype=np.int64)
        else:
            pc = tphi.t(h, (1,) * (n - h))
            qc = tpsi.t(h, (1,) * (n - h))
        recs, fails = _level_check(F, h, pc, qc)
        witnesses.extend(sorted(recs, key=_sort_key))
        failures += fails
        if fails and stop_early:
            break
    rep = EquivalenceReport("outer", k, failures == 0, witnesses[:MAX_WITNESSES * 4],
                            failures=failures)
    if audit and k == n:
        rep.hom_map_audit = hom_class_maps(F).entries
    return rep


# ---------------------------------------------------------------------------
# the characterisation through component categories


@dataclass
class HomClassMaps:
    entries: list
    top_bijective: bool

    @property
    def all_bijective(self) -> bool:
        return self.top_bijective and all(e["bijective"] for e in self.entries)


def truncate_times(F: PresheafMorphism, times: int) -> PresheafMorphism:
    for _ in range(times):
        F = truncate_morphism(F)
    return F


def component_presheaf(phi: FinPresheaf, i: int) -> FinPresheaf:
    """``T^{n-i} Phi_{I_{i-1}}``: an arity-1 presheaf (objects, arrows, 2-simplices...)."""
    sl = slice_presheaf(phi, (1,) * (i - 1))
    return truncation_tower(sl, phi.n - i).levels[-1]


def hom_class_maps(F: PresheafMorphism) -> HomClassMaps:
    """``G^{u,v}`` for every component category ``C_i`` and every parallel pair ``u, v``."""
    n = F.n
    entries = []
    for i in range(1, n + 1):
        N = (1,) * (i - 1)
        Fi = truncate_times(slice_morphism(F, N), n - i)
        cp, cq = Fi.source, Fi.target
        so, bo = cp.source((1,), 1), cp.target((1,), 1)
        sq, bq = cq.source((1,), 1), cq.target((1,), 1)
        F0, F1 = Fi.components[(0,)], Fi.components[(1,)]
        n_obj = cp.sizes[(0,)]
        # objects of C_i are (i-1)-arrows: a hom set is only considered between
        # parallel ones (for i = 1 every pair qualifies)
        if i == 1:
            par = np.ones((n_obj, n_obj), dtype=bool)
        else:
            par = _parallel_objects(F.source, i - 1, n - i, n_obj)
        for u in range(n_obj):
            for v in range(n_obj):
                if not par[u, v]:
                    continue
                dom = np.nonzero((so == u) & (bo == v))[0]
                cod = np.nonzero((sq == F0[u]) & (bq == F0[v]))[0]
                img = F1[dom]
                inj = np.unique(img).size == img.size
                sur = np.unique(img).size == cod.size
                entries.append({"i": i, "u": u, "v": v, "injective": bool(inj),
                                "surjective": bool(sur), "bijective": bool(inj and sur)})
    top = truncate_times(F, n)
    comp = top.components[()]
    top_bij = (np.unique(comp).size == comp.size == top.target.sizes[()])
    return HomClassMaps(entries, bool(top_bij))


def _parallel_objects(phi: FinPresheaf, j: int, times: int, n_obj: int) -> np.ndarray:
    """Parallelism of the objects of ``C_{j+1}``: classes of j-arrows under ``t^times``.

    For an n-nerf the object set of ``C_{j+1}`` is the set of j-arrows itself
    (the constancy axiom makes the class map a bijection); parallelism is read
    off the j-arrows through a representative of each class.
    """
    idx = arrow_index(phi.n, j)
    if times:
        tw = truncation_tower(slice_presheaf(phi, (1,) * j), times)
        cls = tw.t(times, (0,))
    else:
        cls = np.arange(phi.size(idx), dtype=np.int64)
    reps = np.full(n_obj, -1, dtype=np.int64)
    for x in range(cls.size - 1, -1, -1):
        reps[cls[x]] = x
    s, b = arrow_source_target(phi, j)
    sr, br = s[reps], b[reps]
    return (sr[:, None] == sr[None, :]) & (br[:, None] == br[None, :])


def characterisation_verdict(F: PresheafMorphism) -> bool:
    """All ``G^{u,v}`` bijective and ``T^n F`` bijective."""
    return hom_class_maps(F).all_bijective


def morphism_summary(F: PresheafMorphism) -> dict:
    return {"source": F.source.name, "target": F.target.name, "region": F.region.to_json(),
            "components": {fmt_index(M): c.tolist() for M, c in sorted(F.components.items())}}
