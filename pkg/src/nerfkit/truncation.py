"""Truncation: replace the innermost categorical level by isomorphism classes.

For an arity-n presheaf ``Phi`` and an (n-1)-index ``N`` the last-axis slice
``Phi_N(m) = Phi(N, m)`` is (when 1-truncatable) a category; ``T Phi(N)`` is
its set of isomorphism classes of objects and ``t : Phi(N, 0) -> T Phi(N)``
the class map.  Classes are numbered by their least member.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import delta_core as dc
from ._core import uf_min_labels
from .cat_nerve import NerveReport, segal_bijectivity
from .presheaf import (FinPresheaf, PresheafError, PresheafMorphism, Region, fmt_index,
                       point_set)


class TruncationError(PresheafError):
    def __init__(self, message: str, level: int = 0, index=None, witness=None):
        self.level = level
        self.index = index
        self.witness = witness
        super().__init__(message)


@dataclass
class TruncReport:
    ok: bool
    level: int | None = None
    index: tuple | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "level": self.level,
                "index": None if self.index is None else fmt_index(self.index),
                "witness": self.witness}


def truncation_region(phi: FinPresheaf) -> Region:
    return phi.region.last_at_least(2)


def is_one_truncatable(phi: FinPresheaf) -> TruncReport:
    """Is every last-axis slice ``Phi_N`` a category (Segal bijective up to the bound)?"""
    if phi.n < 1:
        raise PresheafError("truncation needs arity >= 1")
    for N in phi.region.last_at_least(0).indices():
        rep: NerveReport = segal_bijectivity(phi, N)
        if not rep.ok:
            return TruncReport(False, 0, N, rep.witness)
    return TruncReport(True)


def iso_relation(phi: FinPresheaf, N) -> tuple[np.ndarray, np.ndarray]:
    """Invertible arrows of the category ``Phi_N``: returns ``(arrows, inverse)``.

    Read off ``Phi(N, 2)``: ``f`` is invertible with inverse ``g`` when the
    2-cells over ``(f, g)`` and ``(g, f)`` have identity long edges.
    """
    N = tuple(N)
    n = phi.n
    at2 = N + (2,)
    at1 = N + (1,)
    f = phi.on_axis(at2, n, dc.edge(2, 0, 1))
    g = phi.on_axis(at2, n, dc.edge(2, 1, 2))
    c = phi.on_axis(at2, n, dc.edge(2, 0, 2))
    ident = phi.degenerate(N + (0,), n)
    src = phi.source(at1, n)
    unit = c == ident[src[f]]
    ff, gg = f[unit], g[unit]
    if ff.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    width = phi.sizes[at1]
    keys = ff * width + gg
    back = np.isin(gg * width + ff, keys)
    inv_f, inv_g = ff[back], gg[back]
    order = np.lexsort((inv_g, inv_f))
    inv_f, inv_g = inv_f[order], inv_g[order]
    first = np.r_[True, inv_f[1:] != inv_f[:-1]] if inv_f.size else np.zeros(0, dtype=bool)
    return inv_f[first], inv_g[first]


@dataclass
class Truncation:
    """``T Phi`` together with the class maps ``t[N] : Phi(N, 0) -> T Phi(N)``."""

    source: FinPresheaf
    presheaf: FinPresheaf
    class_map: dict = field(default_factory=dict)
    representatives: dict = field(default_factory=dict)


def truncate(phi: FinPresheaf) -> Truncation:
    """Compute ``T Phi`` (arity n-1) and the class maps; actions are checked well defined."""
    cached = phi._cache.get("truncate")
    if cached is not None:
        return cached
    if phi.n < 1:
        raise PresheafError("truncation needs arity >= 1")
    region = truncation_region(phi)
    if region.is_empty:
        raise TruncationError("truncation needs the last axis to reach degree 2")
    rep = is_one_truncatable(phi)
    if not rep.ok:
        raise TruncationError(f"not 1-truncatable at ({fmt_index(rep.index)}): {rep.witness}",
                              0, rep.index, rep.witness)
    n = phi.n
    class_map, reps, sizes, labels = {}, {}, {}, {}
    for N in region.indices():
        arrows, _inv = iso_relation(phi, N)
        at1 = N + (1,)
        lab = uf_min_labels(phi.sizes[N + (0,)], phi.source(at1, n, arrows),
                            phi.target(at1, n, arrows))
        r = np.unique(lab).astype(np.int64)
        class_map[N] = np.searchsorted(r, lab).astype(np.int64)
        reps[N] = r
        sizes[N] = int(r.size)
        labels[N] = [phi.label(N + (0,), int(x)) for x in r]
    if n == 1:
        out = point_set(sizes[()], labels[()],
                        name=f"T({phi.name})" if phi.name else "")
        out.data = {(): reps[()].reshape(-1, 1)}
    else:
        actions = {}
        for key, tgt in region.elementary_maps():
            kind, k, i, N = key
            full = phi.actions[(kind, k, i, N + (0,))]
            img = class_map[tgt][full]
            induced = img[reps[N]]
            if not np.array_equal(induced[class_map[N]], img):
                bad = int(np.nonzero(induced[class_map[N]] != img)[0][0])
                raise TruncationError(
                    f"induced action {kind}/{k}/{i}@{fmt_index(N)} is not well defined "
                    f"(cell {bad})", 0, N)
            actions[key] = induced
        out = FinPresheaf(n - 1, region, sizes, actions, labels=labels,
                          data={N: r.reshape(-1, 1) for N, r in reps.items()},
                          name=f"T({phi.name})" if phi.name else "",
                          meta={"truncation_of": phi.name})
    result = Truncation(phi, out, class_map, reps)
    phi._cache["truncate"] = result
    return result


def truncate_presheaf(phi: FinPresheaf) -> FinPresheaf:
    return truncate(phi).presheaf


def truncate_morphism(F: PresheafMorphism) -> PresheafMorphism:
    """``TF(t(x)) = t(F(N, 0)(x))``, checked well defined."""
    key = "truncate_morphism"
    if key in F._cache:
        return F._cache[key]
    ts, tt = truncate(F.source), truncate(F.target)
    region = ts.presheaf.region.intersect(tt.presheaf.region)
    comps = {}
    for N in region.indices():
        if N + (0,) not in F.region:
            continue
        img = tt.class_map[N][F.components[N + (0,)]]
        induced = img[ts.representatives[N]]
        if not np.array_equal(induced[ts.class_map[N]], img):
            raise TruncationError(f"TF not well defined at ({fmt_index(N)})", 0, N)
        comps[N] = induced
    G = PresheafMorphism(ts.presheaf, tt.presheaf, comps,
                         name=f"T({F.name})" if F.name else "TF")
    F._cache[key] = G
    return G


@dataclass
class TruncationTower:
    base: FinPresheaf
    levels: list = field(default_factory=list)
    steps: list = field(default_factory=list)

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    def level(self, h: int) -> FinPresheaf:
        return self.levels[h]

    def t(self, h: int, M=None) -> np.ndarray:
        """``t^h(M) : Phi(M, 0_h) -> T^h Phi(M)`` as an array."""
        if h > self.height:
            raise TruncationError(f"tower has height {self.height} < {h}")
        M = tuple(M) if M is not None else ()
        if h == 0:
            return np.arange(self.base.size(M), dtype=np.int64)
        out = None
        for j in range(h):
            cm = self.steps[j].class_map[M + (0,) * (h - 1 - j)]
            out = cm if out is None else cm[out]
        return out


def truncation_tower(phi: FinPresheaf, k: int) -> TruncationTower:
    """Levels ``T^0 Phi .. T^k Phi``; raises naming the first failing level and index."""
    if not 0 <= k <= phi.n:
        raise PresheafError(f"tower height {k} out of range for arity {phi.n}")
    key = ("tower", k)
    if key in phi._cache:
        return phi._cache[key]
    tower = TruncationTower(phi, [phi], [])
    cur = phi
    for h in range(k):
        try:
            tr = truncate(cur)
        except TruncationError as exc:
            raise TruncationError(f"level {h}: {exc}", h, exc.index, exc.witness) from None
        tower.steps.append(tr)
        cur = tr.presheaf
        tower.levels.append(cur)
    phi._cache[key] = tower
    return tower


def truncation_report(phi: FinPresheaf, k: int) -> TruncReport:
    try:
        truncation_tower(phi, k)
    except TruncationError as exc:
        return TruncReport(False, exc.level, exc.index, exc.witness)
    return TruncReport(True)


def is_truncatable(phi: FinPresheaf, k: int) -> bool:
    return truncation_report(phi, k).ok


def pi0(phi: FinPresheaf) -> FinPresheaf:
    """``T^n Phi``, an arity-0 presheaf (a finite set)."""
    return truncation_tower(phi, phi.n).levels[-1]


def pi0_labels(phi: FinPresheaf) -> list[str]:
    top = pi0(phi)
    return top.label_list(())
