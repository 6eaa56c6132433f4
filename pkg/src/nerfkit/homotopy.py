"""Component categories, homotopy groups, induced maps, and whiskering isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import delta_core as dc
from .cat_nerve import FinCategory, extract_category
from .equivalence import (arrow_index, component_presheaf, is_outer_k_equivalence,
                          truncate_times)
from .presheaf import (FinPresheaf, PresheafError, PresheafMorphism, slice_morphism,
                       slice_presheaf)
from .rows import RowIndex
from .truncation import truncation_tower


class HomotopyError(PresheafError):
    pass


def component_category(phi: FinPresheaf, i: int) -> FinCategory:
    """``C_i(Phi) = T^{n-i} Phi_{I_{i-1}}`` as a finite category."""
    if not 1 <= i <= phi.n:
        raise HomotopyError(f"component index {i} outside 1..{phi.n}")
    key = ("component_category", i)
    if key not in phi._cache:
        cp = component_presheaf(phi, i)
        name = f"C{i}({phi.name})" if phi.name else f"C{i}"
        phi._cache[key] = extract_category(cp, name=name)
    return phi._cache[key]


def quotient_composition(phi: FinPresheaf, i: int, order: str = "min") -> np.ndarray:
    """Composition of ``C_i`` computed straight from a chosen section.

    For each composable pair of classes the representative 2-simplex of
    ``Phi_{I_{i-1}}(2, 0, ..)`` is the least (``order='min'``) or greatest
    (``'max'``) cell whose spine lies over the pair; the composite is the class
    of its long edge.
    """
    n = phi.n
    if not 1 <= i <= n:
        raise HomotopyError(f"component index {i} outside 1..{n}")
    h = n - i
    sl = slice_presheaf(phi, (1,) * (i - 1))
    tw = truncation_tower(sl, h)
    t1 = tw.t(h, (1,))
    M2 = (2,) + (0,) * h
    a = t1[sl.on_axis(M2, 1, dc.edge(2, 0, 1))]
    b = t1[sl.on_axis(M2, 1, dc.edge(2, 1, 2))]
    c = t1[sl.on_axis(M2, 1, dc.edge(2, 0, 2))]
    n_arr = int(t1.max()) + 1 if t1.size else 0
    cells = np.arange(a.size)
    if order == "max":
        cells = cells[::-1]
    elif order != "min":
        raise HomotopyError("order must be 'min' or 'max'")
    keys = a[cells] * n_arr + b[cells]
    _, first = np.unique(keys, return_index=True)
    pick = cells[first]
    table = -np.ones((n_arr, n_arr), dtype=np.int64)
    table[a[pick], b[pick]] = c[pick]
    return table


# ---------------------------------------------------------------------------
# groups


@dataclass
class HomotopyGroup:
    """``pi_i(Phi, f) = Aut_{C_i}(f)``; ``table[x, y]`` is "x, then y" in positions."""

    i: int
    base: int
    elements: np.ndarray
    table: np.ndarray
    identity: int
    labels: list = field(default_factory=list)
    base_label: str = ""

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def check_group(self) -> bool:
        k = self.order
        T = self.table
        if T.shape != (k, k) or (k and (T.min() < 0 or T.max() >= k)):
            return False
        r = np.arange(k)
        if not (np.array_equal(T[self.identity], r) and np.array_equal(T[:, self.identity], r)):
            return False
        if not np.array_equal(T[T[:, :, None], r[None, None, :]],
                              T[r[:, None, None], T[None, :, :]]):
            return False
        return bool(np.all((T == self.identity).any(axis=1)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def to_json(self):
        return {"i": self.i, "base": self.base, "base_label": self.base_label,
                "order": self.order, "elements": list(map(str, self.labels)),
                "identity": self.identity, "table": self.table.tolist(),
                "abelian": self.is_abelian()}


def lift_basepoint(phi: FinPresheaf, cell: int, level: int, target_level: int) -> int:
    """``I^{target-level}_f``: iterated degeneracies from a level-arrow to a target-level arrow."""
    if level > target_level:
        raise HomotopyError("cannot lift a basepoint downwards")
    n = phi.n
    for d in range(level, target_level):
        cell = int(phi.degenerate(arrow_index(n, d), d + 1)[cell])
    return cell


def _aut_group(C: FinCategory, i: int, base: int) -> HomotopyGroup:
    if not 0 <= base < C.n_objects:
        raise HomotopyError(f"basepoint {base} is not an object of C_{i}")
    elems = C.hom(base, base)
    inv = C.invertible()
    if np.any(inv[elems] < 0):
        bad = int(elems[np.nonzero(inv[elems] < 0)[0][0]])
        raise HomotopyError(f"C_{i} is not a groupoid at the basepoint (arrow {C.arrow_labels[bad]})")
    pos = -np.ones(C.n_arrows, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    table = pos[C.comp[elems[:, None], elems[None, :]]]
    ident = int(pos[C.ident[base]])
    return HomotopyGroup(i, int(base), elems, table, ident,
                         [C.arrow_labels[e] for e in elems], C.object_labels[base])


def homotopy_group(phi: FinPresheaf, i: int, base: int, base_level: int | None = None) -> HomotopyGroup:
    """``pi_i(Phi, f)``; ``base`` is an (i-1)-arrow, or a lower arrow lifted by identities."""
    if not 1 <= i <= phi.n:
        raise HomotopyError(f"homotopy index {i} outside 1..{phi.n}")
    lvl = i - 1 if base_level is None else base_level
    nb = phi.size(arrow_index(phi.n, lvl))
    if not 0 <= base < nb:
        raise HomotopyError(f"no {lvl}-arrow {base}")
    cell = lift_basepoint(phi, base, lvl, i - 1)
    sl = slice_presheaf(phi, (1,) * (i - 1))
    obj = int(truncation_tower(sl, phi.n - i).t(phi.n - i, (0,))[cell])
    C = component_category(phi, i)
    if not C.is_groupoid():
        raise HomotopyError(f"C_{i} is not a groupoid")
    return _aut_group(C, i, obj)


def resolve_base(phi: FinPresheaf, i: int, label: str) -> tuple[int, int]:
    """Find ``(cell, level)`` for a basepoint label.

    An exact label among the (i-1)-arrows wins; otherwise leading ``I_``
    prefixes are stripped and the remaining label searched at lower levels.
    """
    n = phi.n
    want = i - 1
    labs = phi.label_list(arrow_index(n, want))
    if label in labs:
        return labs.index(label), want
    stripped = label
    while True:
        for lvl in range(want, -1, -1):
            labs = phi.label_list(arrow_index(n, lvl))
            if stripped in labs:
                return labs.index(stripped), lvl
        if stripped.startswith("I_"):
            stripped = stripped[2:]
            continue
        if stripped.isdigit() and int(stripped) < phi.size(arrow_index(n, want)):
            return int(stripped), want
        raise HomotopyError(f"basepoint {label!r} not found among arrows of level <= {want}")


def check_abelian(G: HomotopyGroup, i: int | None = None) -> bool:
    return G.is_abelian()


# ---------------------------------------------------------------------------
# induced maps


@dataclass
class GroupHom:
    source: HomotopyGroup
    target: HomotopyGroup
    mapping: np.ndarray          # positions in source -> positions in target

    @property
    def is_homomorphism(self) -> bool:
        m, S, T = self.mapping, self.source.table, self.target.table
        return bool(np.array_equal(m[S], T[m[:, None], m[None, :]]))

    @property
    def injective(self) -> bool:
        return bool(np.unique(self.mapping).size == self.mapping.size)

    @property
    def surjective(self) -> bool:
        return bool(np.unique(self.mapping).size == self.target.order)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_homomorphism and self.injective and self.surjective

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "mapping": self.mapping.tolist(), "homomorphism": self.is_homomorphism,
                "injective": self.injective, "surjective": self.surjective}


def component_functor(F: PresheafMorphism, i: int) -> tuple[np.ndarray, np.ndarray]:
    """``C_i(F)`` as (object map, arrow map)."""
    n = F.n
    Fi = truncate_times(slice_morphism(F, (1,) * (i - 1)), n - i)
    return Fi.components[(0,)], Fi.components[(1,)]


def induced_pi(F: PresheafMorphism, i: int, base: int) -> GroupHom:
    """``pi_i(F, f) : pi_i(Phi, f) -> pi_i(Psi, C_i(F)(f))``, homomorphism checked."""
    Cs, Ct = component_category(F.source, i), component_category(F.target, i)
    if not (Cs.is_groupoid() and Ct.is_groupoid()):
        raise HomotopyError(f"C_{i} of source or target is not a groupoid")
    F0, F1 = component_functor(F, i)
    G = _aut_group(Cs, i, base)
    H = _aut_group(Ct, i, int(F0[base]))
    pos = -np.ones(Ct.n_arrows, dtype=np.int64)
    pos[H.elements] = np.arange(H.order)
    mapping = pos[F1[G.elements]]
    if np.any(mapping < 0):
        raise HomotopyError("C_i(F) does not send automorphisms to automorphisms")
    return GroupHom(G, H, mapping)


@dataclass
class PiVerdict:
    verdict: bool
    pi0_bijective: bool
    failures: list = field(default_factory=list)
    outer: bool | None = None

    def __bool__(self):
        return self.verdict

    def to_json(self):
        return {"verdict": self.verdict, "pi0_bijective": self.pi0_bijective,
                "failures": self.failures, "outer_equivalence": self.outer}


def equivalence_via_pi(F: PresheafMorphism, compare: bool = True) -> PiVerdict:
    """All ``pi_i(F, f)`` isomorphisms and ``pi_0(F) = T^n F`` bijective; with ``compare``
    the enumerative outer n-equivalence verdict is computed alongside."""
    n = F.n
    failures = []
    top = truncate_times(F, n)
    comp = top.components[()]
    pi0_ok = bool(np.unique(comp).size == comp.size == top.target.sizes[()])
    if not pi0_ok:
        failures.append({"i": 0, "reason": "pi_0(F) not bijective"})
    for i in range(1, n + 1):
        Cs = component_category(F.source, i)
        for f in range(Cs.n_objects):
            hom = induced_pi(F, i, f)
            if not hom.is_isomorphism:
                failures.append({"i": i, "base": f, "base_label": Cs.object_labels[f],
                                 "homomorphism": hom.is_homomorphism,
                                 "injective": hom.injective, "surjective": hom.surjective})
    outer = is_outer_k_equivalence(F, n).verdict if compare else None
    return PiVerdict(not failures, pi0_ok, failures, outer)


# ---------------------------------------------------------------------------
# change of basepoint by whiskering


@dataclass
class WhiskerIso:
    tau: int
    f: int
    g: int
    h: int
    source: HomotopyGroup
    target: HomotopyGroup
    mapping: np.ndarray
    route: str

    def hom(self) -> GroupHom:
        return GroupHom(self.source, self.target, self.mapping)

    @property
    def is_isomorphism(self) -> bool:
        return self.hom().is_isomorphism

    def to_json(self):
        return {"tau": self.tau, "f": self.f, "g": self.g, "h": self.h, "route": self.route,
                "mapping": self.mapping.tolist(), "isomorphism": self.is_isomorphism}


def _square_index(phi: FinPresheaf):
    key = "whisker_square_index"
    if key not in phi._cache:
        col0 = phi.on_axis((2, 1), 2, dc.vertex(1, 0))
        col1 = phi.on_axis((2, 1), 2, dc.vertex(1, 1))
        sp01 = phi.pull(dc.ProductMap((dc.edge(2, 0, 1), dc.identity(1))))
        sp12 = phi.pull(dc.ProductMap((dc.edge(2, 1, 2), dc.identity(1))))
        long = phi.pull(dc.ProductMap((dc.edge(2, 0, 2), dc.identity(1))))
        phi._cache[key] = (RowIndex(np.stack([col0, col1, sp01, sp12], axis=1)), long)
    return phi._cache[key]


def whisker_iso(phi: FinPresheaf, tau: int, route: str = "lift", order: str = "min") -> WhiskerIso:
    """``L : pi_2(Phi, f) -> pi_2(Phi, h)`` for a 2-simplex ``tau`` with spine ``(f, g)``
    and long edge ``h``.

    ``route='lift'`` sends ``alpha`` to the long edge of the unique square from
    ``tau`` to itself with spine ``(alpha, I_g)``; ``route='conjugate'`` evaluates
    ``d02(mu) . (I_g * alpha) . d02(mu)^{-1}`` with ``mu`` the chosen comparison
    from the section ``L_2(f, g)`` (``order`` picks the section).
    """
    if phi.n != 2:
        raise HomotopyError("whiskering needs an arity-2 presheaf")
    if not 0 <= tau < phi.size((2, 0)):
        raise HomotopyError(f"{tau} is not a 2-simplex")
    f = int(phi.on_axis((2, 0), 1, dc.edge(2, 0, 1))[tau])
    g = int(phi.on_axis((2, 0), 1, dc.edge(2, 1, 2))[tau])
    h = int(phi.on_axis((2, 0), 1, dc.edge(2, 0, 2))[tau])
    src = homotopy_group(phi, 2, f)
    tgt = homotopy_group(phi, 2, h)
    C2 = component_category(phi, 2)
    Ig = int(phi.degenerate((1, 0), 2)[g])
    alphas = src.elements.astype(np.int64)
    if route == "lift":
        idx, long = _square_index(phi)
        k = alphas.size
        pos = idx.find(np.stack([np.full(k, tau), np.full(k, tau), alphas, np.full(k, Ig)],
                                axis=1))
        if np.any(pos < 0):
            raise HomotopyError("no square over (alpha, I_g) from tau to itself")
        images = long[pos]
    elif route == "conjugate":
        from .weak2 import extract_weak2

        E = extract_weak2(phi, order=order)
        inv = E.inverse2()
        S_idx, long = _square_index(phi)
        mu = _comparison_square(phi, E, tau, f, g, order, S_idx)
        d = int(long[mu])
        whisk = E.hcomp[alphas, E.e2[g]]
        images = E.vcomp[E.vcomp[np.full(alphas.size, inv[d]), whisk], d]
    else:
        raise HomotopyError("route must be 'lift' or 'conjugate'")
    # 2-cells of C_2 are the cells of Phi(1, 1) (no truncation at the top level)
    pos_t = -np.ones(C2.n_arrows, dtype=np.int64)
    pos_t[tgt.elements] = np.arange(tgt.order)
    mapping = pos_t[images]
    if np.any(mapping < 0):
        raise HomotopyError("whiskered cell is not an automorphism of h")
    return WhiskerIso(tau, f, g, h, src, tgt, mapping, route)


def _comparison_square(phi, E, tau, f, g, order, S_idx) -> int:
    """``mu : sigma -> tau`` in ``Phi(2, 1)``, ``sigma = L_2(f, g)``, spine ``a_2(f, g)``."""
    from .weak2 import canonical_sections

    S = canonical_sections(phi, E, order)
    X = np.array([[f, g]], dtype=np.int64)
    sigma = S.choose(X)
    a = S.comparison(sigma, X)
    pos = S_idx.find(np.array([[sigma[0], tau, a[0, 0], a[0, 1]]]))
    if pos[0] < 0:
        raise HomotopyError("no comparison square sigma -> tau")
    return int(pos[0])


def unit_simplex(phi: FinPresheaf, f: int) -> int:
    """The degenerate 2-simplex with spine ``(I_{s(f)}, f)``."""
    return int(phi.action("e", 1, 0, (1, 0))[f])


def a_i(phi: FinPresheaf, i: int) -> FinPresheaf:
    """``T^{n-i} Phi_{I_{i-2}}``: a 2-nerf whose ``C_2`` is ``C_i(Phi)``."""
    if not 2 <= i <= phi.n:
        raise HomotopyError(f"need 2 <= i <= {phi.n}")
    sl = slice_presheaf(phi, (1,) * (i - 2))
    return truncation_tower(sl, phi.n - i).levels[-1]
