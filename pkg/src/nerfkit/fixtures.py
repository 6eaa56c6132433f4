"""Deterministic fixture generators: categories, strict and weak 2-categories,
presheaves, morphisms, and deliberately broken variants.

Every generator validates its output (or, for ``broken_*``, checks that it is
rejected) before returning it.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .cat_nerve import FinCategory, category_from_tables, group_category, nerve
from .presheaf import FinPresheaf, PresheafError, PresheafMorphism, Region, build_from_rows
from .strict_ncat import StrictNCategory, first_zero, multi_nerve, validate_strict
from .weak2 import Weak2Category, validate_weak2


# ---------------------------------------------------------------------------
# categories


def terminal_category() -> FinCategory:
    return category_from_tables(["*"], [("I", "*", "*")], {"*": "I"}, {("I", "I"): "I"},
                                name="terminal")


def cyclic_table(k: int) -> np.ndarray:
    a = np.arange(k)
    return (a[:, None] + a[None, :]) % k


def z2_delooping() -> FinCategory:
    return group_category(cyclic_table(2), ["e", "g"], name="z2_delooping")


def symmetric_group(k: int = 3) -> tuple[np.ndarray, list]:
    perms = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.zeros((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(k))]   # p after q
    labels = ["".join(str(v) for v in p) for p in perms]
    return table, labels


def s3_delooping() -> FinCategory:
    table, labels = symmetric_group(3)
    return group_category(table, labels, name="s3_delooping")


def arrow_cat() -> FinCategory:
    return category_from_tables(
        ["0", "1"], [("I0", "0", "0"), ("I1", "1", "1"), ("a", "0", "1")],
        {"0": "I0", "1": "I1"},
        {("I0", "I0"): "I0", ("I1", "I1"): "I1", ("I0", "a"): "a", ("a", "I1"): "a"},
        name="arrow_cat")


def codiscrete(objects, name: str = "") -> FinCategory:
    """Exactly one arrow between any two objects (a contractible groupoid)."""
    objs = list(objects)
    arrows = [(f"{x}{y}", x, y) for x in objs for y in objs]
    comp = {(f"{x}{y}", f"{y}{z}"): f"{x}{z}" for x in objs for y in objs for z in objs}
    return category_from_tables(objs, arrows, {x: f"{x}{x}" for x in objs}, comp, name=name)


def contractible_groupoid() -> FinCategory:
    return codiscrete(["a", "b"], name="contractible_groupoid")


def discrete(k: int, name: str = "") -> FinCategory:
    objs = [f"o{i}" for i in range(k)]
    return category_from_tables(objs, [(f"I{o}", o, o) for o in objs],
                                {o: f"I{o}" for o in objs},
                                {(f"I{o}", f"I{o}"): f"I{o}" for o in objs},
                                name=name or f"discrete{k}")


def poset_category(k: int, name: str = "") -> FinCategory:
    """The total order ``0 < 1 < ... < k-1``."""
    objs = [str(i) for i in range(k)]
    arrows = [(f"{i}{j}", str(i), str(j)) for i in range(k) for j in range(i, k)]
    comp = {(f"{i}{j}", f"{j}{l}"): f"{i}{l}" for i in range(k) for j in range(i, k)
            for l in range(j, k)}
    return category_from_tables(objs, arrows, {str(i): f"{i}{i}" for i in range(k)}, comp,
                                name=name or f"poset{k}")


def broken_category() -> FinCategory:
    """Z/3 with one composite altered: associativity fails."""
    C = group_category(cyclic_table(3), ["e", "g", "h"], name="broken_category")
    C.comp[1, 1] = 1
    return C


def random_category(seed: int, max_objects: int = 5, max_arrows: int = 20) -> FinCategory:
    """A concrete category: objects are finite sets, arrows the composition closure of a
    few random functions (plus identities), composition is function composition."""
    rng = random.Random(seed)
    while True:
        k = rng.randint(1, max_objects)
        sizes = [rng.randint(1, 2) for _ in range(k)]
        arrows = {}                         # (src, tgt, values) -> index
        order = []

        def add(s, t, vals):
            key = (s, t, tuple(vals))
            if key not in arrows:
                arrows[key] = len(order)
                order.append(key)
            return arrows[key]

        for o in range(k):
            add(o, o, range(sizes[o]))
        for _ in range(rng.randint(0, 4)):
            s, t = rng.randrange(k), rng.randrange(k)
            add(s, t, [rng.randrange(sizes[t]) for _ in range(sizes[s])])
        grew, too_big = True, False
        while grew and not too_big:
            grew = False
            for f in list(order):
                for g in list(order):
                    if f[1] == g[0]:
                        vals = tuple(g[2][v] for v in f[2])
                        if (f[0], g[1], vals) not in arrows:
                            add(f[0], g[1], vals)
                            grew = True
                            if len(order) > max_arrows:
                                too_big = True
                                break
                if too_big:
                    break
        if too_big:
            continue
        n = len(order)
        src = [a[0] for a in order]
        tgt = [a[1] for a in order]
        comp = -np.ones((n, n), dtype=np.int64)
        for i, f in enumerate(order):
            for j, g in enumerate(order):
                if f[1] == g[0]:
                    comp[i, j] = arrows[(f[0], g[1], tuple(g[2][v] for v in f[2]))]
        ident = [arrows[(o, o, tuple(range(sizes[o])))] for o in range(k)]
        labels = [f"a{i}" for i in range(n)]
        C = FinCategory(k, src, tgt, ident, comp, [f"X{o}" for o in range(k)], labels,
                        name=f"random{seed}")
        assert C.validate().ok
        return C


# ---------------------------------------------------------------------------
# strict 2-categories


def locally_discrete(C: FinCategory, name: str = "") -> StrictNCategory:
    """A category viewed as a strict 2-category with identity 2-cells only."""
    n1 = C.n_arrows
    ids = np.arange(n1)
    vcomp = -np.ones((n1, n1), dtype=np.int64)
    vcomp[ids, ids] = ids
    S = StrictNCategory(2, [C.n_objects, n1, n1], [C.src, ids], [C.tgt, ids], [C.ident, ids],
                        {(0, 1): C.comp, (1, 2): vcomp, (0, 2): C.comp},
                        [list(C.object_labels), list(C.arrow_labels),
                         [f"I_{a}" for a in C.arrow_labels]],
                        name=name or f"ld({C.name})")
    return S


def _one_object_2cat(G: np.ndarray, A: np.ndarray, glabels, alabels, assoc_cocycle=None,
                     name: str = "") -> Weak2Category:
    """One object; 1-cells the group ``G``; 2-cells ``(g, a) : g => g`` with ``a`` in the
    abelian group ``A`` (trivial action); associator ``(hgf, c(f, g, h))``."""
    ng, na = G.shape[0], A.shape[0]
    n2 = ng * na
    g_of = np.repeat(np.arange(ng), na)
    a_of = np.tile(np.arange(na), ng)
    comp1 = G.T.copy()                                    # f then g  ->  g * f
    vcomp = -np.ones((n2, n2), dtype=np.int64)
    hcomp = np.zeros((n2, n2), dtype=np.int64)
    for x in range(n2):
        for y in range(n2):
            if g_of[x] == g_of[y]:
                vcomp[x, y] = g_of[x] * na + A[a_of[x], a_of[y]]
            hcomp[x, y] = comp1[g_of[x], g_of[y]] * na + A[a_of[x], a_of[y]]
    assoc = np.zeros((ng, ng, ng), dtype=np.int64)
    for f, g, h in itertools.product(range(ng), repeat=3):
        c = 0 if assoc_cocycle is None else assoc_cocycle(f, g, h)
        assoc[f, g, h] = comp1[comp1[f, g], h] * na + c
    ids = np.arange(ng) * na
    labels2 = [f"({glabels[g]},{alabels[a]})" for g in range(ng) for a in range(na)]
    return Weak2Category(1, ng, n2, np.zeros(ng), np.zeros(ng), [0], g_of, g_of, ids,
                         comp1, vcomp, hcomp, assoc, ids, ids, ["x"], list(glabels), labels2,
                         name=name)


def cocycle_z2(f: int, g: int, h: int) -> int:
    """The normalised 3-cocycle ``c(f, g, h) = f g h`` on Z/2 with values in Z/2."""
    return f * g * h


def weak_cocycle() -> Weak2Category:
    C = _one_object_2cat(cyclic_table(2), cyclic_table(2), ["I", "f"], ["0", "1"],
                         assoc_cocycle=cocycle_z2, name="weak_cocycle")
    rep = validate_weak2(C)
    if not rep.ok:
        raise AssertionError(f"weak_cocycle fails axiom {rep.axiom}")
    return C


def broken_pentagon() -> Weak2Category:
    """weak_cocycle with the associator value at ``(f, f, I)`` flipped.

    The flip breaks the cocycle identity (hence the pentagon) while every
    associator stays a 2-cell with the right typing.
    """
    C = weak_cocycle()
    C.name = "broken_pentagon"
    C.assoc[1, 1, 0] ^= 1
    return C


def loops_2cat(A: np.ndarray, alabels, name: str) -> StrictNCategory:
    """One object, one 1-cell, 2-cells the abelian group ``A``."""
    from .weak2 import weak2_to_strict

    W = _one_object_2cat(np.zeros((1, 1), dtype=np.int64), A, ["I"], alabels, name=name)
    return weak2_to_strict(W)


def z2_loops() -> StrictNCategory:
    return loops_2cat(cyclic_table(2), ["0", "1"], "z2_loops")


def z3_loops() -> StrictNCategory:
    return loops_2cat(cyclic_table(3), ["0", "1", "2"], "z3_loops")


def klein_loops() -> StrictNCategory:
    a = np.arange(4)
    return loops_2cat(a[:, None] ^ a[None, :], ["00", "01", "10", "11"], "klein_loops")


def strict_z2_aut() -> StrictNCategory:
    """One object, 1-cells Z/2, every 1-cell with 2-automorphisms Z/2, strict."""
    from .weak2 import weak2_to_strict

    W = _one_object_2cat(cyclic_table(2), cyclic_table(2), ["I", "f"], ["0", "1"],
                         name="strict_z2_aut")
    return weak2_to_strict(W)


def crossed_id_z2() -> StrictNCategory:
    """One object, 1-cells Z/2, 2-cells ``(g, a) : g => g + a`` (the identity crossed
    module on Z/2): a strict 2-groupoid equivalent to the point."""
    n2 = 4
    g_of = np.array([0, 0, 1, 1])
    a_of = np.array([0, 1, 0, 1])
    tgt = (g_of + a_of) % 2

    def cell(g, a):
        return 2 * g + a

    vcomp = -np.ones((n2, n2), dtype=np.int64)
    hcomp = np.zeros((n2, n2), dtype=np.int64)
    for x in range(n2):
        for y in range(n2):
            if tgt[x] == g_of[y]:
                vcomp[x, y] = cell(g_of[x], (a_of[x] + a_of[y]) % 2)
            hcomp[x, y] = cell((g_of[x] + g_of[y]) % 2, (a_of[x] + a_of[y]) % 2)
    comp1 = cyclic_table(2)
    return StrictNCategory(2, [1, 2, 4], [[0, 0], g_of], [[0, 0], tgt], [[0], [0, 2]],
                           {(0, 1): comp1, (1, 2): vcomp, (0, 2): hcomp},
                           [["x"], ["I", "f"], ["(I,0)", "(I,1)", "(f,0)", "(f,1)"]],
                           name="crossed_id_z2")


def walking_2cell() -> StrictNCategory:
    """Objects x, y; 1-cells I_x, I_y, f, g : x -> y; one non-identity 2-cell f => g."""
    s1, b1 = [0, 1, 0, 0], [0, 1, 1, 1]
    comp1 = -np.ones((4, 4), dtype=np.int64)
    comp1[0, 0], comp1[1, 1] = 0, 1
    comp1[0, 2], comp1[2, 1], comp1[0, 3], comp1[3, 1] = 2, 2, 3, 3
    # 2-cells: identities of I_x, I_y, f, g, then alpha : f => g
    s2, b2 = [0, 1, 2, 3, 2], [0, 1, 2, 3, 3]
    vcomp = -np.ones((5, 5), dtype=np.int64)
    for c in range(4):
        vcomp[c, c] = c
    vcomp[2, 4], vcomp[4, 3] = 4, 4
    hcomp = -np.ones((5, 5), dtype=np.int64)
    hcomp[0, 0], hcomp[1, 1] = 0, 1
    for c in (2, 3, 4):
        hcomp[0, c] = c
        hcomp[c, 1] = c
    return StrictNCategory(2, [2, 4, 5], [s1, s2], [b1, b2], [[0, 1], [0, 1, 2, 3]],
                           {(0, 1): comp1, (1, 2): vcomp, (0, 2): hcomp},
                           [["x", "y"], ["I_x", "I_y", "f", "g"],
                            ["I_I_x", "I_I_y", "I_f", "I_g", "alpha"]],
                           name="walking_2cell")


def broken_godement() -> StrictNCategory:
    """Klein-four 2-loops with horizontal composition replaced by Z/4 addition: both
    compositions are category structures but interchange fails."""
    S = klein_loops()
    S.name = "broken_godement"
    S.comp[(0, 2)] = cyclic_table(4)
    return S


def discrete_top(C: StrictNCategory, name: str = "") -> StrictNCategory:
    """``C`` with identity (n+1)-cells only on top: a strict (n+1)-category."""
    n = C.n
    top = C.sizes[n]
    ident = np.arange(top, dtype=np.int64)
    comp = dict(C.comp)
    for i in range(n):
        comp[(i, n + 1)] = C.comp[(i, n)]
    diag = -np.ones((top, top), dtype=np.int64)
    diag[ident, ident] = ident
    comp[(n, n + 1)] = diag
    D = StrictNCategory(n + 1, list(C.sizes) + [top], list(C.s) + [ident], list(C.b) + [ident],
                        list(C.e) + [ident], comp, [list(lab) for lab in C.labels] +
                        [[f"I({x})" for x in C.labels[n]]], name=name or f"{C.name}+")
    rep = validate_strict(D)
    if not rep.ok:
        raise AssertionError(f"{D.name}: {rep.violation}")
    return D


def strict3_fixtures() -> list:
    """Strict 3-categories with identity 3-cells over some strict 2-fixtures."""
    return [discrete_top(z2_loops(), "strict3_z2_loops"),
            discrete_top(walking_2cell(), "strict3_walking_2cell"),
            discrete_top(strict2_z2(), "strict3_z2")]


def strict_fixtures() -> list:
    """Ten valid strict 2-categories."""
    out = [locally_discrete(z2_delooping(), "strict2_z2"),
           locally_discrete(terminal_category(), "strict2_terminal"),
           locally_discrete(arrow_cat(), "strict2_arrow"),
           locally_discrete(contractible_groupoid(), "strict2_contractible"),
           locally_discrete(s3_delooping(), "strict2_s3"),
           z2_loops(), z3_loops(), crossed_id_z2(), walking_2cell(), strict_z2_aut()]
    for S in out:
        rep = validate_strict(S)
        if not rep.ok:
            raise AssertionError(f"fixture {S.name} invalid: {rep.violation}")
    return out


def strict2_z2() -> StrictNCategory:
    return locally_discrete(z2_delooping(), "strict2_z2")


# ---------------------------------------------------------------------------
# presheaves and morphisms


def broken_horn(bound: int = 3) -> FinPresheaf:
    """The 1-skeleton of the 2-simplex: a spine with no filler, so not a 1-nerve."""
    region = Region.coerce(1, bound)
    rows = {}
    for (m,) in region.indices():
        cells = [c for c in itertools.combinations_with_replacement(range(3), m + 1)
                 if len(set(c)) <= 2]
        rows[(m,)] = np.array(cells, dtype=np.int64).reshape(len(cells), m + 1)

    def act(key, r):
        kind, _, i, _ = key
        if kind == "d":
            return np.delete(r, i, axis=1)
        return np.insert(r, i, r[:, i], axis=1)

    return build_from_rows(1, region, rows, act, name="broken_horn")


def cell_map_morphism(phi: FinPresheaf, psi: FinPresheaf, maps: list, name: str = "") -> PresheafMorphism:
    """Morphism between nerves/multi-nerves induced by maps of cells per level.

    At ``M`` a cell is a grid of level ``first_zero(M) - 1`` cells; each entry is
    mapped by ``maps[level]`` and the image located among the target's cells.
    """
    region = phi.region.intersect(psi.region)
    comps = {}
    for M in region.indices():
        q = first_zero(M) - 1
        img = np.asarray(maps[q], dtype=np.int64)[phi.rows(M)]
        loc = psi.locate(M, img)
        if loc.size and loc.min() < 0:
            raise PresheafError(f"cell map does not preserve cells at {M}")
        comps[M] = loc
    return PresheafMorphism(phi, psi, comps, name=name)


def to_terminal(phi: FinPresheaf) -> PresheafMorphism:
    from .presheaf import terminal

    T = terminal(phi.n, phi.region)
    return PresheafMorphism(phi, T, {M: np.zeros(phi.sizes[M], dtype=np.int64)
                                     for M in phi.region.indices()}, name="to_terminal")


def morphism_fixtures(bound: int = 3) -> list:
    """Six ``(name, F, expected_equivalence)`` triples between groupoid fixtures."""
    from .presheaf import identity_morphism

    out = []
    cg = nerve(contractible_groupoid(), bound)
    out.append(("contractible->terminal", to_terminal(cg), True))
    z2 = nerve(z2_delooping(), bound)
    out.append(("id(z2)", identity_morphism(z2), True))
    cm = multi_nerve(crossed_id_z2(), bound)
    out.append(("crossed_id_z2->terminal", to_terminal(cm), True))
    d2 = nerve(discrete(2), bound)
    out.append(("discrete2->contractible",
                cell_map_morphism(d2, cg, [[0, 1], [0, 3]], name="inclusion"), False))
    out.append(("z2->terminal", to_terminal(z2), False))
    zl = multi_nerve(z2_loops(), bound)
    out.append(("z2_loops->terminal", to_terminal(zl), False))
    return out


# ---------------------------------------------------------------------------
# registry


def _nerve_of(factory):
    def make(bound=None):
        return nerve(factory(), bound)
    return make


GENERATORS = {
    "terminal": terminal_category,
    "z2_delooping": z2_delooping,
    "arrow_cat": arrow_cat,
    "contractible_groupoid": contractible_groupoid,
    "s3_delooping": s3_delooping,
    "discrete2": lambda: discrete(2),
    "strict2_z2": strict2_z2,
    "z2_loops": z2_loops,
    "crossed_id_z2": crossed_id_z2,
    "walking_2cell": walking_2cell,
    "weak_cocycle": weak_cocycle,
    "broken_category": broken_category,
    "broken_pentagon": broken_pentagon,
    "broken_godement": broken_godement,
    "broken_horn": broken_horn,
}


def generate(name: str):
    if name not in GENERATORS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(GENERATORS))}")
    return GENERATORS[name]()


def _equiv_triple(bound=None):
    """Source, target and morphism of the discrete -> contractible inclusion."""
    F = morphism_fixtures(3 if bound is None else bound)[3][1]
    return F.source, F.target, F


# smallest region holding what extraction reads: (3,0), (2,1), (1,2)
EXTRACTION_REGION = [(3, 0), (2, 2)]


def _weak_cocycle_nerve(bound=None):
    from .weak2 import double_nerve

    phi = double_nerve(weak_cocycle(), 2 if bound is None else bound)
    phi.name = "weak_cocycle_nerve"
    return phi


# file name -> maker(bound); each maker returns one structure (or a triple
# written as ``<name>_source``, ``<name>_target``, ``<name>_morphism``)
FILE_FIXTURES = {name: (lambda f: lambda bound=None: f())(f) for name, f in GENERATORS.items()}
FILE_FIXTURES.update({
    "broken_horn": lambda bound=None: broken_horn(3 if bound is None else bound),
    "nerve_z2": lambda bound=None: nerve(z2_delooping(), 3 if bound is None else bound),
    "nerve_s3": lambda bound=None: nerve(s3_delooping(), 3 if bound is None else bound),
    "multinerve_z2_loops": lambda bound=None: multi_nerve(z2_loops(), 2 if bound is None else bound),
    "multinerve_z2_loops_ext": lambda bound=None: multi_nerve(z2_loops(), EXTRACTION_REGION),
    "multinerve_strict2_z2_ext": lambda bound=None: multi_nerve(strict2_z2(), EXTRACTION_REGION),
    "weak_cocycle_nerve": _weak_cocycle_nerve,
    "weak_cocycle_nerve_ext": lambda bound=None: _weak_cocycle_nerve(EXTRACTION_REGION),
    "inclusion": _equiv_triple,
})


def file_fixture(name: str, bound=None):
    if name not in FILE_FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FILE_FIXTURES))}")
    return FILE_FIXTURES[name](bound)
