"""Finite, degree-bounded presheaves on the n-fold simplex category.

A :class:`FinPresheaf` stores, for every multi-index ``M`` of a downward-closed
:class:`Region`, a cell count ``sizes[M]`` and, for every elementary map that
stays inside the region, the contravariant action as a dense integer array.
``actions[("d", k, i, M)]`` maps ``Phi(M) -> Phi(M - e_k)`` and
``actions[("e", k, i, M)]`` maps ``Phi(M) -> Phi(M + e_k)`` (axes are 1-based).

Presheaves built from combinatorial data (nerves, fiber powers, grids) also
carry ``data[M]``: one integer row per cell, used for bulk row lookup.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import delta_core as dc
from .rows import RowIndex, expand_join

Index = tuple[int, ...]
ActionKey = tuple[str, int, int, Index]

DEFAULT_BOUND = 4


class PresheafError(ValueError):
    """Malformed presheaf data or an operation outside the stored region."""


class TooLarge(PresheafError):
    """An enumeration would exceed the configured cell budget."""

    def __init__(self, what: str, estimate: float, limit: int):
        self.what = what
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"{what}: about {estimate:.3g} cells, budget is {limit} "
                         f"(set NERFKIT_MAX_CELLS to raise it)")


def default_bound() -> int:
    try:
        return int(os.environ.get("NERVE_BOUND", DEFAULT_BOUND))
    except ValueError:
        return DEFAULT_BOUND


def cell_budget() -> int:
    try:
        return int(os.environ.get("NERFKIT_MAX_CELLS", 2_000_000))
    except ValueError:
        return 2_000_000


def check_budget(what: str, estimate: float) -> None:
    limit = cell_budget()
    if estimate > limit:
        raise TooLarge(what, estimate, limit)


def fmt_index(M: Sequence[int]) -> str:
    return ",".join(str(int(m)) for m in M)


def action_key_str(key: ActionKey) -> str:
    kind, k, i, M = key
    return f"{kind}/{k}/{i}@{fmt_index(M)}"


def parse_action_key(text: str) -> ActionKey:
    try:
        head, idx = text.split("@")
        kind, k, i = head.split("/")
        if kind not in ("d", "e"):
            raise ValueError(kind)
        M = tuple(dc.MultiIndex.parse(idx).coords)
        return kind, int(k), int(i), M
    except ValueError as exc:
        raise PresheafError(f"bad action key {text!r}; expected d/k/i@M or e/k/i@M") from exc


# ---------------------------------------------------------------------------
# regions


class Region:
    """A downward-closed set of multi-indices, stored as a union of boxes."""

    def __init__(self, n: int, boxes: Iterable[Sequence[int]]):
        self.n = n
        boxes = {tuple(int(x) for x in b) for b in boxes}
        for b in boxes:
            if len(b) != n or any(x < 0 for x in b):
                raise PresheafError(f"bad region box {b} for arity {n}")
        maximal = [b for b in boxes
                   if not any(c != b and all(x <= y for x, y in zip(b, c)) for c in boxes)]
        self.boxes: tuple[Index, ...] = tuple(sorted(maximal))
        self._indices: list[Index] | None = None

    @classmethod
    def cube(cls, n: int, D: int) -> "Region":
        return cls(n, [(D,) * n])

    @classmethod
    def coerce(cls, n: int, bound) -> "Region":
        if isinstance(bound, Region):
            if bound.n != n:
                raise PresheafError("region arity mismatch")
            return bound
        if bound is None:
            bound = default_bound()
        if isinstance(bound, (int, np.integer)):
            return cls.cube(n, int(bound))
        bound = list(bound)
        if bound and isinstance(bound[0], (int, np.integer)):
            return cls(n, [tuple(bound)])
        return cls(n, bound)

    def __contains__(self, M) -> bool:
        M = tuple(M)
        if len(M) != self.n or any(m < 0 for m in M):
            return False
        return any(all(m <= b for m, b in zip(M, box)) for box in self.boxes)

    def __eq__(self, other):
        return isinstance(other, Region) and self.n == other.n and self.boxes == other.boxes

    def __hash__(self):
        return hash((self.n, self.boxes))

    def __repr__(self):
        if self.is_cube:
            return f"Region.cube({self.n}, {self.boxes[0][0] if self.n else 0})"
        return f"Region({self.n}, {list(self.boxes)})"

    @property
    def is_cube(self) -> bool:
        return len(self.boxes) == 1 and len(set(self.boxes[0])) <= 1

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    @property
    def bound(self) -> int:
        """The largest coordinate occurring anywhere in the region."""
        return max((max(b) for b in self.boxes if b), default=0)

    def maxima(self) -> Index:
        return tuple(max((b[k] for b in self.boxes), default=-1) for k in range(self.n))

    def indices(self) -> list[Index]:
        if self._indices is None:
            seen = set()
            for box in self.boxes:
                seen.update(itertools.product(*(range(b + 1) for b in box)))
            self._indices = sorted(seen)
        return self._indices

    def slice(self, prefix: Sequence[int]) -> "Region":
        prefix = tuple(prefix)
        s = len(prefix)
        return Region(self.n - s, [b[s:] for b in self.boxes
                                   if all(p <= x for p, x in zip(prefix, b[:s]))])

    def last_at_least(self, need: int) -> "Region":
        """``{N : (N, need) in region}``."""
        return Region(self.n - 1, [b[:-1] for b in self.boxes if b[-1] >= need])

    def intersect(self, other: "Region") -> "Region":
        if other.n != self.n:
            raise PresheafError("region arity mismatch")
        return Region(self.n, [tuple(min(x, y) for x, y in zip(a, b))
                               for a in self.boxes for b in other.boxes])

    def subset_of(self, other: "Region") -> bool:
        return all(b in other for b in self.boxes)

    def to_json(self):
        if self.is_cube and self.n:
            return self.boxes[0][0]
        return [list(b) for b in self.boxes]

    def elementary_maps(self) -> Iterator[tuple[ActionKey, Index]]:
        """Every stored elementary action ``(key, target index)`` in lexicographic order."""
        for M in self.indices():
            for k in range(1, self.n + 1):
                m = M[k - 1]
                if m >= 1:
                    tgt = M[:k - 1] + (m - 1,) + M[k:]
                    for i in range(m + 1):
                        yield ("d", k, i, M), tgt
                up = M[:k - 1] + (m + 1,) + M[k:]
                if up in self:
                    for i in range(m + 1):
                        yield ("e", k, i, M), up


def action_target(key: ActionKey) -> Index:
    kind, k, _, M = key
    delta = -1 if kind == "d" else 1
    return M[:k - 1] + (M[k - 1] + delta,) + M[k:]


# ---------------------------------------------------------------------------
# presheaves


class FinPresheaf:
    """A finite presheaf on a downward-closed region of the n-fold simplex category."""

    def __init__(self, n: int, region, sizes: dict, actions: dict,
                 labels: dict | None = None, data: dict | None = None,
                 name: str = "", meta: dict | None = None):
        self.n = int(n)
        self.region = Region.coerce(self.n, region)
        self.sizes: dict[Index, int] = {tuple(M): int(c) for M, c in sizes.items()}
        self.actions: dict[ActionKey, np.ndarray] = {
            (kd, int(k), int(i), tuple(M)): np.asarray(a, dtype=np.int64)
            for (kd, k, i, M), a in actions.items()}
        self.labels = labels
        self.data = data
        self.name = name
        self.meta = dict(meta or {})
        self._cache: dict = {}
        self._row_index: dict[Index, RowIndex] = {}
        for M in self.region.indices():
            if M not in self.sizes:
                raise PresheafError(f"missing cell set at ({fmt_index(M)})")

    # -- basic access -------------------------------------------------------
    @property
    def bound(self) -> int:
        return self.region.bound

    def indices(self) -> list[Index]:
        return self.region.indices()

    def size(self, M) -> int:
        M = tuple(M)
        if M not in self.region:
            raise PresheafError(f"index ({fmt_index(M)}) outside region {self.region}")
        return self.sizes[M]

    def label(self, M, c: int) -> str:
        M = tuple(M)
        if self.labels and M in self.labels:
            return str(self.labels[M][c])
        return str(c)

    def label_list(self, M) -> list[str]:
        return [self.label(M, c) for c in range(self.size(M))]

    def action(self, kind: str, k: int, i: int, M) -> np.ndarray:
        key = (kind, k, i, tuple(M))
        try:
            return self.actions[key]
        except KeyError:
            raise PresheafError(f"no stored action {action_key_str(key)}") from None

    def rows(self, M) -> np.ndarray:
        M = tuple(M)
        if self.data is None or M not in self.data:
            raise PresheafError(f"presheaf carries no cell rows at ({fmt_index(M)})")
        return self.data[M]

    def row_index(self, M) -> RowIndex:
        M = tuple(M)
        if M not in self._row_index:
            self._row_index[M] = RowIndex(self.rows(M))
        return self._row_index[M]

    def locate(self, M, rows) -> np.ndarray:
        """Cell numbers of ``rows`` at ``M`` (-1 where a row is not a cell)."""
        return self.row_index(M).find(rows)

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<FinPresheaf{name} n={self.n} region={self.region} cells={sum(self.sizes.values())}>"

    # -- evaluation ---------------------------------------------------------
    def pull(self, mu: dc.ProductMap, cells=None) -> np.ndarray:
        """Apply ``Phi(mu) : Phi(mu.dst) -> Phi(mu.src)``; default on all cells."""
        if mu.n != self.n:
            raise PresheafError("product map arity mismatch")
        M, N = mu.dst, mu.src
        if M not in self.region or N not in self.region:
            raise PresheafError(f"map ({fmt_index(N)}) -> ({fmt_index(M)}) leaves the region")
        key = (M, tuple(c.values for c in mu.components))
        table = self._cache.get(key)
        if table is None:
            table = self._compose_plan(mu)
            self._cache[key] = table
        if cells is None:
            return table
        cells = np.asarray(cells, dtype=np.int64)
        if cells.size and (cells.min() < 0 or cells.max() >= self.sizes[M]):
            raise PresheafError(f"unknown cell at ({fmt_index(M)})")
        return table[cells]

    def _compose_plan(self, mu: dc.ProductMap) -> np.ndarray:
        cur = list(mu.dst)
        table = np.arange(self.sizes[tuple(cur)], dtype=np.int64)
        plans = [dc.factorize(c) for c in mu.components]
        for k, (faces, _) in enumerate(plans, start=1):
            for _level, i in faces:
                table = self.action("d", k, i, tuple(cur))[table]
                cur[k - 1] -= 1
        for k, (_, degens) in enumerate(plans, start=1):
            for _level, j in degens:
                table = self.action("e", k, j, tuple(cur))[table]
                cur[k - 1] += 1
        return table

    def on_axis(self, M, k: int, sigma: dc.MonotoneMap, cells=None) -> np.ndarray:
        """Action of ``sigma`` placed on axis ``k`` with codomain index ``M``."""
        return self.pull(dc.on_axis(M, k, sigma), cells)

    def source(self, M, k: int, cells=None) -> np.ndarray:
        """``s = Phi(delta^k_0)`` at ``M`` (requires ``M[k-1] == 1``)."""
        return self.on_axis(M, k, dc.vertex(M[k - 1], 0), cells)

    def target(self, M, k: int, cells=None) -> np.ndarray:
        """``b = Phi(delta^k_1)`` at ``M``."""
        return self.on_axis(M, k, dc.vertex(M[k - 1], M[k - 1]), cells)

    def degenerate(self, M, k: int, cells=None) -> np.ndarray:
        """``Phi(e^k_0)`` at ``M``: the identity on a cell with ``M[k-1] == 0``."""
        table = self.action("e", k, 0, tuple(M))
        return table if cells is None else table[np.asarray(cells, dtype=np.int64)]


def evaluate(phi: FinPresheaf, mu: dc.ProductMap, cell):
    """``Phi(mu)(cell)`` for a single cell or an array of cells."""
    if np.ndim(cell) == 0:
        return int(phi.pull(mu, np.array([cell]))[0])
    return phi.pull(mu, cell)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    checked: int = 0
    violation: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "checked": self.checked, "violation": self.violation}


def validate(phi: FinPresheaf) -> ValidationReport:
    """Check stored data forms a functor; report the first violated identity."""
    region = phi.region
    for M in region.indices():
        if phi.sizes[M] < 0:
            return ValidationReport(False, 0, {"identity": "size", "index": fmt_index(M)})
    checked = 0
    for key, tgt in region.elementary_maps():
        if key not in phi.actions:
            return ValidationReport(False, checked, {
                "identity": "missing action", "key": action_key_str(key),
                "index": fmt_index(key[3])})
        arr = phi.actions[key]
        if arr.shape != (phi.sizes[key[3]],):
            return ValidationReport(False, checked, {
                "identity": "action length", "key": action_key_str(key),
                "index": fmt_index(key[3])})
        if arr.size and (arr.min() < 0 or arr.max() >= phi.sizes[tgt]):
            bad = int(np.nonzero((arr < 0) | (arr >= phi.sizes[tgt]))[0][0])
            return ValidationReport(False, checked, {
                "identity": "action range", "key": action_key_str(key),
                "index": fmt_index(key[3]), "cell": bad})
    by_source: dict[Index, list[tuple[ActionKey, Index]]] = {}
    for key, tgt in region.elementary_maps():
        by_source.setdefault(key[3], []).append((key, tgt))
    # face/face identities first, so a corrupted face is reported where it is stored
    passes = [[(M, ka, mid, kb) for M in region.indices() for ka, mid in by_source.get(M, [])
               for kb, _ in by_source.get(mid, []) if (ka[0] == kb[0] == "d") == faces]
              for faces in (True, False)]
    for M, key_a, mid, key_b in passes[0] + passes[1]:
        raw = phi.actions[key_b][phi.actions[key_a]]
        canon = phi.pull(_elementary_product(key_a, M) @ _elementary_product(key_b, mid))
        checked += 1
        if not np.array_equal(raw, canon):
            c = int(np.nonzero(raw != canon)[0][0])
            return ValidationReport(False, checked, {
                "identity": f"{action_key_str(key_a)} then {action_key_str(key_b)}",
                "index": fmt_index(M), "cell": c,
                "got": int(raw[c]), "expected": int(canon[c])})
    return ValidationReport(True, checked, None)


def _elementary_product(key: ActionKey, M: Index) -> dc.ProductMap:
    """The simplex-category map whose action is stored under ``key`` (codomain ``M``)."""
    kind, k, i, _ = key
    return dc.product_elementary(M, k, "face" if kind == "d" else "degeneracy", i)


# ---------------------------------------------------------------------------
# construction helpers


def build_from_rows(n: int, region, rows: dict, act: Callable, labels=None,
                    name: str = "", meta=None, strict: bool = True) -> FinPresheaf:
    """Assemble a presheaf from cell rows and a row-level action function.

    ``act(key, rows) -> rows`` computes the image rows of an elementary action;
    images are located among the target cells (an image that is not a cell is
    an error when ``strict``).
    """
    region = Region.coerce(n, region)
    rows = {tuple(M): np.asarray(r) for M, r in rows.items()}
    sizes = {M: int(rows[M].shape[0]) for M in region.indices()}
    phi = FinPresheaf(n, region, sizes, {}, labels=labels, data=rows, name=name, meta=meta)
    for key, tgt in region.elementary_maps():
        img = act(key, rows[key[3]])
        if n == 0:
            continue
        loc = phi.locate(tgt, img) if sizes[key[3]] else np.zeros(0, dtype=np.int64)
        if strict and loc.size and loc.min() < 0:
            bad = int(np.nonzero(loc < 0)[0][0])
            raise PresheafError(f"{name or 'presheaf'}: image of cell {bad} under "
                                f"{action_key_str(key)} is not a cell")
        phi.actions[key] = loc
    return phi


def terminal(n: int, bound=None) -> FinPresheaf:
    region = Region.coerce(n, bound)
    sizes = {M: 1 for M in region.indices()}
    actions = {key: np.zeros(1, dtype=np.int64) for key, _ in region.elementary_maps()}
    data = {M: np.zeros((1, 1), dtype=np.int64) for M in region.indices()}
    return FinPresheaf(n, region, sizes, actions, data=data, name="terminal")


def empty(n: int, bound=None) -> FinPresheaf:
    region = Region.coerce(n, bound)
    sizes = {M: 0 for M in region.indices()}
    actions = {key: np.zeros(0, dtype=np.int64) for key, _ in region.elementary_maps()}
    data = {M: np.zeros((0, 1), dtype=np.int64) for M in region.indices()}
    return FinPresheaf(n, region, sizes, actions, data=data, name="empty")


def point_set(count: int, labels=None, name: str = "") -> FinPresheaf:
    """An arity-0 presheaf: a plain finite set."""
    lab = {(): list(labels)} if labels is not None else None
    data = {(): np.arange(count, dtype=np.int64).reshape(-1, 1)}
    return FinPresheaf(0, Region(0, [()]), {(): count}, {}, labels=lab, data=data, name=name)


def restrict(phi: FinPresheaf, region) -> FinPresheaf:
    """The same presheaf on a smaller downward-closed region."""
    region = Region.coerce(phi.n, region)
    if region == phi.region:
        return phi
    if not region.subset_of(phi.region):
        raise PresheafError(f"cannot restrict to {region}: not inside {phi.region}")
    idx = region.indices()
    sizes = {M: phi.sizes[M] for M in idx}
    actions = {key: phi.actions[key] for key, _ in region.elementary_maps()}
    labels = {M: phi.labels[M] for M in idx if M in phi.labels} if phi.labels else None
    data = {M: phi.data[M] for M in idx if M in phi.data} if phi.data else None
    out = FinPresheaf(phi.n, region, sizes, actions, labels=labels, data=data,
                      name=phi.name, meta=phi.meta)
    for M in idx:
        if M in phi._row_index:
            out._row_index[M] = phi._row_index[M]
    return out


def slice_presheaf(phi: FinPresheaf, prefix: Sequence[int]) -> FinPresheaf:
    """``Phi_M(N) = Phi(M, N)`` for a prefix ``M``."""
    prefix = tuple(int(p) for p in prefix)
    s = len(prefix)
    if s == 0:
        return phi
    if s > phi.n:
        raise PresheafError("prefix longer than the arity")
    if prefix + (0,) * (phi.n - s) not in phi.region:
        raise PresheafError(f"prefix ({fmt_index(prefix)}) outside region {phi.region}")
    key = ("slice", prefix)
    if key in phi._cache:
        return phi._cache[key]
    region = phi.region.slice(prefix)
    idx = region.indices()
    sizes = {N: phi.sizes[prefix + N] for N in idx}
    actions = {}
    for (kind, k, i, N), _ in region.elementary_maps():
        actions[(kind, k, i, N)] = phi.actions[(kind, k + s, i, prefix + N)]
    labels = ({N: phi.labels[prefix + N] for N in idx if prefix + N in phi.labels}
              if phi.labels else None)
    data = ({N: phi.data[prefix + N] for N in idx if prefix + N in phi.data}
            if phi.data else None)
    out = FinPresheaf(phi.n - s, region, sizes, actions, labels=labels, data=data,
                      name=f"{phi.name}[{fmt_index(prefix)}]" if phi.name else "",
                      meta={"slice_of": phi.name, "prefix": prefix})
    for N in idx:
        if prefix + N in phi._row_index:
            out._row_index[N] = phi._row_index[prefix + N]
    phi._cache[key] = out
    return out


slice = slice_presheaf  # noqa: A001 - the operation is called "slice"


def fiber_power(phi: FinPresheaf, m: int, region=None) -> FinPresheaf:
    """``Phi_1 x_{Phi_0} ... x_{Phi_0} Phi_1`` (m factors) along the first axis.

    Cells at ``N`` are rows ``(x_1, ..., x_m)`` of cells of ``Phi(1, N)`` with
    ``b(x_a) == s(x_{a+1})`` in ``Phi(0, N)``; actions are componentwise.
    """
    if phi.n < 1:
        raise PresheafError("fiber power needs arity >= 1")
    if m < 1:
        raise PresheafError("fiber power needs m >= 1")
    reg = phi.region.slice((1,))
    if region is not None:
        reg = reg.intersect(Region.coerce(phi.n - 1, region))
    key = ("fiber_power", m, reg)
    if key in phi._cache:
        return phi._cache[key]
    n = phi.n - 1
    rows = {}
    for N in reg.indices():
        MN = (1,) + N
        cnt = phi.sizes[MN]
        src = phi.source(MN, 1)
        tgt = phi.target(MN, 1)
        chain = np.arange(cnt, dtype=np.int64).reshape(-1, 1)
        for _ in range(m - 1):
            check_budget(f"fiber power at ({fmt_index(N)})",
                         chain.shape[0] * max(cnt, 1) / max(phi.sizes[(0,) + N], 1))
            li, rj = expand_join(tgt[chain[:, -1]], src)
            chain = np.concatenate([chain[li], rj.reshape(-1, 1)], axis=1)
        rows[N] = chain

    def act(akey, r):
        kind, k, i, N = akey
        table = phi.actions[(kind, k + 1, i, (1,) + N)]
        return table[r]

    labels = None
    if phi.labels:
        labels = {}
        for N, r in rows.items():
            lab = phi.labels.get((1,) + N)
            if lab is not None:
                labels[N] = ["(" + ",".join(str(lab[x]) for x in row) + ")" for row in r]
    out = build_from_rows(n, reg, rows, act, labels=labels,
                          name=f"{phi.name}^({m})" if phi.name else "",
                          meta={"fiber_power_of": phi.name, "m": m})
    phi._cache[key] = out
    return out


# ---------------------------------------------------------------------------
# morphisms


class PresheafMorphism:
    """A family of maps ``F(M) : Phi(M) -> Psi(M)``, natural when validated."""

    def __init__(self, source: FinPresheaf, target: FinPresheaf, components: dict,
                 name: str = ""):
        if source.n != target.n:
            raise PresheafError("morphism between presheaves of different arity")
        self.source = source
        self.target = target
        self.region = source.region.intersect(target.region)
        self.components = {tuple(M): np.asarray(c, dtype=np.int64)
                           for M, c in components.items()}
        self.name = name
        self._cache: dict = {}
        for M in self.region.indices():
            if M not in self.components:
                raise PresheafError(f"morphism has no component at ({fmt_index(M)})")
            comp = self.components[M]
            if comp.shape != (source.sizes[M],):
                raise PresheafError(f"component at ({fmt_index(M)}) has wrong length")
            if comp.size and (comp.min() < 0 or comp.max() >= target.sizes[M]):
                raise PresheafError(f"component at ({fmt_index(M)}) leaves the target")

    @property
    def n(self) -> int:
        return self.source.n

    def __call__(self, M, cells=None):
        comp = self.components[tuple(M)]
        return comp if cells is None else comp[np.asarray(cells, dtype=np.int64)]

    def __repr__(self):
        return f"<PresheafMorphism {self.name or ''} n={self.n} region={self.region}>"

    def restricted(self) -> tuple[FinPresheaf, FinPresheaf]:
        return restrict(self.source, self.region), restrict(self.target, self.region)

    def with_region(self, region) -> "PresheafMorphism":
        region = Region.coerce(self.n, region)
        src = restrict(self.source, region.intersect(self.source.region))
        tgt = restrict(self.target, region.intersect(self.target.region))
        comps = {M: self.components[M] for M in src.region.intersect(tgt.region).indices()}
        return PresheafMorphism(src, tgt, comps, name=self.name)

    def naturality(self) -> ValidationReport:
        checked = 0
        for key, tgt in self.region.elementary_maps():
            M = key[3]
            left = self.components[tgt][self.source.actions[key]]
            right = self.target.actions[key][self.components[M]]
            checked += 1
            if not np.array_equal(left, right):
                c = int(np.nonzero(left != right)[0][0])
                return ValidationReport(False, checked, {
                    "identity": f"naturality at {action_key_str(key)}",
                    "index": fmt_index(M), "cell": c,
                    "got": int(left[c]), "expected": int(right[c])})
        return ValidationReport(True, checked, None)

    def is_levelwise_bijective(self) -> bool:
        for M in self.region.indices():
            comp = self.components[M]
            if comp.size != self.target.sizes[M] or np.unique(comp).size != comp.size:
                return False
        return True


def identity_morphism(phi: FinPresheaf) -> PresheafMorphism:
    return PresheafMorphism(phi, phi, {M: np.arange(phi.sizes[M], dtype=np.int64)
                                       for M in phi.region.indices()}, name="id")


def compose(F: PresheafMorphism, G: PresheafMorphism) -> PresheafMorphism:
    """``G o F`` (first ``F``, then ``G``)."""
    if F.target is not G.source:
        na, nb = F.target, G.source
        if na.n != nb.n:
            raise PresheafError("cannot compose morphisms of different arity")
    region = F.region.intersect(G.region)
    comps = {M: G.components[M][F.components[M]] for M in region.indices()}
    return PresheafMorphism(restrict(F.source, region), restrict(G.target, region), comps,
                            name=f"{G.name}.{F.name}")


def slice_morphism(F: PresheafMorphism, prefix: Sequence[int]) -> PresheafMorphism:
    prefix = tuple(prefix)
    src, tgt = slice_presheaf(F.source, prefix), slice_presheaf(F.target, prefix)
    region = F.region.slice(prefix)
    comps = {N: F.components[prefix + N] for N in region.indices()}
    return PresheafMorphism(restrict(src, region.intersect(src.region)),
                            restrict(tgt, region.intersect(tgt.region)), comps,
                            name=f"{F.name}[{fmt_index(prefix)}]")


def segal_map(phi: FinPresheaf, M: Sequence[int], m: int) -> PresheafMorphism:
    """``delta^[m]_M : Phi_{M,m} -> Phi_{M,1} x_{Phi_{M,0}} ... x_{Phi_{M,0}} Phi_{M,1}``.

    Sends a cell to its spine of consecutive edges on axis ``len(M) + 1``.  The
    morphism lives on the part of the region where both sides are stored.
    """
    M = tuple(M)
    s = len(M)
    if s >= phi.n:
        raise PresheafError("Segal map needs a free axis after the prefix")
    if M + (m,) + (0,) * (phi.n - s - 1) not in phi.region:
        raise PresheafError(f"Segal map at m={m} outside region {phi.region}")
    if m < 1:
        raise PresheafError("Segal map needs m >= 1")
    key = ("segal", M, m)
    if key in phi._cache:
        return phi._cache[key]
    base = slice_presheaf(phi, M)
    source = slice_presheaf(phi, M + (m,))
    target = fiber_power(base, m, region=source.region)
    source = restrict(source, target.region)
    comps = {}
    for N in target.region.indices():
        full = M + (m,) + N
        spine = np.stack([phi.on_axis(full, s + 1, dc.edge(m, a, a + 1))
                          for a in range(m)], axis=1) if phi.sizes[full] else \
            np.zeros((0, m), dtype=np.int64)
        loc = target.locate(N, spine)
        if loc.size and loc.min() < 0:
            raise PresheafError("spine of a cell is not a compatible chain (data is not functorial)")
        comps[N] = loc
    F = PresheafMorphism(source, target, comps, name=f"segal[{fmt_index(M)};{m}]")
    phi._cache[key] = F
    return F


def interchange_gamma(grid, phi: FinPresheaf | None = None, N: Sequence[int] = ()):
    """Transpose an m-tuple of m'-tuples into an m'-tuple of m-tuples.

    With ``phi`` (arity >= 2) the entries are cells of ``Phi(1, 1, N)`` and the
    compatibilities of the nested fiber powers are verified first: rows must
    chain along axis 1 and each inner tuple along axis 2.
    """
    grid = [tuple(int(x) for x in row) for row in grid]
    if not grid:
        return ()
    width = len(grid[0])
    if any(len(row) != width for row in grid):
        raise PresheafError("interchange needs a rectangular grid")
    if phi is not None:
        N = tuple(N)
        idx = (1, 1) + N
        s1, b1 = phi.source(idx, 1), phi.target(idx, 1)
        s2, b2 = phi.source(idx, 2), phi.target(idx, 2)
        for i, row in enumerate(grid):
            for j in range(width - 1):
                if b2[row[j]] != s2[row[j + 1]]:
                    raise PresheafError(f"inner chain {i} breaks at position {j}")
        for i in range(len(grid) - 1):
            for j in range(width):
                if b1[grid[i][j]] != s1[grid[i + 1][j]]:
                    raise PresheafError(f"outer chain breaks between rows {i} and {i + 1}")
    return tuple(tuple(grid[i][j] for i in range(len(grid))) for j in range(width))
