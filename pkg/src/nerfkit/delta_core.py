"""Combinatorics of the simplex category and its finite products.

Objects ``[m]`` are plain integers.  A morphism ``[m] -> [m']`` is a
:class:`MonotoneMap` storing its value sequence; a morphism of the n-fold
product is a :class:`ProductMap` with one monotone map per axis.

Every monotone map factors uniquely as ``d_{i1} ... d_{is} e_{j1} ... e_{jt}``
with ``i1 > ... > is`` (the values that are not hit) and ``j1 < ... < jt``
(the positions ``j`` with ``s(j) == s(j+1)``).  :func:`factorize` computes this
word; :func:`compose_word` rebuilds the map from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, Sequence


class DeltaError(ValueError):
    """Raised for malformed monotone maps or out-of-range indices."""


@dataclass(frozen=True)
class MultiIndex:
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if any(c < 0 for c in coords):
            raise DeltaError(f"negative coordinate in {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __str__(self):
        return ",".join(map(str, self.coords))

    @classmethod
    def parse(cls, text: str) -> "MultiIndex":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(t) for t in text.split(",")))


def ones(i: int) -> tuple[int, ...]:
    """The prefix ``I_i = (1, ..., 1)`` of length ``i``."""
    return (1,) * i


def zeros(k: int) -> tuple[int, ...]:
    """The suffix ``0_k = (0, ..., 0)`` of length ``k``."""
    return (0,) * k


@dataclass(frozen=True)
class MonotoneMap:
    src: int
    dst: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.src < 0 or self.dst < 0:
            raise DeltaError("negative object")
        if len(values) != self.src + 1:
            raise DeltaError(f"expected {self.src + 1} values, got {len(values)}")
        if any(v < 0 or v > self.dst for v in values):
            raise DeltaError(f"value out of range in {values} -> [{self.dst}]")
        if any(a > b for a, b in zip(values, values[1:])):
            raise DeltaError(f"values not weakly increasing: {values}")

    def __call__(self, j: int) -> int:
        return self.values[j]

    def __matmul__(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self @ other`` is the composite "other, then self"."""
        if other.dst != self.src:
            raise DeltaError(f"cannot compose [{other.src}]->[{other.dst}] with "
                             f"[{self.src}]->[{self.dst}]")
        return MonotoneMap(other.src, self.dst,
                           tuple(self.values[v] for v in other.values))

    @property
    def is_identity(self) -> bool:
        return self.src == self.dst and self.values == tuple(range(self.src + 1))

    def __repr__(self):
        return f"MonotoneMap([{self.src}]->[{self.dst}], {self.values})"


def identity(m: int) -> MonotoneMap:
    return MonotoneMap(m, m, tuple(range(m + 1)))


def face(m: int, i: int) -> MonotoneMap:
    """``d_i : [m-1] -> [m]``, the injection skipping ``i``."""
    if m < 1 or not 0 <= i <= m:
        raise DeltaError(f"face d_{i} into [{m}] out of range")
    return MonotoneMap(m - 1, m, tuple(j if j < i else j + 1 for j in range(m)))


def degeneracy(m: int, i: int) -> MonotoneMap:
    """``e_i : [m+1] -> [m]``, the surjection hitting ``i`` twice."""
    if m < 0 or not 0 <= i <= m:
        raise DeltaError(f"degeneracy e_{i} onto [{m}] out of range")
    return MonotoneMap(m + 1, m, tuple(j if j <= i else j - 1 for j in range(m + 2)))


def simplex_map(m: int, vertices: Sequence[int]) -> MonotoneMap:
    """The map ``[len(vertices)-1] -> [m]`` listing ``vertices`` (e.g. delta_ij, delta_ijk)."""
    vertices = tuple(vertices)
    if not vertices:
        raise DeltaError("need at least one vertex")
    return MonotoneMap(len(vertices) - 1, m, vertices)


def vertex(m: int, i: int) -> MonotoneMap:
    if not 0 <= i <= m:
        raise DeltaError(f"vertex {i} not in [{m}]")
    return MonotoneMap(0, m, (i,))


def edge(m: int, i: int, j: int) -> MonotoneMap:
    if not 0 <= i < j <= m:
        raise DeltaError(f"edge ({i},{j}) needs 0 <= i < j <= {m}")
    return MonotoneMap(1, m, (i, j))


def elementary(kind: str, *params: int) -> MonotoneMap:
    """Named elementary maps.

    ``elementary("face", m, i)`` is ``d_i : [m-1] -> [m]``;
    ``elementary("degeneracy", m, i)`` is ``e_i : [m+1] -> [m]``;
    ``elementary("vertex", m, i)`` is ``[0] -> [m]`` hitting ``i``;
    ``elementary("edge", m, i, j)`` is ``[1] -> [m]`` with values ``(i, j)``.
    """
    table = {"face": face, "d": face, "degeneracy": degeneracy, "e": degeneracy,
             "vertex": vertex, "edge": edge}
    try:
        fn = table[kind]
    except KeyError:
        raise DeltaError(f"unknown elementary kind {kind!r}") from None
    return fn(*params)


def factorize(sigma: MonotoneMap) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Canonical word of ``sigma : [n] -> [m]``.

    Returns ``(faces, degeneracies)`` where each entry is ``(level, index)`` and
    ``level`` is the codomain of that elementary map.  Reading left to right,
    ``sigma = d_{i1} ... d_{is} e_{j1} ... e_{jt}``.
    """
    n, m = sigma.src, sigma.dst
    hit = set(sigma.values)
    missing = sorted((v for v in range(m + 1) if v not in hit), reverse=True)
    repeats = [j for j in range(n) if sigma.values[j] == sigma.values[j + 1]]
    faces = [(m - pos, i) for pos, i in enumerate(missing)]
    base = m - len(missing)
    degens = [(base + pos, j) for pos, j in enumerate(repeats)]
    return faces, degens


def compose_word(src: int, faces: Sequence[tuple[int, int]],
                 degens: Sequence[tuple[int, int]]) -> MonotoneMap:
    """Rebuild a map from a factorization word; ``src`` is the domain ``[n]``."""
    result = identity(src)
    for level, j in reversed(list(degens)):
        result = degeneracy(level, j) @ result
    for level, i in reversed(list(faces)):
        result = face(level, i) @ result
    return result


def monotone_maps(n: int, m: int) -> Iterator[MonotoneMap]:
    """All monotone maps ``[n] -> [m]`` in lexicographic order of values."""
    for values in combinations_with_replacement(range(m + 1), n + 1):
        yield MonotoneMap(n, m, values)


@dataclass(frozen=True)
class ProductMap:
    """A morphism ``N -> M`` of the n-fold product, one monotone map per axis."""

    components: tuple[MonotoneMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def src(self) -> tuple[int, ...]:
        return tuple(c.src for c in self.components)

    @property
    def dst(self) -> tuple[int, ...]:
        return tuple(c.dst for c in self.components)

    def __matmul__(self, other: "ProductMap") -> "ProductMap":
        if self.n != other.n:
            raise DeltaError("arity mismatch in product composition")
        return ProductMap(tuple(a @ b for a, b in zip(self.components, other.components)))

    @property
    def is_identity(self) -> bool:
        return all(c.is_identity for c in self.components)


def product_identity(M: Sequence[int]) -> ProductMap:
    return ProductMap(tuple(identity(m) for m in M))


def product_elementary(M: Sequence[int], k: int, kind: str, i: int) -> ProductMap:
    """``d^k_i`` or ``e^k_i``: identity on every axis but ``k`` (1-based).

    For a face the axis-k component is ``d_i : [m_k - 1] -> [m_k]``, for a
    degeneracy it is ``e_i : [m_k + 1] -> [m_k]``; ``M`` is the codomain.
    """
    M = tuple(M)
    if not 1 <= k <= len(M):
        raise DeltaError(f"axis {k} out of range for arity {len(M)}")
    comps = [identity(m) for m in M]
    comps[k - 1] = elementary(kind, M[k - 1], i)
    return ProductMap(tuple(comps))


def on_axis(M: Sequence[int], k: int, sigma: MonotoneMap) -> ProductMap:
    """Place ``sigma`` on axis ``k`` (1-based); identities elsewhere.  ``M`` is the codomain."""
    M = tuple(M)
    if sigma.dst != M[k - 1]:
        raise DeltaError("codomain mismatch")
    comps = [identity(m) for m in M]
    comps[k - 1] = sigma
    return ProductMap(tuple(comps))
