import itertools

import pytest
from hypothesis import given, strategies as st

from nerfkit import delta_core as dc


def test_factorize_identity_is_empty():
    assert dc.factorize(dc.identity(2)) == ([], [])


def test_factorize_elementary_face():
    assert dc.factorize(dc.face(2, 1)) == ([(2, 1)], [])


def test_factorize_constant_map_recomposes():
    const = dc.MonotoneMap(2, 1, (0, 0, 0))
    faces, degens = dc.factorize(const)
    assert faces == [(1, 1)]
    # normal form: degeneracy indices increasing (e_0 then e_1)
    assert degens == [(0, 0), (1, 1)]
    assert dc.compose_word(2, faces, degens) == const
    # the word e_0 e_0 denotes the same map
    assert dc.compose_word(2, faces, [(0, 0), (1, 0)]) == const
    # every map [2] -> [1] recomposes from its word (exhaustive)
    for sigma in dc.monotone_maps(2, 1):
        assert dc.compose_word(2, *dc.factorize(sigma)) == sigma


def test_elementary_maps():
    assert dc.vertex(3, 0).values == (0,)
    assert dc.edge(2, 0, 2).values == (0, 2)
    assert dc.face(3, 2).values == (0, 1, 3)
    assert dc.elementary("edge", 2, 0, 2) == dc.edge(2, 0, 2)
    with pytest.raises(dc.DeltaError):
        dc.elementary("bogus", 1)


def test_product_elementary():
    p = dc.product_elementary((1, 1), 2, "face", 0)
    assert p.components == (dc.identity(1), dc.face(1, 0))
    p = dc.product_elementary((0,), 1, "degeneracy", 0)
    assert p.components == (dc.degeneracy(0, 0),)
    assert p.components[0].values == (0, 0)
    p = dc.product_elementary((2, 3), 1, "face", 2)
    assert p.components == (dc.face(2, 2), dc.identity(3))


def test_invalid_maps_rejected():
    with pytest.raises(dc.DeltaError):
        dc.MonotoneMap(1, 1, (1, 0))
    with pytest.raises(dc.DeltaError):
        dc.MonotoneMap(1, 1, (0, 2))
    with pytest.raises(dc.DeltaError):
        dc.edge(2, 1, 1)


def test_factorization_round_trip_exhaustive():
    count = 0
    for n in range(7):
        for m in range(7):
            for sigma in dc.monotone_maps(n, m):
                assert dc.compose_word(n, *dc.factorize(sigma)) == sigma
                count += 1
    assert count == sum(len(list(itertools.combinations_with_replacement(range(m + 1), n + 1)))
                        for n in range(7) for m in range(7))


@given(st.integers(0, 6), st.integers(0, 6), st.data())
def test_factorization_round_trip_random(n, m, data):
    values = sorted(data.draw(st.lists(st.integers(0, m), min_size=n + 1, max_size=n + 1)))
    sigma = dc.MonotoneMap(n, m, tuple(values))
    faces, degens = dc.factorize(sigma)
    assert dc.compose_word(n, faces, degens) == sigma
    # faces strictly decreasing indices; the word is in canonical order
    assert [i for _, i in faces] == sorted({i for _, i in faces}, reverse=True)


def test_simplicial_identities():
    d, e = dc.face, dc.degeneracy
    for m in range(2, 6):
        for j in range(m + 1):
            for i in range(j):
                # d_j d_i = d_i d_{j-1}  (as maps into [m])
                assert d(m, j) @ d(m - 1, i) == d(m, i) @ d(m - 1, j - 1)
    for m in range(0, 5):
        for j in range(m + 1):
            for i in range(j + 1):
                # e_j e_i = e_i e_{j+1} : [m+2] -> [m]
                assert e(m, j) @ e(m + 1, i) == e(m, i) @ e(m + 1, j + 1)
    for m in range(1, 5):
        for j in range(m + 1):           # e_j : [m] -> [m-1], d_i : [m] -> [m+1]
            for i in range(m + 2):
                lhs = e(m, j) @ d(m + 1, i)
                if i < j:
                    assert lhs == d(m, i) @ e(m - 1, j - 1)
                elif i in (j, j + 1):
                    assert lhs.is_identity
                else:
                    assert lhs == d(m, i - 1) @ e(m - 1, j)


def test_spine_edge_as_composed_faces():
    for m in range(1, 6):
        for k in range(m):
            word = dc.identity(m)
            for lvl, i in _spine_word(m, k):
                word = word @ dc.face(lvl, i)
            assert word == dc.edge(m, k, k + 1)


def _spine_word(m, k):
    """Faces removing every vertex but k, k+1, outermost first."""
    out = []
    lvl = m
    for i in range(m, k + 1, -1):
        out.append((lvl, i))
        lvl -= 1
    for i in range(k - 1, -1, -1):
        out.append((lvl, i))
        lvl -= 1
    return out


def test_product_maps_compose_componentwise():
    a = dc.ProductMap((dc.face(2, 1), dc.identity(1)))
    b = dc.ProductMap((dc.face(1, 0), dc.degeneracy(1, 0)))
    c = a @ b
    assert c.components == (dc.face(2, 1) @ dc.face(1, 0), dc.degeneracy(1, 0))
    assert c.src == (0, 2) and c.dst == (2, 1)
    assert dc.MultiIndex.parse("2,1").coords == (2, 1)
