import numpy as np
from hypothesis import given, settings, strategies as st

from nerfkit import _core
from nerfkit._core import _pykernels

try:
    from nerfkit._core import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _partition_oracle(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [min(y for y in range(n) if find(y) == find(x)) for x in range(n)]


pairs_strategy = st.integers(1, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1),
                                                       st.integers(0, n - 1)), max_size=60)))


@settings(max_examples=100, deadline=None)
@given(pairs_strategy)
def test_uf_min_labels(data):
    n, pairs = data
    a = np.array([p[0] for p in pairs], dtype=np.int64)
    b = np.array([p[1] for p in pairs], dtype=np.int64)
    ref = _partition_oracle(n, pairs)
    assert _pykernels.uf_min_labels(n, a, b).tolist() == ref
    if _ckernels is not None:
        assert _ckernels.uf_min_labels(n, a, b).tolist() == ref


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-10**12, 10**12), unique=True, max_size=50),
       st.lists(st.integers(-10**12, 10**12), max_size=50))
def test_key_table(keys, extra):
    query = np.array(keys[::2] + extra, dtype=np.int64)
    ref = [keys.index(q) if q in keys else -1 for q in query.tolist()]
    assert _pykernels.KeyTable(np.array(keys, dtype=np.int64)).find(query).tolist() == ref
    if _ckernels is not None:
        assert _ckernels.KeyTable(np.array(keys, dtype=np.int64)).find(query).tolist() == ref


def test_backend_reported():
    assert _core.BACKEND in ("cython", "python")
