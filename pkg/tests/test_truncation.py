import numpy as np
import pytest

from conftest import double_nerve_of, multi_nerve_of, nerve_of
from nerfkit import fixtures as fx
from nerfkit.presheaf import empty, fiber_power, identity_morphism, slice_presheaf, terminal
from nerfkit.presheaf import compose as compose_morphisms
from nerfkit.strict_ncat import multi_nerve, strict_truncate
from nerfkit.truncation import (TruncationError, is_one_truncatable, pi0, pi0_labels, truncate,
                                truncate_morphism, truncation_tower)
import oracles


def _same_presheaf(a, b):
    assert a.n == b.n and a.region == b.region
    assert a.sizes == b.sizes
    assert set(a.actions) == set(b.actions)
    for k in a.actions:
        assert np.array_equal(a.actions[k], b.actions[k]), k


def test_one_truncatable_examples():
    assert is_one_truncatable(multi_nerve_of("z2_loops", 3)).ok
    assert is_one_truncatable(terminal(2, 3)).ok
    rep = is_one_truncatable(fx.broken_horn(3))
    assert not rep.ok and rep.index == ()


def test_truncate_nerve_is_iso_classes():
    T = truncate(nerve_of("contractible_groupoid", 3)).presheaf
    assert T.n == 0 and T.sizes[()] == 1
    T = truncate(nerve_of("discrete2", 3)).presheaf
    assert T.sizes[()] == 2


def test_truncate_terminal():
    T = truncate(terminal(2, 3)).presheaf
    assert T.n == 1 and all(v == 1 for v in T.sizes.values())


def test_truncate_matches_oracle():
    for phi in (multi_nerve_of("crossed_id_z2", 3), multi_nerve_of("z2_loops", 3),
                multi_nerve_of("walking_2cell", 3), double_nerve_of("weak_cocycle", 2)):
        sizes, cmaps, actions = oracles.truncation_oracle(phi)
        tr = truncate(phi)
        assert tr.presheaf.sizes == sizes
        for N, cm in cmaps.items():
            assert tr.class_map[N].tolist() == cm
        for k, v in actions.items():
            assert tr.presheaf.actions[k].tolist() == v


def test_truncate_multi_nerve_equals_multi_nerve_of_truncation():
    C = fx.crossed_id_z2()
    TC, t = strict_truncate(C)
    assert TC.sizes[1] < C.sizes[1]          # two 1-cells collapse
    lhs = truncate(multi_nerve(C, 3)).presheaf
    rhs = multi_nerve(TC, 3)
    assert lhs.sizes == rhs.sizes
    for k in lhs.actions:
        assert np.array_equal(lhs.actions[k], rhs.actions[k])


def test_tower_of_z2():
    tw = truncation_tower(nerve_of("z2_delooping", 3), 1)
    assert tw.height == 1 and tw.levels[1].sizes[()] == 1


def test_tower_of_terminal():
    tw = truncation_tower(terminal(3, 3), 3)
    assert all(all(v == 1 for v in L.sizes.values()) for L in tw.levels)


def test_tower_of_double_nerve(weak_nerve):
    tw = truncation_tower(weak_nerve, 2)
    assert tw.levels[2].sizes[()] == 1


def test_tower_error_names_level():
    with pytest.raises(TruncationError) as exc:
        truncation_tower(fx.broken_horn(3), 1)
    assert exc.value.level == 0


def test_pi0():
    assert pi0(nerve_of("z2_delooping", 3)).sizes[()] == 1
    assert len(pi0_labels(nerve_of("discrete2", 3))) == 2
    assert pi0(empty(1, 3)).sizes[()] == 0


def test_truncation_functorial():
    phi = multi_nerve_of("z2_loops", 3)
    F = identity_morphism(phi)
    TF = truncate_morphism(F)
    for M, c in TF.components.items():
        assert np.array_equal(c, np.arange(c.size))
    G = fx.to_terminal(phi)
    GF = compose_morphisms(F, G)
    lhs = truncate_morphism(GF)
    rhs = compose_morphisms(truncate_morphism(F), truncate_morphism(G))
    for M in lhs.components:
        assert np.array_equal(lhs.components[M], rhs.components[M])


@pytest.mark.parametrize("name", ["z2_loops", "crossed_id_z2", "walking_2cell", "strict2_s3"])
def test_slice_commutes_with_truncation(name):
    phi = multi_nerve_of(name, 3)
    T = truncate(phi).presheaf
    for m in range(4):
        _same_presheaf(truncate(slice_presheaf(phi, (m,))).presheaf, slice_presheaf(T, (m,)))


@pytest.mark.parametrize("name", ["z2_loops", "crossed_id_z2", "strict2_contractible"])
def test_fiber_power_commutes_with_truncation(name):
    phi = multi_nerve_of(name, 3)
    T = truncate(phi).presheaf
    for m in (2, 3):
        psi = fiber_power(phi, m)
        tpsi = truncate(psi)
        fpT = fiber_power(T, m)
        # the canonical map (x_1..x_m) -> (t x_1, .., t x_m) induces a bijection
        t = truncate(phi).class_map[(1,)]
        img = fpT.locate((), t[psi.rows((0,))])
        assert img.min() >= 0
        per_class = {}
        for x, c in enumerate(tpsi.class_map[()]):
            per_class.setdefault(int(c), set()).add(int(img[x]))
        assert all(len(v) == 1 for v in per_class.values())
        assert sorted(next(iter(v)) for v in per_class.values()) == list(range(fpT.sizes[()]))
