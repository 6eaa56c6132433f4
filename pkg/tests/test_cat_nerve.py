import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nerfkit import delta_core as dc
from nerfkit import fixtures as fx
from nerfkit.cat_nerve import (CategoryError, FinCategory, check_isomorphism, extract_category,
                               is_one_nerve, iso_classes, nerve)
from nerfkit.presheaf import FinPresheaf, PresheafError, terminal, validate
import oracles


def test_nerve_of_terminal_is_terminal():
    phi = nerve(fx.terminal_category(), 4)
    assert all(v == 1 for v in phi.sizes.values())


def test_nerve_z2_sizes():
    phi = nerve(fx.z2_delooping(), 4)
    C = fx.z2_delooping()
    for m in range(5):
        assert phi.sizes[(m,)] == 2 ** m == (len(oracles.chains(C, m)) if m else 2 ** 0)


def test_nerve_discrete_constant():
    phi = nerve(fx.discrete(2), 4)
    assert [phi.sizes[(m,)] for m in range(5)] == [2] * 5


def test_nerve_sizes_match_chain_oracle():
    for C in (fx.arrow_cat(), fx.s3_delooping(), fx.contractible_groupoid(), fx.poset_category(3)):
        phi = nerve(C, 3)
        for m in range(1, 4):
            assert phi.sizes[(m,)] == len(oracles.chains(C, m))


def test_nerve_rejects_invalid_category():
    with pytest.raises(CategoryError):
        nerve(fx.broken_category(), 3)


def test_is_one_nerve_on_nerves():
    for C in (fx.z2_delooping(), fx.arrow_cat(), fx.s3_delooping(), fx.discrete(3)):
        rep = is_one_nerve(nerve(C, 4))
        assert rep.ok and rep.certified_up_to == 4


def _two_fillers():
    """Z/2 objects/arrows with two distinct fillers over the spine (g, g)."""
    base = nerve(fx.z2_delooping(), 2)
    sizes = dict(base.sizes)
    sizes[(2,)] += 1
    actions = {k: v.copy() for k, v in base.actions.items()}
    gg = int(base.locate((2,), np.array([[1, 1]]))[0])
    for key in list(actions):
        kind, k, i, M = key
        if M == (2,):
            actions[key] = np.append(actions[key], actions[key][gg])
    return FinPresheaf(1, 2, sizes, actions)


def test_injectivity_witness():
    phi = _two_fillers()
    assert validate(phi).ok
    rep = is_one_nerve(phi)
    assert not rep.ok and rep.witness["kind"] == "injectivity"


def test_surjectivity_witness():
    rep = is_one_nerve(fx.broken_horn(3))
    assert not rep.ok and rep.witness["kind"] == "surjectivity"


def test_extract_round_trip_z2():
    C = fx.z2_delooping()
    E = extract_category(nerve(C, 3))
    assert np.array_equal(E.comp, C.comp)
    assert oracles.category_isomorphic(C, E)


def test_extract_terminal():
    E = extract_category(terminal(1, 2))
    assert E.n_objects == 1 and E.n_arrows == 1


def test_extract_arrow_category():
    E = extract_category(nerve(fx.arrow_cat(), 3))
    assert (E.n_objects, E.n_arrows) == (2, 3)
    assert oracles.category_isomorphic(E, fx.arrow_cat())


def test_extract_needs_degree_two():
    with pytest.raises(PresheafError):
        extract_category(terminal(1, 1))


def test_iso_classes():
    assert iso_classes(fx.discrete(2)).count == 2
    assert iso_classes(fx.contractible_groupoid()).count == 1
    assert iso_classes(fx.z2_delooping()).count == 1
    assert iso_classes(fx.arrow_cat()).count == 2


def test_source_target_of_composite():
    for C in (fx.s3_delooping(), fx.poset_category(3), fx.random_category(3)):
        phi = nerve(C, 2)
        d02 = phi.on_axis((2,), 1, dc.edge(2, 0, 2))
        d01 = phi.on_axis((2,), 1, dc.edge(2, 0, 1))
        d12 = phi.on_axis((2,), 1, dc.edge(2, 1, 2))
        s, b = phi.source((1,), 1), phi.target((1,), 1)
        assert np.array_equal(s[d02], s[d01])
        assert np.array_equal(b[d02], b[d12])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip_random_categories(seed):
    C = fx.random_category(seed)
    assert C.validate().ok
    E = extract_category(nerve(C, 3))
    ident_o = np.arange(C.n_objects)
    ident_a = np.arange(C.n_arrows)
    assert check_isomorphism(C, E, ident_o, ident_a)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_iso_classes_invariant_under_relabeling(seed, rnd):
    C = fx.random_category(seed)
    perm = list(range(C.n_objects))
    rnd.shuffle(perm)
    perm = np.array(perm, dtype=np.int64)
    D = FinCategory(C.n_objects, perm[C.src], perm[C.tgt], C.ident[np.argsort(perm)], C.comp)
    assert D.validate().ok
    cls_c = iso_classes(C).t
    cls_d = iso_classes(D).t
    part_c = {frozenset(int(perm[x]) for x in np.nonzero(cls_c == k)[0]) for k in np.unique(cls_c)}
    part_d = {frozenset(np.nonzero(cls_d == k)[0].tolist()) for k in np.unique(cls_d)}
    assert part_c == part_d == oracles.iso_class_partition(D)
