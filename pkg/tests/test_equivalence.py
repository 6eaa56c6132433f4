import itertools

import numpy as np
import pytest

from conftest import multi_nerve_of, nerve_of
from nerfkit import fixtures as fx
from nerfkit.cat_nerve import extract_category, nerve
from nerfkit.equivalence import (arrow_source_target, arrows, characterisation_verdict,
                                 hom_class_maps, inner_classes, inner_equivalent,
                                 is_outer_k_equivalence)
from nerfkit.presheaf import PresheafError, compose, identity_morphism
from nerfkit.truncation import truncate_morphism
import oracles


def test_inner_reflexive():
    phi = nerve_of("z2_delooping")
    assert inner_equivalent(phi, 0, 1, 1)


def test_inner_distinct_at_level_zero():
    phi = nerve_of("z2_delooping")
    assert not inner_equivalent(phi, 0, 0, 1)


def test_inner_two_cell_connects_one_cells():
    phi = multi_nerve_of("crossed_id_z2")
    assert inner_equivalent(phi, 1, 0, 1)
    _, cmaps, _ = oracles.truncation_oracle(phi)
    assert cmaps[(1,)][0] == cmaps[(1,)][1]


def test_inner_rejects_non_parallel():
    phi = nerve_of("contractible_groupoid")
    with pytest.raises(PresheafError):
        inner_equivalent(phi, 0, 0, 1)      # aa vs ab have different targets


def _parallel_pairs(phi, j):
    s, b = arrow_source_target(phi, j) if j else (None, None)
    cells = range(arrows(phi, j))
    for u, v in itertools.product(cells, repeat=2):
        if j == 0 or (s[u] == s[v] and b[u] == b[v]):
            yield u, v


@pytest.mark.parametrize("getter,k", [
    (lambda: multi_nerve_of("crossed_id_z2"), 1), (lambda: multi_nerve_of("z2_loops"), 1),
    (lambda: multi_nerve_of("strict2_s3"), 2), (lambda: multi_nerve_of("walking_2cell"), 1),
])
def test_inner_is_equivalence_relation(getter, k):
    phi = getter()
    j = phi.n - k
    rel = {(u, v) for u, v in _parallel_pairs(phi, j) if inner_equivalent(phi, k, u, v)}
    cells = range(arrows(phi, j))
    assert all((u, u) in rel for u in cells)
    assert all((v, u) in rel for u, v in rel)
    assert all((u, w) in rel for u, v in rel for v2, w in rel if v == v2)
    cls = inner_classes(phi, k)
    assert rel == {(u, v) for u, v in _parallel_pairs(phi, j) if cls[u] == cls[v]}


def test_identity_is_equivalence():
    for phi in (nerve_of("arrow_cat"), multi_nerve_of("walking_2cell"), nerve_of("discrete2")):
        for k in range(phi.n + 1):
            assert is_outer_k_equivalence(identity_morphism(phi), k).verdict


def _functor_of(F):
    """Object/arrow maps of a morphism between nerves, plus the two categories."""
    C, D = extract_category(F.source), extract_category(F.target)
    return C, D, F.components[(0,)], F.components[(1,)]


@pytest.mark.parametrize("idx", range(6))
def test_morphism_fixtures_verdicts(idx):
    name, F, expected = fx.morphism_fixtures(3)[idx]
    rep = is_outer_k_equivalence(F, F.n)
    assert rep.verdict == expected
    assert characterisation_verdict(F) == expected
    if not rep.verdict:
        assert rep.witnesses
    if F.n == 1:
        assert oracles.functor_is_equivalence(*_functor_of(F)) == expected


def test_contractible_to_terminal_k1():
    F = fx.morphism_fixtures(3)[0][1]
    rep = is_outer_k_equivalence(F, 1)
    assert rep.verdict and not rep.witnesses


def test_inclusion_has_existence_witness():
    F = fx.morphism_fixtures(3)[3][1]
    rep = is_outer_k_equivalence(F, 1)
    assert not rep.verdict
    assert rep.witnesses[0]["h"] == 0 and rep.witnesses[0]["reason"] == "existence"


def test_witnesses_sorted_and_deterministic():
    F = fx.morphism_fixtures(3)[4][1]
    a = is_outer_k_equivalence(F, 1).to_json()
    b = is_outer_k_equivalence(F, 1).to_json()
    assert a == b
    keys = [(w["h"], w["u"], w["v"], w["w"]) for w in a["witnesses"]]
    assert keys == sorted(keys)


def test_hom_class_maps_identity():
    assert hom_class_maps(identity_morphism(multi_nerve_of("z2_loops"))).all_bijective


def test_hom_class_maps_collapse_two_to_one():
    F = fx.to_terminal(nerve_of("z2_delooping"))
    hm = hom_class_maps(F)
    entry = next(e for e in hm.entries if (e["i"], e["u"], e["v"]) == (1, 0, 0))
    assert entry["surjective"] and not entry["injective"]
    assert hm.top_bijective and not hm.all_bijective


def test_hom_class_maps_equivalence():
    assert hom_class_maps(fx.morphism_fixtures(3)[0][1]).all_bijective


def test_audit_attached():
    F = fx.morphism_fixtures(3)[2][1]
    rep = is_outer_k_equivalence(F, 2, audit=True)
    assert rep.hom_map_audit and all(e["bijective"] for e in rep.hom_map_audit)


def _section(bound=3):
    """terminal -> contractible groupoid, picking object 0."""
    one = nerve(fx.terminal_category(), bound)
    cg = nerve(fx.contractible_groupoid(), bound)
    return fx.cell_map_morphism(one, cg, [[0], [0]], name="pick0")


def test_composite_of_equivalences():
    s = _section()
    p = fx.to_terminal(s.target)
    for F, G in ((s, p), (p, s), (identity_morphism(s.source), s)):
        assert is_outer_k_equivalence(F, 1).verdict and is_outer_k_equivalence(G, 1).verdict
        GF = compose(F, G)
        assert is_outer_k_equivalence(GF, 1).verdict
        assert oracles.functor_is_equivalence(*_functor_of(GF))


def test_composite_of_equivalences_arity_two():
    phi = multi_nerve_of("crossed_id_z2")
    F = fx.to_terminal(phi)
    G = identity_morphism(F.target)
    assert is_outer_k_equivalence(compose(identity_morphism(phi), compose(F, G)), 2).verdict


@pytest.mark.parametrize("idx", range(6))
def test_truncation_lowers_equivalence_level(idx):
    _, F, _ = fx.morphism_fixtures(3)[idx]
    for k in range(1, F.n + 1):
        if is_outer_k_equivalence(F, k).verdict:
            assert is_outer_k_equivalence(truncate_morphism(F), k - 1).verdict


def test_two_object_contractible_to_terminal_arity_two():
    from nerfkit.homotopy import equivalence_via_pi
    F = fx.to_terminal(multi_nerve_of("strict2_contractible"))
    assert is_outer_k_equivalence(F, 2).verdict
    assert characterisation_verdict(F)
    assert equivalence_via_pi(F, compare=False).verdict
