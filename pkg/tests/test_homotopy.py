import numpy as np
import pytest

from conftest import GROUPOID_STRICT, double_nerve_of, multi_nerve_of, nerve_of
from nerfkit import fixtures as fx
from nerfkit.cat_nerve import extract_category
from nerfkit.equivalence import is_outer_k_equivalence
from nerfkit.nerf_validator import is_n_groupoid
from nerfkit.presheaf import fiber_power, identity_morphism, slice_presheaf, terminal
from nerfkit.strict_ncat import multi_nerve
from nerfkit.truncation import truncate
from nerfkit.homotopy import (HomotopyError, a_i, check_abelian, component_category,
                              equivalence_via_pi, homotopy_group, induced_pi,
                              quotient_composition, resolve_base, unit_simplex, whisker_iso)
import oracles


def _table(G):
    return oracles.group_from_table(G.table)


def _product(A, B):
    k = len(B)
    return [[A[x // k][y // k] * k + B[x % k][y % k] for y in range(len(A) * k)]
            for x in range(len(A) * k)]


def test_component_category_of_nerve():
    for name in ("z2_delooping", "arrow_cat", "s3_delooping", "contractible_groupoid"):
        phi = nerve_of(name)
        assert oracles.category_isomorphic(component_category(phi, 1), fx.generate(name))


def test_component_category_two_of_weak(weak_nerve):
    C2 = component_category(weak_nerve, 2)
    W = fx.weak_cocycle()
    assert C2.n_objects == W.n1
    for f in range(C2.n_objects):
        assert C2.hom(f, f).size == 2
        assert oracles.groups_isomorphic(_table(homotopy_group(weak_nerve, 2, f)),
                                         oracles.cyclic(2))


def test_component_category_one_is_truncation():
    for phi in (multi_nerve_of("crossed_id_z2"), multi_nerve_of("walking_2cell"),
                double_nerve_of("weak_cocycle", 2)):
        C1 = component_category(phi, 1)
        ref = extract_category(truncate(phi).presheaf)
        assert np.array_equal(C1.comp, ref.comp)
        assert np.array_equal(C1.src, ref.src) and np.array_equal(C1.tgt, ref.tgt)


def test_component_category_range():
    with pytest.raises(HomotopyError):
        component_category(nerve_of("z2_delooping"), 2)


def test_pi1_z2():
    G = homotopy_group(nerve_of("z2_delooping"), 1, 0)
    assert G.check_group() and oracles.groups_isomorphic(_table(G), oracles.cyclic(2))


def test_pi_terminal():
    phi = terminal(2, 3)
    for i in (1, 2):
        G = homotopy_group(phi, i, 0)
        assert G.order == 1 and check_abelian(G, i)


def test_pi2_weak_lifted_basepoint(weak_nerve):
    G = homotopy_group(weak_nerve, 2, 0, base_level=0)
    assert G.order == 2 and G.check_group() and check_abelian(G, 2)
    cell, lvl = resolve_base(weak_nerve, 2, "I_x")
    assert homotopy_group(weak_nerve, 2, cell, lvl).order == 2


def test_pi1_s3_non_abelian():
    G = homotopy_group(nerve_of("s3_delooping"), 1, 0)
    assert G.order == 6 and G.check_group() and not check_abelian(G, 1)
    assert oracles.is_group(_table(G)) and not oracles.is_abelian(_table(G))


def test_non_groupoid_rejected():
    with pytest.raises(HomotopyError):
        homotopy_group(nerve_of("arrow_cat"), 1, 0)


def test_basepoint_not_found(weak_nerve):
    with pytest.raises(HomotopyError):
        homotopy_group(weak_nerve, 2, 99)


@pytest.mark.parametrize("name", GROUPOID_STRICT + ["weak_cocycle"])
def test_higher_pi_abelian(name):
    phi = double_nerve_of(name, 2) if name == "weak_cocycle" else multi_nerve_of(name, 2)
    assert is_n_groupoid(phi).ok
    C2 = component_category(phi, 2)
    for f in range(C2.n_objects):
        G = homotopy_group(phi, 2, f)
        assert G.check_group() and check_abelian(G, 2)
        assert oracles.is_abelian(_table(G))


def test_induced_identity(weak_nerve):
    hom = induced_pi(identity_morphism(weak_nerve), 2, 0)
    assert np.array_equal(hom.mapping, np.arange(hom.source.order))


def test_induced_collapse():
    hom = induced_pi(fx.to_terminal(nerve_of("z2_delooping")), 1, 0)
    assert hom.is_homomorphism and not hom.injective and hom.target.order == 1


def test_induced_sub_groupoid_injective():
    zl = multi_nerve(fx.z2_loops(), 2)
    kl = multi_nerve(fx.klein_loops(), 2)
    F = fx.cell_map_morphism(zl, kl, [[0], [0], [0, 2]], name="Z2 -> Z2xZ2")
    assert F.naturality().ok
    hom = induced_pi(F, 2, 0)
    assert hom.is_homomorphism and hom.injective and not hom.surjective
    img = {int(hom.target.elements[p]) for p in hom.mapping}
    assert img == {0, 2}


@pytest.mark.parametrize("idx", range(6))
def test_equivalence_via_pi_agrees(idx):
    name, F, expected = fx.morphism_fixtures(3)[idx]
    v = equivalence_via_pi(F)
    assert v.verdict == expected == v.outer == is_outer_k_equivalence(F, F.n).verdict


def test_equivalence_via_pi_failure_names_pi1():
    v = equivalence_via_pi(fx.to_terminal(nerve_of("z2_delooping")))
    assert not v.verdict and v.failures[0]["i"] == 1 and not v.failures[0]["injective"]


def test_whisker_degenerate_simplex(weak_nerve_ext):
    for f in range(weak_nerve_ext.sizes[(1, 0)]):
        w = whisker_iso(weak_nerve_ext, unit_simplex(weak_nerve_ext, f))
        assert w.is_isomorphism


def test_whisker_every_simplex(weak_nerve_ext):
    for tau in range(weak_nerve_ext.sizes[(2, 0)]):
        lift = whisker_iso(weak_nerve_ext, tau, route="lift")
        conj = whisker_iso(weak_nerve_ext, tau, route="conjugate")
        assert lift.is_isomorphism and conj.is_isomorphism
        assert np.array_equal(lift.mapping, conj.mapping)
        # on Z/2 the only automorphism is the identity map
        assert lift.mapping.tolist() == [0, 1]


def test_whisker_section_independent(weak_nerve_ext):
    for tau in range(weak_nerve_ext.sizes[(2, 0)]):
        a = whisker_iso(weak_nerve_ext, tau, route="conjugate", order="min")
        b = whisker_iso(weak_nerve_ext, tau, route="conjugate", order="max")
        assert np.array_equal(a.mapping, b.mapping)


def test_whisker_rejects_bad_tau(weak_nerve_ext):
    with pytest.raises(HomotopyError):
        whisker_iso(weak_nerve_ext, 10_000)


@pytest.mark.parametrize("C", fx.strict3_fixtures(), ids=lambda C: C.name)
def test_a_i_identifies_pi3(C):
    phi = multi_nerve(C, 3)
    A = a_i(phi, 3)
    assert A.n == 2
    C3 = component_category(phi, 3)
    for f in range(C3.n_objects):
        G3 = homotopy_group(phi, 3, f)
        G2 = homotopy_group(A, 2, f)
        assert G3.elements.tolist() == G2.elements.tolist()
        assert np.array_equal(G3.table, G2.table)


@pytest.mark.parametrize("name", ["z2_loops", "crossed_id_z2", "strict2_s3"])
def test_fiber_power_pi_is_product(name):
    phi = multi_nerve_of(name, 3)
    gl = slice_presheaf(phi, (1,))
    fp = fiber_power(phi, 2)
    assert is_n_groupoid(fp).ok
    for obj, (f, g) in enumerate(fp.rows((0,)).tolist()):
        P = homotopy_group(fp, 1, obj)
        A, B = homotopy_group(gl, 1, f), homotopy_group(gl, 1, g)
        assert oracles.groups_isomorphic(_table(P), _product(_table(A), _table(B)))


@pytest.mark.parametrize("getter,i", [
    (lambda: nerve_of("s3_delooping"), 1), (lambda: nerve_of("arrow_cat"), 1),
    (lambda: multi_nerve_of("crossed_id_z2"), 1), (lambda: multi_nerve_of("walking_2cell"), 1),
    (lambda: multi_nerve_of("walking_2cell"), 2), (lambda: double_nerve_of("weak_cocycle", 2), 1),
    (lambda: double_nerve_of("weak_cocycle", 2), 2),
])
def test_quotient_composition_section_independent(getter, i):
    phi = getter()
    a = quotient_composition(phi, i, "min")
    b = quotient_composition(phi, i, "max")
    assert np.array_equal(a, b)
    assert np.array_equal(a, component_category(phi, i).comp)
