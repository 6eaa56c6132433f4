import itertools

import numpy as np
import pytest

from conftest import STRICT_NAMES, multi_nerve_of, strict_by_name
from nerfkit import fixtures as fx
from nerfkit.cat_nerve import nerve
from nerfkit.nerf_validator import is_n_nerf, is_strict_nerf
from nerfkit.strict_ncat import (StrictError, multi_nerve, strict_from_category, strict_truncate,
                                 validate_strict)
from nerfkit.truncation import truncate


def _godement_violations(C, i, j, k):
    """All quadruples ``(a, a', b, b')`` breaking interchange, by brute force."""
    cj, ci = C.comp[(j, k)], C.comp[(i, k)]
    out = []
    cells = range(C.sizes[k])
    for a, a2, b, b2 in itertools.product(cells, repeat=4):
        if cj[a, a2] < 0 or cj[b, b2] < 0 or ci[a, b] < 0 or ci[a2, b2] < 0:
            continue
        if ci[cj[a, a2], cj[b, b2]] != cj[ci[a, b], ci[a2, b2]]:
            out.append((a, a2, b, b2))
    return out


def test_category_as_strict_one_category():
    for C in (fx.z2_delooping(), fx.arrow_cat(), fx.s3_delooping()):
        assert validate_strict(strict_from_category(C)).ok


def test_strict2_z2_valid():
    C = fx.strict2_z2()
    assert C.sizes == [1, 2, 2]
    assert validate_strict(C).ok
    assert _godement_violations(C, 0, 1, 2) == []


@pytest.mark.parametrize("C", fx.strict_fixtures() + fx.strict3_fixtures(), ids=lambda C: C.name)
def test_fixtures_valid(C):
    assert validate_strict(C).ok
    for i, j, k in itertools.combinations(range(C.n + 1), 3):
        assert _godement_violations(C, i, j, k) == []


def test_broken_godement_names_quadruple():
    C = fx.broken_godement()
    rep = validate_strict(C)
    assert not rep.ok and rep.violation["law"].startswith("Godement")
    bad = _godement_violations(C, 0, 1, 2)
    assert tuple(rep.violation["quadruple"]) == min(bad)
    with pytest.raises(StrictError):
        multi_nerve(C, 2)


def test_globularity_violation():
    C = fx.walking_2cell()
    C.b[1] = C.b[1].copy()
    C.b[1][4] = 2          # alpha : f => f would still be fine; retarget to I_x
    rep = validate_strict(C)
    assert not rep.ok


def test_multi_nerve_arity_one_is_nerve():
    for C in (fx.z2_delooping(), fx.arrow_cat(), fx.poset_category(3)):
        a, b = multi_nerve(strict_from_category(C), 4), nerve(C, 4)
        assert a.sizes == b.sizes
        for k in a.actions:
            assert np.array_equal(a.actions[k], b.actions[k])


def test_multi_nerve_pairs_of_one_cells():
    phi = multi_nerve(fx.strict2_z2(), 3)
    C = fx.strict2_z2()
    pairs = [(f, g) for f in range(C.sizes[1]) for g in range(C.sizes[1])
             if C.b[0][f] == C.s[0][g]]
    assert phi.sizes[(2, 0)] == len(pairs) == 4


def test_multi_nerve_of_terminal():
    phi = multi_nerve(fx.strict_fixtures()[1], 3)
    assert all(v == 1 for v in phi.sizes.values())


def test_multi_nerve_cell_counts_match_grids():
    C = strict_by_name("walking_2cell")
    phi = multi_nerve(C, 2)
    # (1,1): 2-cells; (1,2): vertically composable pairs of 2-cells
    assert phi.sizes[(1, 1)] == C.sizes[2]
    assert phi.sizes[(1, 2)] == int(np.sum(C.comp[(1, 2)] >= 0))
    assert phi.sizes[(2, 1)] == int(np.sum(C.comp[(0, 2)] >= 0))


@pytest.mark.parametrize("name", STRICT_NAMES)
def test_multi_nerve_is_strict_nerf(name):
    phi = multi_nerve_of(name, 3)
    assert is_strict_nerf(phi).ok


@pytest.mark.parametrize("C", fx.strict3_fixtures(), ids=lambda C: C.name)
def test_strict_three_categories(C):
    phi = multi_nerve(C, 3)
    assert is_strict_nerf(phi).ok
    assert is_n_nerf(phi).ok


@pytest.mark.parametrize("name", ["crossed_id_z2", "z2_loops", "walking_2cell", "strict2_s3",
                                  "strict_z2_aut"])
def test_truncate_commutes_with_multi_nerve(name):
    C = strict_by_name(name)
    TC, _ = strict_truncate(C)
    assert validate_strict(TC).ok
    lhs = truncate(multi_nerve(C, 3)).presheaf
    rhs = multi_nerve(TC, 3)
    assert lhs.sizes == rhs.sizes
    for k in rhs.actions:
        assert np.array_equal(lhs.actions[k], rhs.actions[k]), k
