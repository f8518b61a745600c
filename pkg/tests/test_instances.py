import itertools

import pytest

from lawcat.errors import GateUnavailable
from lawcat.instances import (
    FinitePreorder,
    VariableSet,
    approach_surrogate,
    companion_varset,
    enumerate_preorders,
    is_closed_varset,
    is_irreducible_varset,
    point_distance,
    preorder_roundtrip,
    representable_varset,
    row_from_variable_set,
    sober_vs_lawvere,
    space_from_preorder,
    space_from_tvcategory,
    tvcategory_from_space,
    variable_set_from_row,
    weakly_sober,
)
from lawcat.quantale import builtin
from lawcat.tvcat import all_tvcategories
from lawcat.vmatrix import VMatrix


def test_preorder_counts():
    assert len(enumerate_preorders(1)) == 1
    assert len(enumerate_preorders(2)) == 4
    assert len(enumerate_preorders(3)) == 29


def test_preorder_closure():
    p = FinitePreorder.from_pairs(3, [(0, 1), (1, 2)])
    assert p.leq[0][2]
    assert p.is_valid()


def test_discrete_preorder_gives_discrete_space():
    p = FinitePreorder.from_pairs(2, [])
    space = space_from_preorder(p)
    assert len(space.closed_sets()) == 4


def test_two_chain_gives_sierpinski():
    p = FinitePreorder.from_pairs(2, [(0, 1)])
    space = space_from_preorder(p)
    assert space.closed_sets() == [(), (0,), (0, 1)]
    assert len(space.open_sets()) == 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_roundtrip_bijective(n):
    seen = set()
    for p in enumerate_preorders(n):
        rep = preorder_roundtrip(p)
        assert rep["roundtrip_identity"]
        assert rep["verdicts_agree"]
        seen.add(p.leq)
    assert len(seen) == len(enumerate_preorders(n))


def test_sierpinski_weakly_sober():
    space = space_from_preorder(FinitePreorder.from_pairs(2, [(0, 1)]))
    rep = weakly_sober(space)
    assert rep["weakly_sober"]
    assert len(rep["irreducible"]) == 2
    assert all(d["generic_points"] for d in rep["irreducible"])


def test_indiscrete_has_non_unique_generic_point():
    space = space_from_preorder(FinitePreorder.from_pairs(2, [(0, 1), (1, 0)]))
    rep = weakly_sober(space)
    assert rep["weakly_sober"]
    assert rep["irreducible"][0]["generic_points"] == (0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sober_agrees_with_completeness(n):
    for p in enumerate_preorders(n):
        rep = sober_vs_lawvere(space_from_preorder(p))
        assert rep["agree"] and rep["weakly_sober"]


def test_space_category_space_roundtrip(ext_factory):
    ext = ext_factory("ultra", "2")
    for p in enumerate_preorders(3)[:10]:
        space = space_from_preorder(p)
        cat = tvcategory_from_space(ext, space)
        assert space_from_tvcategory(cat).order == p


def test_variable_set_bijection_with_rows():
    q = builtin("plus3")
    for row in itertools.product(range(q.n), repeat=2):
        vs = variable_set_from_row(q, 2, row)
        assert row_from_variable_set(vs) == row
        assert vs.levels[q.bottom] == frozenset(range(2))


def test_variable_set_rejects_non_monotone():
    q = builtin("plus3")
    with pytest.raises(ValueError):
        VariableSet(q, 1, {0: {0}, 1: {0}, 2: set(), 3: {0}})


def test_point_distance_is_minimum():
    ext_q = builtin("plus3")
    from lawcat.laxext import LaxExtension
    from lawcat.monad import builtin_monad
    from lawcat.tvcat import TVCategory

    ext = LaxExtension(builtin_monad("ultra"), ext_q)
    a = VMatrix(ext_q, 2, 2, ((3, 2), (0, 3)))
    cat = TVCategory(ext, 2, a)
    assert point_distance(cat, [0, 1], 1) == 0
    assert point_distance(cat, [0], 1) == 1
    assert point_distance(cat, [1], 0) is None
    assert point_distance(cat, [], 0) is None


def test_one_point_distance_one_profile_not_irreducible(ext_factory):
    # regression for the attained-infimum reading: over the real half-line
    # the positive-level form would fail at levels below one, which do not
    # exist on the finite chain, so level zero must participate
    ext = ext_factory("ultra", "plus3")
    q = ext.q
    cats = all_tvcategories(ext, 1)
    cat = cats[0]
    row = (q.index("1"),)
    vs = variable_set_from_row(q, 1, row)
    assert is_closed_varset(cat, vs)
    assert is_irreducible_varset(cat, vs, positive_only=True)
    assert not is_irreducible_varset(cat, vs)


def test_one_point_surrogate():
    from lawcat.laxext import LaxExtension
    from lawcat.monad import builtin_monad

    ext = LaxExtension(builtin_monad("ultra"), builtin("plus3"))
    for cat in all_tvcategories(ext, 1):
        rep = approach_surrogate(cat)
        assert rep["equivalence"]
        reps = representable_varset(
            cat, variable_set_from_row(cat.q, 1, tuple(cat.a.data[0]))
        )
        assert reps == [0]


@pytest.mark.parametrize("n", [1, 2])
def test_surrogate_equivalence_exhaustive(ext_factory, n):
    ext = ext_factory("ultra", "plus3")
    for cat in all_tvcategories(ext, n):
        rep = approach_surrogate(cat)
        assert rep["equivalence"], (cat.a.data, rep["mismatches"][:2])
        assert rep["analysis_complete"] == rep["lawvere_complete"]


def test_discrete_structure_profiles(ext_factory):
    # every irreducible closed family over the discrete structure is a
    # point's distance profile
    ext = ext_factory("ultra", "plus3")
    q = ext.q
    from lawcat.tvcat import discrete_tvcategory

    cat = discrete_tvcategory(ext, 2)
    profiles = []
    for row in itertools.product(range(q.n), repeat=2):
        vs = variable_set_from_row(q, 2, row)
        if is_closed_varset(cat, vs) and is_irreducible_varset(cat, vs):
            reps = representable_varset(cat, vs)
            assert reps, row
            profiles.append(row)
    assert len(profiles) == 2


def test_companion_matches_adjoint_levels(ext_factory):
    ext = ext_factory("ultra", "plus3")
    from lawcat.completeness import decide_lawvere_complete

    for cat in all_tvcategories(ext, 2)[:8]:
        verdict = decide_lawvere_complete(cat)
        for pair in verdict["pairs"]:
            row = pair.phi.data[0]
            vs = variable_set_from_row(ext.q, 2, row)
            comp = companion_varset(cat, vs)
            psi_row = tuple(r[0] for r in pair.psi.data)
            psi_levels = variable_set_from_row(ext.q, 2, psi_row).levels
            assert {v: frozenset(pts) for v, pts in comp.items()} == psi_levels


def test_surrogate_requires_chain(ext_factory):
    ext = ext_factory("ultra", "pset2")
    cat = all_tvcategories(ext, 1)[0]
    with pytest.raises(GateUnavailable):
        approach_surrogate(cat)
