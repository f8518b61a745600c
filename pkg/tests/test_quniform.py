import itertools

import pytest

from lawcat.instances import FinitePreorder
from lawcat.quniform import (
    FilterPair,
    QuasiUniformity,
    adjoint_module_pairs,
    all_filter_pairs,
    all_quniformities,
    bimodule_filter_bridge,
    cauchy_machinery,
    check_lax_morphism,
    check_uniform_continuity,
    curated_three_point,
    decide_cauchy_complete,
    decide_lawvere_q,
    discrete_quniformity,
    indiscrete_quniformity,
    is_cauchy,
    lax_algebra_bridge,
    neighbourhood_pair,
    point_induced_module,
    preorder_quniformity,
    validate_quniformity,
)


def test_discrete_and_indiscrete_validate():
    assert validate_quniformity(discrete_quniformity(3))["ok"]
    assert validate_quniformity(indiscrete_quniformity(3))["ok"]


def test_non_reflexive_base_rejected():
    u = QuasiUniformity(2, [frozenset({(0, 0)})])
    rep = validate_quniformity(u)
    assert not rep["ok"] and rep["law"] == "reflexivity"
    assert rep["witness"] == (0, 1)


def test_missing_square_root_rejected():
    u = QuasiUniformity(3, [frozenset({(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)})])
    rep = validate_quniformity(u)
    assert not rep["ok"] and rep["law"] == "square-root"


def test_preorder_base_passes_by_transitivity():
    p = FinitePreorder.from_pairs(3, [(0, 1), (1, 2)])
    assert validate_quniformity(preorder_quniformity(p))["ok"]


def test_every_map_from_discrete_uniformly_continuous():
    d = discrete_quniformity(3)
    targets = [discrete_quniformity(2), indiscrete_quniformity(2),
               preorder_quniformity(FinitePreorder.from_pairs(2, [(0, 1)]))]
    for v in targets:
        for f in itertools.product(range(2), repeat=3):
            assert check_uniform_continuity(f, d, v)["ok"]


def test_continuity_failure_witness():
    d = discrete_quniformity(2)
    p = preorder_quniformity(FinitePreorder.from_pairs(2, [(0, 1)]))
    # from the chain into the discrete uniformity the collapse 0,1 -> 0,1
    # must fail: the chain relates 0 to 1 but the target diagonal does not
    rep = check_uniform_continuity((0, 1), p, d)
    assert not rep["ok"]


def test_lax_algebra_bridge_and_entourage_count():
    rep = lax_algebra_bridge(discrete_quniformity(2))
    assert rep["ok"]
    assert rep["entourage_count"] == 4


def test_lax_morphisms_match_uniform_continuity():
    instances = [
        discrete_quniformity(3),
        indiscrete_quniformity(3),
        preorder_quniformity(FinitePreorder.from_pairs(3, [(0, 1), (1, 2)])),
        preorder_quniformity(FinitePreorder.from_pairs(3, [(0, 1), (1, 0)])),
    ]
    for u in instances:
        for v in instances:
            for f in itertools.product(range(3), repeat=3):
                assert (
                    check_lax_morphism(f, u, v)["ok"]
                    == check_uniform_continuity(f, u, v)["ok"]
                )


def test_neighbourhood_pair_is_minimal_cauchy():
    for u in [discrete_quniformity(3), indiscrete_quniformity(3),
              preorder_quniformity(FinitePreorder.from_pairs(3, [(0, 1)]))]:
        for x0 in range(3):
            rep = cauchy_machinery(u, neighbourhood_pair(u, x0))
            assert rep["is_cauchy"] and rep["is_minimal"]
            assert x0 in rep["converges_to"]


def test_principal_whole_carrier_pair_on_indiscrete():
    u = indiscrete_quniformity(2)
    fp = FilterPair(2, {0, 1}, {0, 1})
    assert cauchy_machinery(u, fp)["is_cauchy"]


def test_non_intersecting_pair_rejected_at_construction():
    with pytest.raises(ValueError):
        FilterPair(2, {0}, {1})
    with pytest.raises(ValueError):
        FilterPair(2, set(), {0})


def test_complete_discrete_and_indiscrete():
    for u in (discrete_quniformity(2), indiscrete_quniformity(3)):
        rep = decide_cauchy_complete(u)
        assert rep["complete"] and rep["minimal_are_neighbourhoods"]


def test_all_two_point_uniformities_complete_and_bridge():
    us = all_quniformities(2)
    assert len(us) == 4
    for u in us:
        assert decide_cauchy_complete(u)["complete"]
        bridge = bimodule_filter_bridge(u)
        assert bridge["forward"] and bridge["bijection"]
        rep = decide_lawvere_q(u)
        assert rep["agree"] and rep["lawvere"]


def test_curated_three_point_sweep():
    for u in curated_three_point():
        assert validate_quniformity(u)["ok"]
        bridge = bimodule_filter_bridge(u)
        assert bridge["forward"] and bridge["bijection"]
        assert decide_lawvere_q(u)["agree"]


def test_point_induced_pair_maps_to_neighbourhood_filter():
    for u in curated_three_point():
        for x0 in range(u.n):
            mod = point_induced_module(u, x0)
            assert mod.is_phi_bimodule() and mod.is_psi_bimodule() and mod.is_adjoint()
            assert mod.filter_pair() == neighbourhood_pair(u, x0)


def test_filter_pair_count_matches_module_pairs():
    for u in all_quniformities(2) + curated_three_point():
        bridge = bimodule_filter_bridge(u)
        assert bridge["module_pairs"] == bridge["minimal_cauchy_pairs"]


def test_adjunction_inequalities_decompose_into_filter_and_cauchy():
    # raw pairs: the unit says the two minima intersect, the counit says
    # their rectangle fits the entourage minimum; together they say the
    # induced pair is Cauchy, and adding the module laws says minimal
    from lawcat.quniform import RelFilterModule

    for u in all_quniformities(2) + curated_three_point():
        n = u.n
        for fmask, gmask in itertools.product(range(1, 1 << n), repeat=2):
            phi = frozenset(x for x in range(n) if fmask & (1 << x))
            psi = frozenset(x for x in range(n) if gmask & (1 << x))
            cand = RelFilterModule(u, phi, psi)
            intersects = bool(phi & psi)
            cauchy_rect = all((x, y) in u.w for x in psi for y in phi)
            assert cand.is_adjoint() == (intersects and cauchy_rect)
            if intersects:
                fp = FilterPair(n, psi, phi)
                assert is_cauchy(u, fp) == cauchy_rect
                if cand.is_adjoint():
                    full = cand.is_phi_bimodule() and cand.is_psi_bimodule()
                    assert full == cauchy_machinery(u, fp)["is_minimal"]


def test_up_closure_idempotent():
    u = preorder_quniformity(FinitePreorder.from_pairs(3, [(0, 1)]))
    again = QuasiUniformity(u.n, u.entourages())
    assert again.w == u.w
    assert again.entourages() == u.entourages()


def test_up_closure_independent_of_base_presentation():
    chain = FinitePreorder.from_pairs(2, [(0, 1)])
    w = frozenset({(0, 0), (1, 1), (0, 1)})
    full = frozenset({(0, 0), (1, 1), (0, 1), (1, 0)})
    u1 = QuasiUniformity(2, [w])
    u2 = QuasiUniformity(2, [w, full])
    assert u1.entourages() == u2.entourages()
