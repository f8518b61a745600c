import itertools
import random

import pytest

from lawcat.errors import BudgetExceeded
from lawcat.monad import (
    FiniteMonad,
    PowersetMonad,
    builtin_monad,
    builtin_monads,
    check_bc,
    check_functor_laws,
    check_monad_laws,
    check_naturality,
    enumerate_filter_families,
    monad_capabilities,
    span_extend_relation,
)


def test_catalog():
    assert sorted(builtin_monads()) == ["id", "powerset", "ultra"]


def test_powerset_carrier_and_union():
    p = builtin_monad("powerset")
    assert p.labels(2, ("0", "1")) == ("{}", "{0}", "{1}", "{0,1}")
    # multiplication is union: the family {{0},{0,1}} has index with bits 1 and 3
    fam = (1 << 1) | (1 << 3)
    assert p.mult_map(2)[fam] == 0b11


def test_powerset_unit_is_singleton():
    p = builtin_monad("powerset")
    assert p.unit_map(3) == (1, 2, 4)


def test_ultrafilters_on_three_points_are_exactly_principal():
    families = enumerate_filter_families(3)
    assert len(families) == 3
    u = builtin_monad("ultra")
    assert sorted(families, key=sorted) == sorted(
        (u.family(3, i) for i in range(3)), key=sorted
    )


def test_ultrafilter_family_properties():
    u = builtin_monad("ultra")
    fam = u.family(3, 1)
    full = frozenset(range(3))
    for a in fam:
        for b in fam:
            assert a & b in fam
    for a in fam:
        assert all(c in fam for c in map(frozenset, _supersets(a, 3)))
    for mask in range(1 << 3):
        s = frozenset(b for b in range(3) if mask & (1 << b))
        assert (s in fam) != (full - s in fam)


def _supersets(s, n):
    rest = [x for x in range(n) if x not in s]
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            yield s | set(extra)


def test_t_empty():
    assert builtin_monad("powerset").size(0) == 1
    assert builtin_monad("ultra").size(0) == 0
    assert builtin_monad("id").size(0) == 0


@pytest.mark.parametrize("name", ["id", "powerset", "ultra"])
def test_functor_and_naturality_laws(name):
    m = builtin_monad(name)
    cap = 2 if name == "powerset" else 3
    assert check_functor_laws(m, cap)["ok"]
    assert check_naturality(m, cap)["ok"]


def test_monad_laws():
    assert check_monad_laws(builtin_monad("id"), 4)["ok"]
    assert check_monad_laws(builtin_monad("ultra"), 4)["associativity_checked_sizes"] == [
        0,
        1,
        2,
        3,
        4,
    ]
    rep = check_monad_laws(builtin_monad("powerset"), 3)
    assert rep["ok"]
    # the triple powerset carrier only fits the budget up to two points
    assert rep["associativity_checked_sizes"] == [0, 1, 2]


def test_corrupted_mult_fails_with_witness():
    class Corrupted(PowersetMonad):
        def mult_map(self, n):
            table = list(super().mult_map(n))
            if len(table) > 3:
                table[3] = 0
            return tuple(table)

    rep = check_monad_laws(Corrupted(), 2)
    assert not rep["ok"]
    assert rep["witness"] is not None


@pytest.mark.parametrize("name,max_n", [("id", 3), ("ultra", 3), ("powerset", 3)])
def test_bc_reports(name, max_n):
    rep = check_bc(builtin_monad(name), max_n)
    assert rep["functor_bc"] and rep["m_bc"], rep


def test_capability_flags():
    caps = monad_capabilities(builtin_monad("powerset"))
    assert not caps["t1_is_one"]
    assert not caps["t_empty_is_empty"]
    caps = monad_capabilities(builtin_monad("ultra"))
    assert caps["t1_is_one"]
    assert caps["t_empty_is_empty"]


def test_powerset_extension_matches_span_reference():
    p = builtin_monad("powerset")
    rng = random.Random(5)
    for _ in range(300):
        nx, ny = rng.randrange(0, 4), rng.randrange(0, 4)
        pairs = [(x, y) for x in range(nx) for y in range(ny) if rng.random() < 0.45]
        assert p.extend_relation(pairs, nx, ny) == span_extend_relation(p, pairs, nx, ny)


def test_identity_and_ultra_extension_is_the_relation_itself():
    for name in ("id", "ultra"):
        m = builtin_monad(name)
        pairs = [(0, 1), (1, 0), (2, 1)]
        assert m.extend_relation(pairs, 3, 2) == frozenset(pairs)


def test_powerset_budget_guard():
    with pytest.raises(BudgetExceeded):
        builtin_monad("powerset").mult_map(5)
