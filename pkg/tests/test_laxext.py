import itertools
import random

import pytest

from lawcat.errors import GateUnavailable
from lawcat.laxext import (
    LaxExtension,
    check_embeds_maps,
    check_extension_laws,
    check_xi,
    check_xi_compat,
    check_xi_functor,
)
from lawcat.quantale import Quantale, builtin, validate_quantale
from lawcat.vmatrix import VMatrix

PAIRS = [(m, q) for m in ("id", "powerset", "ultra") for q in ("2", "c3", "plus3", "pset2")]


def rand_matrix(rng, q, rows, cols):
    return VMatrix(q, rows, cols, [[rng.randrange(q.n) for _ in range(cols)] for _ in range(rows)])


def test_identity_monad_extension_is_identity(ext_factory):
    ext = ext_factory("id", "c3")
    rng = random.Random(2)
    for _ in range(20):
        r = rand_matrix(rng, ext.q, 2, 3)
        assert ext.extend(r) == r


def test_powerset_extension_is_egli_milner_lifting(ext_factory):
    # oracle: subsets of the graph, projected on both sides
    ext = ext_factory("powerset", "2")
    q = ext.q
    rng = random.Random(3)
    for _ in range(30):
        r = rand_matrix(rng, q, 2, 2)
        tr = ext.extend(r)
        rel = [(x, y) for x in range(2) for y in range(2) if r.data[x][y] == q.unit]
        expected = set()
        for mask in range(1 << len(rel)):
            chosen = [rel[i] for i in range(len(rel)) if mask & (1 << i)]
            a = 0
            b = 0
            for (x, y) in chosen:
                a |= 1 << x
                b |= 1 << y
            expected.add((a, b))
        for i in range(4):
            for j in range(4):
                assert (tr.data[i][j] == q.unit) == ((i, j) in expected)


def test_ultra_extension_on_principal_points(ext_factory):
    # the infimum-supremum description over filter members collapses to r
    ext = ext_factory("ultra", "c3")
    q = ext.q
    monad = ext.monad
    rng = random.Random(4)
    for _ in range(20):
        r = rand_matrix(rng, q, 3, 2)
        tr = ext.extend(r)
        for x in range(3):
            for y in range(2):
                acc = q.top
                for a in monad.family(3, x):
                    for b in monad.family(2, y):
                        best = q.bottom
                        for xx in a:
                            for yy in b:
                                best = q.join(best, r.data[xx][yy])
                        acc = q.meet(acc, best)
                assert tr.data[x][y] == r.data[x][y] == acc


@pytest.mark.parametrize("mname,qname", PAIRS)
def test_extension_laws(ext_factory, mname, qname):
    ext = ext_factory(mname, qname)
    laws = check_extension_laws(ext, samples=20)
    assert laws["ok"], {k: laws[k] for k in "abcdefg"}
    assert laws["f"]["applicable"] == ext.q.is_meet_tensor()
    assert laws["m_natural"]


@pytest.mark.parametrize("mname,qname", PAIRS)
def test_extension_acts_as_functor_on_maps(ext_factory, mname, qname):
    assert check_embeds_maps(ext_factory(mname, qname))["ok"]


def test_xi_identity_monad_is_identity(ext_factory):
    ext = ext_factory("id", "plus3")
    assert ext.xi() == tuple(range(ext.q.n))


def test_xi_powerset_is_meet(ext_factory):
    # oracle scans all thresholds directly on the defining formula
    ext = ext_factory("powerset", "c3")
    q = ext.q
    xi = ext.xi()
    for mask in range(1 << q.n):
        members = [v for v in range(q.n) if mask & (1 << v)]
        if members:
            assert xi[mask] == q.meet_all(members)
        else:
            assert xi[mask] == q.top


def test_xi_ultra_is_principal_point(ext_factory):
    ext = ext_factory("ultra", "pset2")
    assert ext.xi() == tuple(range(ext.q.n))


@pytest.mark.parametrize("mname,qname", PAIRS)
def test_xi_em_laws_and_element_matrix_link(ext_factory, mname, qname):
    assert check_xi(ext_factory(mname, qname))["ok"]


@pytest.mark.parametrize("mname,qname", PAIRS)
def test_xi_is_structure_preserving(ext_factory, mname, qname):
    assert check_xi_functor(ext_factory(mname, qname))["ok"]


@pytest.mark.parametrize("mname,qname", PAIRS)
def test_xi_compat_report(ext_factory, mname, qname):
    rep = check_xi_compat(ext_factory(mname, qname), samples=12)
    assert rep["unit_inequality"]
    assert rep["tensor_inequality"]
    assert rep["span_algebra_diagram"]
    assert all(rep["hom_preserves_nonempty_sups"].values())
    assert all(rep["hom_xi_inequality"].values())


def test_tensor_strictness_fails_exactly_for_powerset_plus_chain(ext_factory):
    flags = {}
    for mname, qname in PAIRS:
        flags[(mname, qname)] = check_xi_compat(ext_factory(mname, qname), samples=4)[
            "tensor_strict"
        ]
    for key, flag in flags.items():
        assert flag == (key != ("powerset", "plus3")), (key, flag)


def _zmod2_quantale():
    labels = ("{}", "{e}", "{g}", "{e,g}")
    leq = [[(i & j) == i for j in range(4)] for i in range(4)]

    def prod(i, j):
        out = 0
        for a in range(2):
            for b in range(2):
                if i & (1 << a) and j & (1 << b):
                    out |= 1 << (a ^ b)
        return out

    tensor = [[prod(i, j) for j in range(4)] for i in range(4)]
    q = Quantale("zmod2", labels, leq, tensor, unit=1)
    assert validate_quantale(q)["ok"]
    return q


def test_admissibility_refusal(monads):
    # nonempty empty-carrier image plus a unit strictly below the top
    q = _zmod2_quantale()
    with pytest.raises(GateUnavailable):
        LaxExtension(monads["powerset"], q)
    LaxExtension(monads["id"], q)
    LaxExtension(monads["ultra"], q)


def test_memoization_returns_identical_object(ext_factory):
    ext = ext_factory("powerset", "2")
    r = VMatrix(ext.q, 2, 2, ((0, 1), (1, 0)))
    assert ext.extend(r) is ext.extend(VMatrix(ext.q, 2, 2, ((0, 1), (1, 0))))
