from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scheme_atlas.core import intersection_tensor, krein_tensor
from scheme_atlas.families import FamilyParams, attenuated_domain, nbj_domain
from scheme_atlas.leonard import (
    adjacent,
    build_principal_module,
    check_AM_property,
    is_simplex,
    verify_leonard_pair,
)
from scheme_atlas.oracle import scheme_for


def test_is_simplex():
    assert is_simplex(nbj_domain(6, 2)) == 2
    assert is_simplex(nbj_domain(4, 3)) is None
    assert is_simplex(attenuated_domain(4, 2, 2)) == 2
    assert is_simplex([(0,), (1,), (2,)]) == 2
    assert is_simplex([(0, 0), (1, 0), (0, 1), (2, 0)]) is None


def test_adjacent_examples():
    assert adjacent((1, 1), (1, 1))
    assert adjacent((1, 1), (2, 1))
    assert adjacent((1, 1), (1, 0))
    assert adjacent((1, 1), (2, 0))
    assert adjacent((1, 1), (0, 2))
    assert not adjacent((1, 1), (2, 2))
    assert not adjacent((1, 1), (0, 0))
    assert not adjacent((0, 0), (2, 0))
    assert adjacent((0, 1, 0), (1, 0, 0))
    assert not adjacent((1, 1, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        adjacent((0, 1), (0, 1, 0))


vec3 = st.tuples(*[st.integers(0, 4)] * 3)


@given(vec3, vec3)
def test_adjacent_symmetric_and_reflexive(a, b):
    assert adjacent(a, a)
    assert adjacent(a, b) == adjacent(b, a)
    if adjacent(a, b):
        assert abs(sum(a) - sum(b)) <= 1


def test_am_property_nbj():
    fp = FamilyParams.of("nbj", r=3, n=6, k=2)
    t = fp.table()
    rep = check_AM_property(t, intersection_tensor(t), krein_tensor(t))
    assert rep.applicable and rep.verdict
    assert "grlex" in rep.q_orders
    assert "grlex" not in rep.p_orders and rep.p_orders


def test_am_property_not_applicable():
    t = FamilyParams.of("nbj", r=3, n=4, k=3).table()
    rep = check_AM_property(t, intersection_tensor(t), krein_tensor(t))
    assert not rep.applicable and rep.verdict is None


def test_am_property_catches_nonadjacent_entry():
    t = FamilyParams.of("att", n=4, m=2, l=2, q=2).table()
    assert check_AM_property(t, intersection_tensor(t), krein_tensor(t)).verdict
    K = krein_tensor(t).copy()
    K.set((1, 0), (0, 0), (0, 2), Fraction(1))
    rep = check_AM_property(t, intersection_tensor(t), K)
    assert rep.verdict is False
    assert ((1, 0), (0, 0), (0, 2)) in rep.q_nonadjacent


@pytest.fixture(scope="module")
def att_module():
    fp = FamilyParams.of("att", n=2, m=1, l=1, q=2)
    s = scheme_for(fp)
    t = fp.table()
    return s, t, build_principal_module(s, t)


def test_module_facts(att_module):
    s, t, pm = att_module
    assert pm.ok, pm.facts
    assert pm.dim == 3
    o = pm.domain.position((0, 0))
    assert pm.vstar[o] == [Fraction(1, s.size)] * s.size
    for a in range(pm.dim):
        for b in range(a + 1, pm.dim):
            assert sum(x * y for x, y in zip(pm.vstar[a], pm.vstar[b])) == 0
            assert sum(x * y for x, y in zip(pm.v[a], pm.v[b])) == 0


@pytest.mark.parametrize(
    "fp",
    [
        FamilyParams.of("att", n=2, m=1, l=1, q=2),
        FamilyParams.of("nbj", r=3, n=4, k=2),
        FamilyParams.of("nbj", r=4, n=4, k=2),
    ],
)
def test_leonard_pair(fp):
    s, t = scheme_for(fp), fp.table()
    K, I = krein_tensor(t), intersection_tensor(t)
    rep = verify_leonard_pair(build_principal_module(s, t, krein=K, inter=I), krein=K, inter=I)
    assert rep.verdict, rep.to_dict()
    assert all(rep.passed(c) for c in "i ii iii iv v vi vii".split())


def test_every_base_point():
    fp = FamilyParams.of("att", n=2, m=1, l=1, q=2)
    s, t = scheme_for(fp), fp.table()
    for x0 in range(s.size):
        assert verify_leonard_pair(build_principal_module(s, t, x0=x0)).verdict


def test_generation_failure_is_reported(att_module):
    _, _, pm = att_module
    gens = pm.domain.generators()
    bad = pm
    for k, i in enumerate(gens):
        for alpha in pm.domain:
            if alpha != (1, 0):
                bad = bad.with_dual_coefficient(k, alpha, (1, 0), 0)
    rep = verify_leonard_pair(bad)
    assert not rep.passed("v")
    witnesses = rep.results["v"]
    assert any((1, 0) in w["unreached"] for w in witnesses)
    assert rep.passed("vii")


def test_non_simplex_domain_fails_all():
    fp = FamilyParams.of("nbj", r=3, n=4, k=3)
    s, t = scheme_for(fp), fp.table()
    rep = verify_leonard_pair(build_principal_module(s, t))
    assert not rep.verdict
    assert rep.to_dict()["conditions"]["i"]["pass"] is False


def test_bad_base_point():
    fp = FamilyParams.of("att", n=2, m=1, l=1, q=2)
    with pytest.raises(ValueError):
        build_principal_module(scheme_for(fp), fp.table(), x0=99)
