from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scheme_atlas.core import Domain, krein_from_spectral, krein_tensor, table_invariant_failures
from scheme_atlas.exact import q_number
from scheme_atlas.families import (
    FamilyParams,
    attenuated_closed_krein,
    attenuated_domain,
    attenuated_table,
    bilinear_closed_krein,
    bilinear_table,
    closed_form_krein,
    grassmann_a_star,
    grassmann_b_star,
    grassmann_c_star,
    grassmann_closed_krein,
    grassmann_table,
    hamming_closed_krein,
    hamming_table,
    johnson_a_star,
    johnson_closed_krein,
    johnson_table,
    nbj_closed_krein,
    nbj_domain,
    nonbinary_johnson_table,
    verify_closed_forms,
)


def test_hamming_table_examples():
    t = hamming_table(1, 2)
    assert t.P == ((1, 1), (1, -1)) and t.Q == t.P
    assert hamming_table(3, 2).valencies == (1, 3, 3, 1)
    assert hamming_table(4, 3).valencies[0] == 1
    assert hamming_table(4, 3).size == 81


def test_johnson_table_examples():
    t = johnson_table(4, 2)
    assert t.valencies == (1, 4, 1)
    assert t.multiplicities == (1, 3, 2)
    assert johnson_table(9, 4).multiplicities[0] == 1
    assert johnson_table(9, 4).classes == 4


def test_bilinear_table_examples():
    t = bilinear_table(1, 1, 2)
    assert t.size == 2 and t.valencies == (1, 1)
    assert bilinear_table(2, 1, 2).valencies == (1, 3)
    assert bilinear_table(2, 1, 2).P[1][1] == -1
    assert bilinear_table(3, 2, 3).valencies[0] == 1


def test_grassmann_table_examples():
    t = grassmann_table(4, 2, 2)
    assert t.size == 35
    assert t.valencies == (1, 18, 16)
    assert t.multiplicities[0] == 1
    assert t.P[1][1] == 3


def test_nbj_table_examples():
    t = nonbinary_johnson_table(3, 3, 2)
    assert t.size == 12
    assert set(t.rel_domain) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)}
    assert t.k((0, 0)) == 1 and t.m((0, 0)) == 1
    assert len(nbj_domain(4, 2)) == 6


def test_attenuated_table_examples():
    t = attenuated_table(2, 1, 1, 2)
    assert t.size == 6
    assert set(t.rel_domain) == {(0, 0), (0, 1), (1, 0)}
    assert t.k((0, 0)) == t.m((0, 0)) == 1
    # i is the rank coordinate: one point shares the projection, four do not
    assert t.k((1, 0)) == 1 and t.k((0, 1)) == 4
    assert attenuated_domain(4, 2, 2) == Domain([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])


def test_classical_closed_form_examples():
    for i in range(4):
        assert hamming_closed_krein(5, 1, 4, i, i + 1) == i + 1
        assert hamming_closed_krein(5, 1, 4, i, i) == i * (4 - 3)
        assert hamming_closed_krein(5, 1, 4, i, i + 2) == 0
    assert johnson_closed_krein(4, 2, 0, 0, 1) == 1
    assert johnson_closed_krein(5, 2, 0, 1, 3) == 0
    assert johnson_closed_krein(5, 2, 0, 1, 2) == krein_from_spectral(johnson_table(5, 2), (1,), (1,), (2,))
    q, i = 2, 2
    assert bilinear_closed_krein(3, 0, 3, q, i, i + 1) == q**i * q_number(i + 1, q)
    assert bilinear_closed_krein(3, 1, 3, q, i, i) == q_number(i, q) * (q**2 + q**3 - q**2 - q - 1)
    assert bilinear_closed_krein(3, 0, 3, q, i, i - 2) == 0
    assert grassmann_closed_krein(4, 2, 2, 0, 0, 1) == 1
    assert grassmann_closed_krein(6, 3, 2, 0, 0, 2) == 0
    assert grassmann_closed_krein(5, 2, 2, 0, 1, 0) == krein_from_spectral(grassmann_table(5, 2, 2), (1,), (1,), (0,))


@pytest.mark.parametrize(
    "fp",
    [
        FamilyParams.of("hamming", n=5, q=3),
        FamilyParams.of("hamming", n=3, q=2),
        FamilyParams.of("johnson", n=9, k=4),
        FamilyParams.of("johnson", n=7, k=2),
        FamilyParams.of("bilinear", n=3, l=2, q=2),
        FamilyParams.of("bilinear", n=2, l=2, q=3),
        FamilyParams.of("grassmann", n=7, m=3, q=2),
        FamilyParams.of("grassmann", n=5, m=2, q=3),
    ],
)
def test_classical_closed_forms_match_spectral(fp):
    rep = verify_closed_forms(fp)
    assert rep.all_match, rep.to_dict()
    assert rep.verdict


def test_shifted_classical_closed_forms_match_subscheme_tables():
    # the shifted parameter families used inside the bivariate proofs
    for k, y, r in [(5, 1, 4), (4, 2, 3), (6, 0, 5)]:
        t = hamming_table(k - y, r - 1)
        for a in t.idem_domain:
            for b in t.idem_domain:
                assert hamming_closed_krein(k, y, r, a[0], b[0]) == krein_from_spectral(t, (1,), a, b)
    for n, k, i in [(8, 4, 1), (9, 3, 2), (7, 4, 2)]:
        t = johnson_table(n - i, k - i)
        for a in t.idem_domain:
            for b in t.idem_domain:
                assert johnson_closed_krein(n, k, i, a[0], b[0]) == krein_from_spectral(t, (1,), a, b)
    for n, m, q, i in [(6, 3, 2, 1), (7, 3, 2, 2), (5, 2, 3, 1)]:
        t = grassmann_table(n - i, m - i, q)
        for a in t.idem_domain:
            for b in t.idem_domain:
                assert grassmann_closed_krein(n, m, q, i, a[0], b[0]) == krein_from_spectral(t, (1,), a, b)
    for m, y, l, q in [(3, 1, 2, 2), (4, 1, 3, 2), (2, 0, 2, 3)]:
        t = bilinear_table(m - y, l, q)
        for a in t.idem_domain:
            for b in t.idem_domain:
                assert bilinear_closed_krein(m, y, l, q, a[0], b[0]) == krein_from_spectral(t, (1,), a, b)


@given(st.integers(3, 9), st.sampled_from([2, 3]), st.data())
def test_grassmann_star_sum_rule(n, q, data):
    m = data.draw(st.integers(1, n - 1))
    i = data.draw(st.integers(0, m - 1))
    j = data.draw(st.integers(0, min(m - i, n - m)))
    total = grassmann_a_star(n, m, q, i, j) + grassmann_b_star(n, m, q, i, j) + grassmann_c_star(n, m, q, i, j)
    assert total == Fraction(q_number(n - m, q) * q_number(m - i, q), q_number(n - i, q))


def test_johnson_a_star_is_diagonal_krein():
    t = johnson_table(8, 3)
    for j in range(4):
        assert johnson_a_star(8, 3, 0, j) == krein_from_spectral(t, (1,), (j,), (j,))


def test_nbj_closed_form_examples():
    assert nbj_closed_krein(3, 5, 2, (1, 0), (0, 0), (1, 0)) == 1
    assert nbj_closed_krein(4, 4, 2, (1, 0), (1, 1), (1, 1)) == 2
    assert krein_from_spectral(nonbinary_johnson_table(4, 4, 2), (1, 0), (1, 1), (1, 1)) == 2
    assert nbj_closed_krein(3, 5, 2, (0, 1), (0, 0), (2, 0)) == 0
    with pytest.raises(ValueError):
        nbj_closed_krein(3, 5, 2, (1, 0), (3, 0), (0, 0))
    with pytest.raises(ValueError):
        nbj_closed_krein(3, 5, 2, (1, 1), (0, 0), (0, 0))


def test_printed_lowering_coefficient_disagrees_with_spectral_sum():
    # The coefficient at (i-1, j) is n(r-2)(k-i-j+1)(n-i-j+2)/(k(n-i-2j+2));
    # the variant with (n-i-j+1) in place of (k-i-j+1) does not match.
    r, n, k = 3, 5, 3
    t = nonbinary_johnson_table(r, n, k)
    i, j = 1, 0
    printed = Fraction(n * (r - 2) * (n - i - j + 2) * (n - i - j + 1), k * (n - i - 2 * j + 2))
    spectral = krein_from_spectral(t, (1, 0), (i, j), (i - 1, j))
    assert spectral == 5
    assert printed != spectral
    assert nbj_closed_krein(r, n, k, (1, 0), (i, j), (i - 1, j)) == spectral


def test_attenuated_closed_form_examples():
    assert attenuated_closed_krein(3, 2, 1, 2, (1, 0), (0, 0), (1, 0)) == 1
    assert attenuated_closed_krein(2, 1, 1, 2, (0, 1), (0, 0), (0, 1)) == 1
    assert attenuated_closed_krein(4, 2, 2, 2, (1, 0), (0, 0), (1, 1)) == 0
    with pytest.raises(ValueError):
        attenuated_closed_krein(2, 1, 1, 2, (1, 0), (1, 1), (0, 0))


def test_closed_form_provider_support():
    fp = FamilyParams.of("nbj", r=3, n=6, k=3)
    cf = closed_form_krein(fp, (1, 0))
    assert set(cf.support[(1, 1)]) == {(2, 1), (2, 0), (1, 1), (0, 2), (0, 1)}
    assert cf((1, 1), (1, 2)) == 0
    cf2 = closed_form_krein(FamilyParams.of("att", n=5, m=3, l=2, q=2), (1, 0))
    assert len(cf2.support[(1, 1)]) == 7


def test_nbj_five_element_support_is_exact():
    # the grlex bound alone would allow (i, j-1) and (i, j+1) too
    t = nonbinary_johnson_table(4, 8, 4)
    K = krein_tensor(t)
    for i, j in t.idem_domain:
        for beta in [(i, j - 1), (i, j + 1)]:
            if beta in t.idem_domain:
                assert K[(1, 0), (i, j), beta] == 0


def test_verify_closed_forms_examples():
    rep = verify_closed_forms(FamilyParams.of("nbj", r=3, n=5, k=2))
    assert rep.all_match and rep.q_polynomial and rep.verdict
    rep = verify_closed_forms(FamilyParams.of("att", n=3, m=2, l=1, q=2))
    assert rep.verdict
    assert rep.to_dict()["verdict"] is True


def test_verify_closed_forms_reports_perturbation():
    fp = FamilyParams.of("nbj", r=3, n=5, k=2)
    t = fp.table()
    bad = t.with_entry("Q", t.idem_domain.position((1, 0)), 2, t.Q[1][2] + 1)
    rep = verify_closed_forms(fp, table=bad)
    assert not rep.all_match
    assert rep.mismatches or rep.support_violations


@given(st.sampled_from([3, 4, 5, 7]), st.integers(3, 8), st.data())
def test_nbj_closed_forms_random(r, n, data):
    k = data.draw(st.integers(1, n - 1))
    assert verify_closed_forms(FamilyParams.of("nbj", r=r, n=n, k=k)).verdict


@given(st.sampled_from([2, 3, 4]), st.integers(1, 5), st.data())
def test_attenuated_closed_forms_random(q, n, data):
    m = data.draw(st.integers(1, n))
    l = data.draw(st.integers(1, 3))
    rep = verify_closed_forms(FamilyParams.of("att", n=n, m=m, l=l, q=q))
    assert rep.verdict


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (7, 4)])
def test_nbj_r2_reduces_to_johnson(n, k):
    t = nonbinary_johnson_table(2, n, k)
    j = johnson_table(n, k)
    assert t.reduction == "johnson"
    assert [a[1] for a in t.rel_domain] == [a[0] for a in j.rel_domain]
    assert all(a[0] == 0 for a in t.rel_domain)
    assert (t.size, t.P, t.Q, t.valencies, t.multiplicities) == (j.size, j.P, j.Q, j.valencies, j.multiplicities)
    assert verify_closed_forms(FamilyParams.of("nbj", r=2, n=n, k=k)).verdict


@pytest.mark.parametrize("k,r", [(3, 3), (4, 4), (3, 5)])
def test_nbj_n_equals_k_reduces_to_hamming(k, r):
    t = nonbinary_johnson_table(r, k, k)
    h = hamming_table(k, r - 1)
    assert t.reduction == "hamming"
    assert [a[0] for a in t.rel_domain] == [a[0] for a in h.rel_domain]
    assert (t.size, t.P, t.Q, t.valencies, t.multiplicities) == (h.size, h.P, h.Q, h.valencies, h.multiplicities)


@pytest.mark.parametrize("n,l,q", [(2, 1, 2), (2, 3, 2), (3, 2, 3)])
def test_attenuated_m_equals_n_reduces_to_bilinear(n, l, q):
    t = attenuated_table(n, n, l, q)
    b = bilinear_table(n, l, q)
    assert t.reduction == "bilinear"
    assert (t.size, t.P, t.Q, t.valencies, t.multiplicities) == (b.size, b.P, b.Q, b.valencies, b.multiplicities)


@pytest.mark.parametrize(
    "family,params",
    [
        ("hamming", dict(n=0, q=2)),
        ("johnson", dict(n=4, k=5)),
        ("johnson", dict(n=4, k=4)),
        ("bilinear", dict(n=2, l=2, q=6)),
        ("grassmann", dict(n=3, m=3, q=2)),
        ("nbj", dict(r=1, n=4, k=2)),
        ("nbj", dict(r=2, n=3, k=3)),
        ("att", dict(n=2, m=3, l=1, q=2)),
        ("att", dict(n=2, m=1, l=0, q=2)),
        ("nope", dict(n=2)),
        ("johnson", dict(n=4)),
    ],
)
def test_invalid_params_rejected(family, params):
    with pytest.raises(ValueError):
        FamilyParams(family, params)


def test_family_params_aliases():
    fp = FamilyParams.of("nbj", r=3, n=4, k=2)
    assert fp.family == "nonbinary_johnson" and fp.r == 3
    assert fp.label() == "nonbinary_johnson(r=3,n=4,k=2)"
    assert table_invariant_failures(fp.table()) == []
