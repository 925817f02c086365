from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scheme_atlas.exact import (
    QInteger,
    binomial,
    format_rational,
    parse_rational,
    q_binomial,
    q_binomial_identity_residuals,
    q_difference_residual,
    q_number,
    q_number_signed,
)

QS = st.sampled_from([2, 3, 4])


@pytest.mark.parametrize("n,k,want", [(7, 0, 1), (7, 8, 0), (5, 2, 10), (3, -1, 0), (-2, 1, 0)])
def test_binomial_examples(n, k, want):
    assert binomial(n, k) == want


@pytest.mark.parametrize("k,q,want", [(0, 2, 0), (1, 5, 1), (3, 2, 7)])
def test_q_number_examples(k, q, want):
    assert q_number(k, q) == want


def test_q_number_rejects_negative():
    with pytest.raises(ValueError):
        q_number(-1, 2)


@pytest.mark.parametrize("k,q,want", [(-1, 2, Fraction(-1, 2)), (0, 3, 0), (2, 3, 4)])
def test_q_number_signed_examples(k, q, want):
    assert q_number_signed(k, q) == want


@pytest.mark.parametrize("n,m,q,want", [(5, 0, 3, 1), (2, 1, 2, 3), (4, 2, 2, 35), (3, 4, 2, 0), (3, -1, 2, 0)])
def test_q_binomial_examples(n, m, q, want):
    assert q_binomial(n, m, q) == want


def test_q_integer_materializes():
    assert int(QInteger(0, 2)) == 0
    assert int(QInteger(1, 7)) == 1
    assert QInteger(4, 3).value == 40


def test_rational_text_round_trip():
    x = Fraction(-6, 4)
    assert format_rational(x) == "-3/2"
    assert parse_rational("-3/2") == x
    assert format_rational(Fraction(5)) == "5/1"


def test_q_identities_full_grid():
    for q in (2, 3, 4):
        for a in range(2, 13):
            for b in range(1, a):
                assert q_difference_residual(a, b, q) == 0
        for N in range(1, 13):
            for r in range(1, N + 1):
                res = q_binomial_identity_residuals(N, r, q)
                assert set(res.values()) == {0}


@given(st.integers(0, 12), st.integers(0, 12), QS)
def test_q_binomial_symmetric(n, m, q):
    if m <= n:
        assert q_binomial(n, m, q) == q_binomial(n, n - m, q)


@given(st.integers(1, 12), st.integers(0, 12), QS)
def test_q_pascal(n, m, q):
    # C_q(n, m) = C_q(n-1, m-1) + q^m C_q(n-1, m)
    assert q_binomial(n, m, q) == q_binomial(n - 1, m - 1, q) + q**m * q_binomial(n - 1, m, q)


@given(st.integers(-8, 8), st.integers(-8, 8), st.sampled_from([2, 3, 5]))
def test_q_difference_holds_for_signed_arguments(a, b, q):
    assert q_difference_residual(a, b, q) == 0


@given(st.integers(0, 20), st.integers(0, 20))
def test_binomial_pascal(n, k):
    if n >= 1:
        assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


rationals = st.fractions(max_denominator=50)


@given(rationals, rationals, rationals)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    if a != 0:
        assert a * (1 / a) == 1
    assert Fraction(a.numerator, a.denominator) == a
