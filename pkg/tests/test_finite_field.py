import itertools

import numpy as np
import pytest

from scheme_atlas._kernels import gf_rank, gf_rref
from scheme_atlas.finite_field import IRREDUCIBLE, SUPPORTED_ORDERS, FiniteField, field


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms(q):
    F = field(q)
    assert F.axiom_failures() == []
    assert sorted(F.mul[1]) == list(range(q))
    # multiplicative group is cyclic of order q - 1
    orders = []
    for a in range(1, q):
        x, k = a, 1
        while x != 1:
            x, k = int(F.mul[x, a]), k + 1
        orders.append(k)
    assert max(orders) == q - 1


@pytest.mark.parametrize("q,p", [(4, 2), (8, 2), (9, 3)])
def test_modulus_has_no_roots(q, p):
    coeffs = IRREDUCIBLE[q]
    assert coeffs[-1] == 1 and len(coeffs) - 1 in (2, 3)
    for x in range(p):
        assert sum(c * x**i for i, c in enumerate(coeffs)) % p != 0


def test_tables_are_read_only():
    F = field(4)
    with pytest.raises(ValueError):
        F.add[0, 0] = 1


@pytest.mark.parametrize("q", [1, 6, 10, 11, 16])
def test_unsupported_orders(q):
    with pytest.raises(ValueError):
        FiniteField(q)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_rank_matches_brute_force(q):
    F = field(q)
    rng = np.random.default_rng(q)
    for _ in range(20):
        M = rng.integers(0, q, size=(3, 4))
        span = set()
        for coeffs in itertools.product(range(q), repeat=3):
            v = [0] * 4
            for c, row in zip(coeffs, M):
                for t in range(4):
                    v[t] = int(F.add[v[t], F.mul[c, row[t]]])
            span.add(tuple(v))
        assert len(span) == q ** gf_rank(M, F)
        R, rank = gf_rref(M, F)
        assert rank == gf_rank(M, F)
        assert not R[rank:].any()
