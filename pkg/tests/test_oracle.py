from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scheme_atlas import _kernels
from scheme_atlas.core import Domain, krein_tensor
from scheme_atlas.families import FamilyParams
from scheme_atlas.finite_field import field
from scheme_atlas.oracle import (
    AxiomViolation,
    SizeGuardError,
    Subspace,
    ambient_w,
    attenuated_relation,
    attenuated_scheme,
    build_concrete_scheme,
    build_idempotents,
    enumerate_attenuated_points,
    enumerate_nbj_points,
    krein_by_hadamard,
    nbj_relation,
    nbj_scheme,
    run_oracle,
    scheme_for,
)


@pytest.mark.parametrize(
    "args,count", [((3, 3, 2), 12), ((2, 3, 3), 1), ((4, 5, 0), 1), ((3, 4, 2), 24), ((5, 3, 1), 12)]
)
def test_nbj_point_counts(args, count):
    pts = enumerate_nbj_points(*args)
    assert len(pts) == count
    assert len(set(pts)) == count
    assert all(p.weight == args[2] for p in pts)


@pytest.mark.parametrize("args,count", [((2, 1, 1, 2), 6), ((1, 1, 1, 2), 2), ((3, 0, 2, 2), 1), ((2, 2, 1, 3), 9)])
def test_attenuated_point_counts(args, count):
    pts = enumerate_attenuated_points(*args)
    assert len(pts) == count
    assert len(set(pts)) == count
    n, m, l, q = args
    W = ambient_w(n, l, q).matrix()
    F = field(q)
    for V in pts:
        assert V.dim == m
        assert _kernels.gf_rank(np.vstack([V.matrix(), W]), F) == m + l


def test_nbj_relation_examples():
    x = (1, 1, 0)
    assert nbj_relation(x, x, 2) == (0, 0)
    assert nbj_relation((1, 1, 0), (1, 2, 0), 2) == (1, 0)
    assert nbj_relation((1, 1, 0), (0, 1, 2), 2) == (0, 1)
    assert nbj_relation((1, 2, 0), (0, 1, 2), 2) == (1, 1)
    assert nbj_relation((1, 2, 0, 0), (0, 0, 1, 1), 2) == (0, 2)
    with pytest.raises(ValueError):
        nbj_relation((1, 0, 0), (1, 1, 0), 2)


def test_attenuated_relation_examples():
    n, m, l, q = 2, 1, 1, 2
    W = ambient_w(n, l, q)
    V = Subspace.span([[1, 0, 0]], q)
    same_image = Subspace.span([[1, 0, 1]], q)
    other = Subspace.span([[0, 1, 0]], q)
    assert attenuated_relation(V, V, W, m) == (0, 0)
    assert attenuated_relation(V, same_image, W, m) == (1, 0)
    assert attenuated_relation(V, other, W, m) == (0, 1)
    with pytest.raises(ValueError):
        attenuated_relation(V, Subspace.span([[0, 0, 1]], q), W, m)


def test_attenuated_kernel_agrees_with_pairwise_relation():
    n, m, l, q = 3, 2, 1, 2
    s = attenuated_scheme(n, m, l, q)
    W = ambient_w(n, l, q)
    rng = np.random.default_rng(1)
    for x, y in rng.integers(0, s.size, size=(40, 2)):
        assert s.relation(int(x), int(y)) == attenuated_relation(s.points[x], s.points[y], W, m)


def test_nbj_kernel_agrees_with_pairwise_relation():
    s = nbj_scheme(3, 5, 3)
    for x in range(0, s.size, 7):
        for y in range(0, s.size, 5):
            assert s.relation(x, y) == nbj_relation(s.points[x], s.points[y], 3)


def test_concrete_scheme_matches_table():
    fp = FamilyParams.of("nbj", r=3, n=3, k=2)
    s = scheme_for(fp)
    t = fp.table()
    assert s.size == 12 and s.domain == t.rel_domain
    for a in s.domain:
        assert s.valency(a) == t.k(a)
        A = s.adjacency(a)
        assert (A == A.T).all()


def test_corrupted_relation_is_caught():
    pts = enumerate_nbj_points(3, 4, 2)

    def bad(x, y):
        a = nbj_relation(x, y, 2)
        # move one ordered pair class and its mirror: stays symmetric, breaks regularity
        if a == (1, 1) and x.entries[0] == 1 and y.entries[0] == 0 and y.entries[1] == 0:
            return (0, 1)
        if a == (1, 1) and y.entries[0] == 1 and x.entries[0] == 0 and x.entries[1] == 0:
            return (0, 1)
        return a

    with pytest.raises(AxiomViolation) as exc:
        build_concrete_scheme(pts, bad)
    assert exc.value.axiom == "A4"
    assert "inside relation" in str(exc.value)


def test_axiom_witnesses():
    pts = list(range(4))
    with pytest.raises(AxiomViolation) as exc:
        build_concrete_scheme(pts, lambda x, y: (0,) if x == y or x == 0 else (1,))
    assert exc.value.axiom in ("A2", "A6")
    with pytest.raises(AxiomViolation) as exc:
        build_concrete_scheme(pts, lambda x, y: (int(y > x),))
    assert exc.value.axiom == "A2"
    with pytest.raises(AxiomViolation) as exc:
        build_concrete_scheme(pts, lambda x, y: (int(x != y),), domain=Domain([(0,), (1,), (2,)]))
    assert exc.value.axiom == "A1"
    with pytest.raises(AxiomViolation) as exc:
        build_concrete_scheme(pts, lambda x, y: (x + y if x != y else 0,), domain=Domain([(0,), (1,), (2,)]))
    assert exc.value.axiom == "A1"


def test_complete_graph_scheme():
    s = build_concrete_scheme(list(range(5)), lambda x, y: (int(x != y),))
    assert s.intersection[(1,), (1,), (0,)] == 4
    assert s.intersection[(1,), (1,), (1,)] == 3


@pytest.mark.parametrize(
    "fp",
    [
        FamilyParams.of("nbj", r=3, n=4, k=2),
        FamilyParams.of("nbj", r=4, n=4, k=3),
        FamilyParams.of("att", n=2, m=1, l=1, q=2),
        FamilyParams.of("att", n=3, m=2, l=1, q=2),
    ],
)
def test_idempotents_and_hadamard(fp):
    s = scheme_for(fp)
    t = fp.table()
    idem = build_idempotents(s, t)
    assert idem.ok
    o = s.domain.origin
    E0 = idem.matrix(o)
    assert (E0 == Fraction(1, s.size)).all()
    for beta in s.domain:
        E = idem.matrix(beta)
        assert sum(E[x, x] for x in range(s.size)) == t.m(beta)
    assert not krein_by_hadamard(s, idem, t).mismatches(krein_tensor(t))


def test_bad_table_fails_idempotents():
    fp = FamilyParams.of("nbj", r=3, n=3, k=2)
    t = fp.table()
    bad = t.with_entry("Q", 1, 1, t.Q[1][1] + 1)
    idem = build_idempotents(scheme_for(fp), bad, strict=False)
    assert not idem.ok


def test_dump_format():
    s = nbj_scheme(3, 3, 2)
    lines = s.dump().splitlines()
    assert lines[0] == "nonbinary_johnson r=3,n=3,k=2 12 5"
    assert len(lines) == 13
    assert lines[1].split()[0] == "0,0"
    assert all(len(line.split()) == 12 for line in lines[1:])


def test_size_guard(monkeypatch):
    monkeypatch.setenv("SCHEME_ATLAS_MAX_POINTS", "10")
    with pytest.raises(SizeGuardError):
        enumerate_nbj_points(3, 3, 2)
    with pytest.raises(SizeGuardError):
        run_oracle(FamilyParams.of("att", n=3, m=2, l=1, q=2))


@pytest.mark.parametrize(
    "fp",
    [
        FamilyParams.of("nbj", r=3, n=5, k=3),
        FamilyParams.of("nbj", r=2, n=5, k=2),
        FamilyParams.of("nbj", r=3, n=3, k=3),
        FamilyParams.of("att", n=2, m=2, l=1, q=2),
        FamilyParams.of("att", n=2, m=1, l=2, q=3),
    ],
)
def test_run_oracle(fp):
    rep = run_oracle(fp)
    assert rep.ok, rep.to_dict()
    assert rep.to_dict()["ok"]


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
@settings(max_examples=15)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_backends_agree(q, rows, cols, seed):
    import os

    F = field(q)
    rng = np.random.default_rng(seed)
    M = rng.integers(0, q, size=(rows, cols))
    old = os.environ.get("SCHEME_ATLAS_NUMBA")
    try:
        os.environ["SCHEME_ATLAS_NUMBA"] = "0"
        R0, r0 = _kernels.gf_rref(M, F)
        X = rng.integers(0, 3, size=(6, 4))
        c0, e0 = _kernels.nbj_relation_matrix(X)
        os.environ["SCHEME_ATLAS_NUMBA"] = "1"
        R1, r1 = _kernels.gf_rref(M, F)
        c1, e1 = _kernels.nbj_relation_matrix(X)
    finally:
        if old is None:
            os.environ.pop("SCHEME_ATLAS_NUMBA", None)
        else:
            os.environ["SCHEME_ATLAS_NUMBA"] = old
    assert r0 == r1 and (R0 == R1).all()
    assert (c0 == c1).all() and (e0 == e1).all()


def test_backend_flag(monkeypatch):
    monkeypatch.setenv("SCHEME_ATLAS_NUMBA", "0")
    assert _kernels.backend() == "numpy"
    s0 = attenuated_scheme(3, 2, 1, 2)
    monkeypatch.delenv("SCHEME_ATLAS_NUMBA")
    s1 = attenuated_scheme(3, 2, 1, 2)
    assert (s0.labels == s1.labels).all()


def test_exact_matmul_large_entries():
    A = np.array([[2**40, 1], [0, 1]], dtype=np.int64)
    B = np.array([[2**20, 0], [3, 2**40]], dtype=np.int64)
    C = _kernels.exact_matmul(A, B)
    assert int(C[0, 0]) == 2**60 + 3
    assert int(C[0, 1]) == 2**40
