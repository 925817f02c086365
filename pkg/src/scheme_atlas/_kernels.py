"""Integer kernels for the combinatorial oracle.

Two interchangeable backends: numba-compiled loops and a numpy path.  The
environment variable ``SCHEME_ATLAS_NUMBA`` selects one: ``0`` forces numpy,
``1`` requires numba, unset uses numba when it imports.  Both return
identical arrays; the exact-rational code elsewhere never touches them.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - depends on the environment
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

__all__ = [
    "HAVE_NUMBA",
    "backend",
    "gf_rref",
    "gf_rank",
    "nbj_relation_matrix",
    "subspace_relation_matrix",
    "exact_matmul",
]


def backend() -> str:
    flag = os.environ.get("SCHEME_ATLAS_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no", "numpy"):
        return "numpy"
    if flag in ("1", "true", "on", "yes", "numba"):
        if not HAVE_NUMBA:
            raise RuntimeError("SCHEME_ATLAS_NUMBA=1 but numba is not installed")
        return "numba"
    return "numba" if HAVE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# numpy path


def _rref_np(M, add, mul, neg, inv):
    M = np.array(M, dtype=np.int64, copy=True)
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = mul[inv[M[r, c]], M[r]]
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            f = neg[M[others, c]]
            M[others] = add[M[others], mul[f[:, None], M[r][None, :]]]
        r += 1
    return M, r


def _nbj_np(X):
    S = X != 0
    common = S.astype(np.int64) @ S.T.astype(np.int64)
    equal = np.zeros_like(common)
    for t in range(X.shape[1]):
        col = X[:, t]
        equal += ((col[:, None] == col[None, :]) & (col[:, None] != 0)).astype(np.int64)
    return common, equal


def _subspace_np(B, W, add, mul, neg, inv):
    N, m, _ = B.shape
    l = W.shape[0]
    out = np.empty((N, N, 2), dtype=np.int64)
    for x in range(N):
        for y in range(x, N):
            pair = np.concatenate((B[x], B[y]))
            r2 = _rref_np(pair, add, mul, neg, inv)[1]
            r3 = _rref_np(np.concatenate((pair, W)), add, mul, neg, inv)[1]
            out[x, y, 0] = out[y, x, 0] = 2 * m - r2
            out[x, y, 1] = out[y, x, 1] = 2 * (m + l) - r3 - l
    return out


# --------------------------------------------------------------------------
# numba path

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _rref_nb(M, add, mul, neg, inv):  # pragma: no cover - compiled
        M = M.copy()
        rows, cols = M.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for t in range(cols):
                    tmp = M[r, t]
                    M[r, t] = M[piv, t]
                    M[piv, t] = tmp
            s = inv[M[r, c]]
            for t in range(cols):
                M[r, t] = mul[s, M[r, t]]
            for i in range(rows):
                if i != r and M[i, c] != 0:
                    f = neg[M[i, c]]
                    for t in range(cols):
                        M[i, t] = add[M[i, t], mul[f, M[r, t]]]
            r += 1
        return M, r

    @numba.njit(cache=True)
    def _nbj_nb(X):  # pragma: no cover - compiled
        N, n = X.shape
        common = np.zeros((N, N), dtype=np.int64)
        equal = np.zeros((N, N), dtype=np.int64)
        for x in range(N):
            for y in range(x, N):
                c = 0
                e = 0
                for t in range(n):
                    if X[x, t] != 0 and X[y, t] != 0:
                        c += 1
                        if X[x, t] == X[y, t]:
                            e += 1
                common[x, y] = c
                common[y, x] = c
                equal[x, y] = e
                equal[y, x] = e
        return common, equal

    @numba.njit(cache=True)
    def _subspace_nb(B, W, add, mul, neg, inv):  # pragma: no cover - compiled
        N, m, d = B.shape
        l = W.shape[0]
        out = np.empty((N, N, 2), dtype=np.int64)
        stack = np.empty((2 * m + l, d), dtype=np.int64)
        for t in range(l):
            stack[2 * m + t] = W[t]
        for x in range(N):
            for y in range(x, N):
                for t in range(m):
                    stack[t] = B[x, t]
                    stack[m + t] = B[y, t]
                r2 = _rref_nb(stack[: 2 * m], add, mul, neg, inv)[1]
                r3 = _rref_nb(stack, add, mul, neg, inv)[1]
                out[x, y, 0] = 2 * m - r2
                out[y, x, 0] = 2 * m - r2
                out[x, y, 1] = 2 * (m + l) - r3 - l
                out[y, x, 1] = 2 * (m + l) - r3 - l
        return out


# --------------------------------------------------------------------------
# dispatch


def gf_rref(M, F) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form and rank of an integer matrix over field ``F``."""
    M = np.ascontiguousarray(M, dtype=np.int64)
    if backend() == "numba":
        return _rref_nb(M, F.add, F.mul, F.neg, F.inv)
    return _rref_np(M, F.add, F.mul, F.neg, F.inv)


def gf_rank(M, F) -> int:
    return int(gf_rref(M, F)[1])


def nbj_relation_matrix(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Counts of common nonzero positions and of equal nonzero entries, pairwise."""
    X = np.ascontiguousarray(X, dtype=np.int64)
    if backend() == "numba":
        return _nbj_nb(X)
    return _nbj_np(X)


def subspace_relation_matrix(B: np.ndarray, W: np.ndarray, F) -> np.ndarray:
    """Pairwise (dim V cap V', dim of the intersection of V+W and V'+W modulo W).

    ``B`` holds one m x d basis per point; ``W`` is an l x d basis.
    """
    B = np.ascontiguousarray(B, dtype=np.int64)
    W = np.ascontiguousarray(W, dtype=np.int64)
    if backend() == "numba":
        return _subspace_nb(B, W, F.add, F.mul, F.neg, F.inv)
    return _subspace_np(B, W, F.add, F.mul, F.neg, F.inv)


_FLOAT_EXACT = 2**52


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Integer matrix product, exact.

    Uses float64 BLAS when every partial sum is provably below 2**52 and
    Python integers otherwise.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if A.dtype != object and B.dtype != object and A.size and B.size:
        bound = int(np.abs(A).max()) * int(np.abs(B).max()) * A.shape[1]
        if bound < _FLOAT_EXACT:
            return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
    return A.astype(object) @ B.astype(object)
