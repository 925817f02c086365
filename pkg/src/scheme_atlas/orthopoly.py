"""Exact evaluation of the six orthogonal polynomial families.

All evaluators use the defining finite sums and return :class:`Fraction`.
They vanish identically when the degree or the argument leaves the family's
range, which gives ``H_{-1} = 0`` and ``Q_{-1} = 0`` for free.

The ``*_residual`` functions evaluate both sides of the splitting recurrences
and the degree-one elimination identities used in the Krein computations;
each must return exactly zero on its admissible grid.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact import binomial, q_binomial, q_number, q_number_signed

__all__ = [
    "krawtchouk",
    "eberlein",
    "hahn",
    "gen_krawtchouk",
    "gen_eberlein",
    "q_hahn",
    "h_star",
    "q_hahn_degree_one",
    "hahn_recurrence_residual",
    "q_hahn_recurrence_residual",
    "hahn_degree_one_shift_residual",
    "q_hahn_degree_one_shift_residual",
]


def _c2(a: int) -> int:
    return a * (a - 1) // 2


@lru_cache(maxsize=None)
def krawtchouk(i: int, n: int, q: int, j: int) -> Fraction:
    """K_i(n, q; j) of the Hamming scheme H(n, q)."""
    if i < 0 or i > n or j < 0 or j > n:
        return Fraction(0)
    total = 0
    for u in range(i + 1):
        total += (-1) ** u * (q - 1) ** (i - u) * binomial(j, u) * binomial(n - j, i - u)
    return Fraction(total)


def _johnson_range(n: int, k: int) -> int:
    return min(k, n - k)


@lru_cache(maxsize=None)
def eberlein(i: int, n: int, k: int, j: int) -> Fraction:
    """Eberlein (dual Hahn) polynomial E_i(n, k; j)."""
    if k < 0 or k > n:
        return Fraction(0)
    d = _johnson_range(n, k)
    if not (0 <= i <= d and 0 <= j <= d):
        return Fraction(0)
    total = 0
    for u in range(i + 1):
        total += (-1) ** u * binomial(j, u) * binomial(k - j, i - u) * binomial(n - k - j, i - u)
    return Fraction(total)


@lru_cache(maxsize=None)
def hahn(i: int, n: int, k: int, j: int) -> Fraction:
    """Hahn polynomial H_i(n, k; j), the second eigenmatrix of J(n, k)."""
    if k < 0 or k > n:
        return Fraction(0)
    d = _johnson_range(n, k)
    if not (0 <= i <= d and 0 <= j <= d):
        return Fraction(0)
    mult = binomial(n, i) - binomial(n, i - 1)
    return Fraction(mult, binomial(k, j) * binomial(n - k, j)) * eberlein(j, n, k, i)


@lru_cache(maxsize=None)
def gen_krawtchouk(i: int, n: int, l: int, q: int, j: int) -> Fraction:
    """Generalized Krawtchouk polynomial K_i(n, l; q; j) of H_q(n, l)."""
    if n < 0 or l < 0:
        return Fraction(0)
    d = min(n, l)
    if not (0 <= i <= d and 0 <= j <= d):
        return Fraction(0)
    total = 0
    for u in range(i + 1):
        total += (
            (-1) ** (i - u)
            * q ** (u * l + _c2(i - u))
            * q_binomial(n - u, n - i, q)
            * q_binomial(n - j, u, q)
        )
    return Fraction(total)


@lru_cache(maxsize=None)
def gen_eberlein(i: int, n: int, m: int, q: int, j: int) -> Fraction:
    """Generalized Eberlein polynomial E_i(n, m; q; j) of Gr_q(n, m)."""
    if m < 0 or m > n:
        return Fraction(0)
    d = min(m, n - m)
    if not (0 <= i <= d and 0 <= j <= d):
        return Fraction(0)
    total = 0
    for u in range(i + 1):
        total += (
            (-1) ** (i - u)
            * q ** (u * j + _c2(i - u))
            * q_binomial(m - u, m - i, q)
            * q_binomial(m - j, u, q)
            * q_binomial(n - m + u - j, u, q)
        )
    return Fraction(total)


@lru_cache(maxsize=None)
def q_hahn(i: int, n: int, m: int, q: int, j: int) -> Fraction:
    """q-Hahn polynomial Q_i(n, m; q; j), the second eigenmatrix of Gr_q(n, m)."""
    if m < 0 or m > n:
        return Fraction(0)
    d = min(m, n - m)
    if not (0 <= i <= d and 0 <= j <= d):
        return Fraction(0)
    mult = q_binomial(n, i, q) - q_binomial(n, i - 1, q)
    den = q ** (j * j) * q_binomial(n - m, j, q) * q_binomial(m, j, q)
    return Fraction(mult, den) * gen_eberlein(j, n, m, q, i)


def h_star(n: int, m: int, q: int) -> Fraction:
    """Leading coefficient h*(n, m) = q[n][n-1] / ([n-m][m])."""
    return Fraction(
        q * q_number(n, q) * q_number(n - 1, q),
        q_number(n - m, q) * q_number(m, q),
    )


def _check_split_args(N: int, p: int, r: int, x: int) -> None:
    if not 0 < p < N:
        raise ValueError(f"need 0 < p < N, got p={p}, N={N}")
    if not 0 <= x <= min(p - 1, N - p):
        raise ValueError(f"x={x} outside 0..min(p-1, N-p)")
    if not 0 <= r <= min(p, N - p):
        raise ValueError(f"r={r} outside 0..min(p, N-p)")


def hahn_recurrence_residual(N: int, p: int, r: int, x: int) -> Fraction:
    """LHS - RHS of the Hahn splitting recurrence in (N, p) -> (N-1, p-1)."""
    _check_split_args(N, p, r, x)
    rhs = Fraction(0)
    if r < p:  # at r = p the H_r(N-1, p-1) term is regarded as zero
        rhs += Fraction(p - r, N - 2 * r) * hahn(r, N - 1, p - 1, x)
    rhs += Fraction(N - p - r + 1, N - 2 * r + 2) * hahn(r - 1, N - 1, p - 1, x)
    return hahn(r, N, p, x) - Fraction(N, p) * rhs


def q_hahn_recurrence_residual(N: int, p: int, q: int, r: int, x: int) -> Fraction:
    """LHS - RHS of the q-Hahn splitting recurrence in (N, p) -> (N-1, p-1)."""
    _check_split_args(N, p, r, x)
    qn = lambda k: q_number(k, q)  # noqa: E731
    rhs = Fraction(0)
    if r < p:
        rhs += Fraction(qn(p - r), qn(N - 2 * r)) * q_hahn(r, N - 1, p - 1, q, x)
    rhs += (
        Fraction(q ** (p - r + 1) * qn(N - p - r + 1), qn(N - 2 * r + 2))
        * q_hahn(r - 1, N - 1, p - 1, q, x)
    )
    return q_hahn(r, N, p, q, x) - Fraction(qn(N), qn(p)) * rhs


def hahn_degree_one_shift_residual(n: int, k: int, i: int, y: int) -> Fraction:
    """LHS - RHS of H_1(n,k;y) expressed through H_1(n-i,k-i;y)."""
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    if not 0 <= i < k or n - i <= 1:
        raise ValueError(f"degenerate shift i={i} for (n, k)=({n}, {k})")
    if not 0 <= y <= min(k - i, n - k):
        raise ValueError(f"y={y} outside the range of H(n-i, k-i)")
    rhs = Fraction(i * (n - k), n - i) + Fraction(n * (k - i), (n - i - 1) * (n - i)) * hahn(
        1, n - i, k - i, y
    )
    return hahn(1, n, k, y) - Fraction(n - 1, k) * rhs


def q_hahn_degree_one_shift_residual(n: int, m: int, q: int, i: int, y: int) -> Fraction:
    """LHS - RHS of Q_1(n,m;q;y) expressed through Q_1(n-i,m-i;q;y)."""
    if not 0 < m < n:
        raise ValueError(f"need 0 < m < n, got m={m}, n={n}")
    if not 0 <= i < m:
        raise ValueError(f"degenerate shift i={i} for (n, m)=({n}, {m})")
    if not 0 <= y <= min(m - i, n - m):
        raise ValueError(f"y={y} outside the range of Gr(n-i, m-i)")
    qn = lambda k: q_number(k, q)  # noqa: E731
    rhs = (
        q_hahn(1, n - i, m - i, q, y) / h_star(n - i, m - i, q)
        + Fraction(qn(n - m) * qn(m), qn(n))
        - Fraction(qn(n - m) * qn(m - i), qn(n - i))
    )
    return q_hahn(1, n, m, q, y) - h_star(n, m, q) * rhs


def q_hahn_degree_one(n: int, m: int, q: int, j: int) -> Fraction:
    """Closed form h*(n,m) ([n-m][m]/[n] + [-j]) of Q_1(n, m; q; j)."""
    qn = lambda k: q_number(k, q)  # noqa: E731
    return h_star(n, m, q) * (Fraction(qn(n - m) * qn(m), qn(n)) + q_number_signed(-j, q))
