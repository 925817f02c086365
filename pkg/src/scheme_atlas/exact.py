"""Exact scalar layer: rationals, binomials, q-numbers and q-binomials.

Every quantity in the package is an exact :class:`fractions.Fraction` or a
Python ``int``.  Out-of-range binomials evaluate to zero so that finite sums
over ``u`` can run past the natural support without special cases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

__all__ = [
    "Rational",
    "QInteger",
    "binomial",
    "q_number",
    "q_number_signed",
    "q_binomial",
    "as_rational",
    "format_rational",
    "parse_rational",
    "q_difference_residual",
    "q_binomial_identity_residuals",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def format_rational(x) -> str:
    """Serialize as ``"num/den"`` (denominator always written)."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def binomial(n: int, k: int) -> int:
    """C(n, k), or 0 when k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def q_number(k: int, q: int) -> int:
    """The q-number [k] = (q^k - 1)/(q - 1) for k >= 0."""
    if k < 0:
        raise ValueError(f"q_number needs k >= 0, got {k}; use q_number_signed")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    return (q**k - 1) // (q - 1)


def q_number_signed(k: int, q: int) -> Fraction:
    """(q^k - 1)/(q - 1) as a rational; defined for negative k too."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    return (Fraction(q) ** k - 1) / (q - 1)


@lru_cache(maxsize=None)
def q_binomial(n: int, m: int, q: int) -> int:
    """Gaussian binomial coefficient; 0 outside 0 <= m <= n."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if n < 0 or m < 0 or m > n:
        return 0
    num = 1
    den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (m - i) - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


@dataclass(frozen=True)
class QInteger:
    """Unevaluated q-number [k] in base q."""

    k: int
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")

    @property
    def value(self) -> Fraction:
        return q_number_signed(self.k, self.q)

    def __int__(self) -> int:
        return q_number(self.k, self.q)


def q_difference_residual(a: int, b: int, q: int) -> Fraction:
    """[a] - [b] - q^b [a - b]; zero for all integers a, b."""
    s = lambda k: q_number_signed(k, q)  # noqa: E731
    return s(a) - s(b) - Fraction(q) ** b * s(a - b)


def q_binomial_identity_residuals(N: int, r: int, q: int) -> dict[str, Fraction]:
    """Residuals of the four q-binomial ratio identities at (N, r), 1 <= r <= N.

    Keys name the identity by its right-hand side.  ``"N/(N-r)"`` needs
    r < N and is omitted at r = N, where both sides are 0/0.
    """
    if not 1 <= r <= N:
        raise ValueError(f"need 1 <= r <= N, got N={N}, r={r}")
    s = lambda k: q_number_signed(k, q)  # noqa: E731
    c = lambda a, b: Fraction(q_binomial(a, b, q))  # noqa: E731
    out = {
        "(N-r+1)/r": c(N, r) - s(N - r + 1) / s(r) * c(N, r - 1),
        "N/r": c(N, r) - s(N) / s(r) * c(N - 1, r - 1),
        "difference": c(N, r) - c(N, r - 1) - Fraction(q) ** r * s(N - 2 * r + 1) / s(N - r + 1) * c(N, r),
    }
    if r < N:
        out["N/(N-r)"] = c(N, r) - s(N) / s(N - r) * c(N - 1, r)
    return out
