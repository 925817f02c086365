"""Small finite fields GF(q), q = p^e <= 9, as lookup tables.

Elements are the integers 0..q-1; for e > 1 the integer's base-p digits are
the coefficients of a polynomial reduced modulo a fixed irreducible one.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["FiniteField", "IRREDUCIBLE", "SUPPORTED_ORDERS", "field"]

# low-to-high coefficients of the monic modulus
IRREDUCIBLE = {4: (1, 1, 1), 8: (1, 1, 0, 1), 9: (1, 0, 1)}
SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


class FiniteField:
    """GF(q) with dense addition, multiplication, negation and inverse tables."""

    def __init__(self, q: int):
        p, e = _factor_prime_power(q)
        if q not in SUPPORTED_ORDERS:
            raise ValueError(f"GF({q}) is not supported; orders available: {SUPPORTED_ORDERS}")
        self.q, self.p, self.e = q, p, e
        digits = [self._digits(a) for a in range(q)]
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._value([(x + y) % p for x, y in zip(digits[a], digits[b])])
                mul[a, b] = self._value(self._polymul(digits[a], digits[b]))
        self.add = add
        self.mul = mul
        self.neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv = inv
        for t in (self.add, self.mul, self.neg, self.inv):
            t.setflags(write=False)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _value(self, digits) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _polymul(self, a, b) -> list[int]:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if e > 1:
            mod = IRREDUCIBLE[self.q]
            for d in range(len(prod) - 1, e - 1, -1):
                c = prod[d]
                if c:
                    for t in range(e + 1):
                        prod[d - e + t] = (prod[d - e + t] - c * mod[t]) % p
        return prod[:e]

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def elements(self) -> range:
        return range(self.q)

    def axiom_failures(self) -> list[str]:
        """Exhaustive check of the field axioms on the tables."""
        q, add, mul = self.q, self.add, self.mul
        bad = []
        E = np.arange(q)
        if not (add == add.T).all():
            bad.append("addition not commutative")
        if not (mul == mul.T).all():
            bad.append("multiplication not commutative")
        if not (add[0] == E).all():
            bad.append("0 is not an additive identity")
        if not (mul[1] == E).all():
            bad.append("1 is not a multiplicative identity")
        if not (add[E, self.neg] == 0).all():
            bad.append("additive inverse")
        if not (mul[E[1:], self.inv[1:]] == 1).all():
            bad.append("multiplicative inverse")
        a, b, c = np.meshgrid(E, E, E, indexing="ij")
        if not (add[add[a, b], c] == add[a, add[b, c]]).all():
            bad.append("addition not associative")
        if not (mul[mul[a, b], c] == mul[a, mul[b, c]]).all():
            bad.append("multiplication not associative")
        if not (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all():
            bad.append("distributivity")
        return bad


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)
