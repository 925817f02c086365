"""Spectral tables and closed-form Krein numbers for six scheme families.

Families: Hamming H(n,q), Johnson J(n,k), bilinear forms H_q(n,l), Grassmann
Gr_q(n,m), nonbinary Johnson J_r(n,k) and the attenuated-space scheme
A_q(n,m,l).  Bivariate families are indexed by pairs (i, j); in both, ``i``
is the Hamming/bilinear coordinate and ``j`` the Johnson/Grassmann one.

Closed-form Krein values are only evaluated on their declared support inside
the domain.  Everywhere else they are zero by the support rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import core
from .core import GRLEX, Domain, SpectralTable, krein_tensor
from .exact import binomial, q_binomial, q_number
from .orthopoly import (
    eberlein,
    gen_eberlein,
    gen_krawtchouk,
    h_star,
    hahn,
    krawtchouk,
    q_hahn,
)

__all__ = [
    "FAMILIES",
    "FamilyParams",
    "hamming_table",
    "johnson_table",
    "bilinear_table",
    "grassmann_table",
    "nonbinary_johnson_table",
    "attenuated_table",
    "nbj_domain",
    "attenuated_domain",
    "hamming_closed_krein",
    "johnson_closed_krein",
    "johnson_a_star",
    "bilinear_closed_krein",
    "grassmann_closed_krein",
    "grassmann_a_star",
    "grassmann_b_star",
    "grassmann_c_star",
    "nbj_closed_krein",
    "nbj_support",
    "attenuated_closed_krein",
    "attenuated_support",
    "ClosedFormKrein",
    "closed_form_krein",
    "ClosedFormReport",
    "verify_closed_forms",
]

FAMILIES = ("hamming", "johnson", "bilinear", "grassmann", "nonbinary_johnson", "attenuated")
ALIASES = {"nbj": "nonbinary_johnson", "att": "attenuated", "bilinear_forms": "bilinear"}
PARAM_NAMES = {
    "hamming": ("n", "q"),
    "johnson": ("n", "k"),
    "bilinear": ("n", "l", "q"),
    "grassmann": ("n", "m", "q"),
    "nonbinary_johnson": ("r", "n", "k"),
    "attenuated": ("n", "m", "l", "q"),
}


def _ratio(num: list, den: list) -> Fraction:
    """prod(num)/prod(den), taking 0 when a numerator factor vanishes.

    The closed forms contain removable 0/0 terms at domain corners; they are
    attached to neighbours outside the domain and contribute nothing.
    """
    if any(x == 0 for x in num):
        return Fraction(0)
    if any(x == 0 for x in den):
        raise ZeroDivisionError(f"vanishing denominator {den} with numerator {num}")
    return Fraction(math.prod(Fraction(x) for x in num)) / math.prod(Fraction(x) for x in den)


def _qpow(q: int, e: int) -> Fraction:
    return Fraction(q) ** e


# --------------------------------------------------------------------------
# parameters


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class FamilyParams:
    """A family tag plus its integer parameters."""

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        fam = ALIASES.get(self.family, self.family)
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", fam)
        missing = [p for p in PARAM_NAMES[fam] if p not in self.params]
        if missing:
            raise ValueError(f"{fam} needs parameters {', '.join(missing)}")
        clean = {p: int(self.params[p]) for p in PARAM_NAMES[fam]}
        object.__setattr__(self, "params", clean)
        self.validate()

    def __getattr__(self, name):
        try:
            return self.__dict__["params"][name]
        except KeyError:
            raise AttributeError(name) from None

    @classmethod
    def of(cls, family: str, **params) -> "FamilyParams":
        return cls(family, params)

    def validate(self) -> None:
        p, fam = self.params, self.family
        bad = None
        if fam == "hamming":
            if p["n"] < 1 or p["q"] < 2:
                bad = "need n >= 1, q >= 2"
        elif fam == "johnson":
            if not 0 < p["k"] < p["n"]:
                bad = "need 0 < k < n"
        elif fam == "bilinear":
            if p["n"] < 1 or p["l"] < 1 or not _is_prime_power(p["q"]):
                bad = "need n, l >= 1 and q a prime power"
        elif fam == "grassmann":
            if not 0 < p["m"] < p["n"] or p["q"] < 2:
                bad = "need 0 < m < n, q >= 2"
        elif fam == "nonbinary_johnson":
            if p["r"] < 2 or not 0 < p["k"] <= p["n"]:
                bad = "need r >= 2 and 0 < k <= n"
            elif p["r"] == 2 and p["k"] == p["n"]:
                bad = "r = 2 with k = n is the one-point scheme"
        elif fam == "attenuated":
            if not 1 <= p["m"] <= p["n"] or p["l"] < 1 or p["q"] < 2:
                bad = "need 1 <= m <= n, l >= 1, q >= 2"
        if bad:
            raise ValueError(f"invalid {fam} parameters {p}: {bad}")

    @property
    def boundary(self) -> str | None:
        """Reduction flag for the degenerate ends of the bivariate families."""
        p = self.params
        if self.family == "nonbinary_johnson":
            if p["r"] == 2:
                return "johnson"
            if p["n"] == p["k"]:
                return "hamming"
        if self.family == "attenuated" and p["m"] == p["n"]:
            return "bilinear"
        return None

    def label(self) -> str:
        return self.family + "(" + ",".join(f"{k}={v}" for k, v in self.params.items()) + ")"

    def table(self) -> SpectralTable:
        builder = {
            "hamming": hamming_table,
            "johnson": johnson_table,
            "bilinear": bilinear_table,
            "grassmann": grassmann_table,
            "nonbinary_johnson": nonbinary_johnson_table,
            "attenuated": attenuated_table,
        }[self.family]
        return builder(**self.params)

    def to_dict(self) -> dict:
        return {"family": self.family, **self.params}


def _table(family, params, size, rel, idem, pfun, qfun, kfun, mfun, reduction=None):
    R = rel if isinstance(rel, Domain) else Domain(rel)
    J = idem if isinstance(idem, Domain) else Domain(idem)
    P = tuple(tuple(Fraction(pfun(a, b)) for b in J) for a in R)
    Q = tuple(tuple(Fraction(qfun(b, a)) for a in R) for b in J)
    k = tuple(kfun(a) for a in R)
    m = tuple(mfun(b) for b in J)
    for name, vals in (("valency", k), ("multiplicity", m)):
        for v in vals:
            if Fraction(v).denominator != 1:
                raise ArithmeticError(f"non-integral {name} {v} for {family}{params}")
    k = tuple(int(v) for v in k)
    m = tuple(int(v) for v in m)
    return SpectralTable(family, dict(params), size, R, J, P, Q, k, m, reduction)


# --------------------------------------------------------------------------
# classical one-variable families


def hamming_valency(n: int, q: int, i: int) -> int:
    return (q - 1) ** i * binomial(n, i) if 0 <= i <= n else 0


def johnson_valency(n: int, k: int, i: int) -> int:
    return binomial(k, i) * binomial(n - k, i)


def johnson_multiplicity(n: int, k: int, i: int) -> int:
    if not 0 <= i <= min(k, n - k):
        return 0
    return binomial(n, i) - binomial(n, i - 1)


def bilinear_valency(n: int, l: int, q: int, i: int) -> int:
    if not 0 <= i <= min(n, l):
        return 0
    return q_binomial(n, i, q) * q_binomial(l, i, q) * math.prod(q**i - q**u for u in range(i))


def grassmann_valency(n: int, m: int, q: int, i: int) -> int:
    return q ** (i * i) * q_binomial(n - m, i, q) * q_binomial(m, i, q)


def grassmann_multiplicity(n: int, m: int, q: int, i: int) -> int:
    if not 0 <= i <= min(m, n - m):
        return 0
    return q_binomial(n, i, q) - q_binomial(n, i - 1, q)


def hamming_table(n: int, q: int) -> SpectralTable:
    FamilyParams.of("hamming", n=n, q=q)
    D = Domain.range1(n)
    return _table(
        "hamming", {"n": n, "q": q}, q**n, D, D,
        lambda a, b: krawtchouk(a[0], n, q, b[0]),
        lambda b, a: krawtchouk(b[0], n, q, a[0]),
        lambda a: hamming_valency(n, q, a[0]),
        lambda b: hamming_valency(n, q, b[0]),
    )


def johnson_table(n: int, k: int) -> SpectralTable:
    FamilyParams.of("johnson", n=n, k=k)
    D = Domain.range1(min(k, n - k))
    return _table(
        "johnson", {"n": n, "k": k}, binomial(n, k), D, D,
        lambda a, b: eberlein(a[0], n, k, b[0]),
        lambda b, a: hahn(b[0], n, k, a[0]),
        lambda a: johnson_valency(n, k, a[0]),
        lambda b: johnson_multiplicity(n, k, b[0]),
    )


def bilinear_table(n: int, l: int, q: int) -> SpectralTable:
    FamilyParams.of("bilinear", n=n, l=l, q=q)
    D = Domain.range1(min(n, l))
    return _table(
        "bilinear", {"n": n, "l": l, "q": q}, q ** (n * l), D, D,
        lambda a, b: gen_krawtchouk(a[0], n, l, q, b[0]),
        lambda b, a: gen_krawtchouk(b[0], n, l, q, a[0]),
        lambda a: bilinear_valency(n, l, q, a[0]),
        lambda b: bilinear_valency(n, l, q, b[0]),
    )


def grassmann_table(n: int, m: int, q: int) -> SpectralTable:
    FamilyParams.of("grassmann", n=n, m=m, q=q)
    D = Domain.range1(min(m, n - m))
    return _table(
        "grassmann", {"n": n, "m": m, "q": q}, q_binomial(n, m, q), D, D,
        lambda a, b: gen_eberlein(a[0], n, m, q, b[0]),
        lambda b, a: q_hahn(b[0], n, m, q, a[0]),
        lambda a: grassmann_valency(n, m, q, a[0]),
        lambda b: grassmann_multiplicity(n, m, q, b[0]),
    )


# --------------------------------------------------------------------------
# nonbinary Johnson


def nbj_domain(n: int, k: int, r: int = 3) -> Domain:
    """{(i, j) : i + j <= k, 0 <= j <= min(k, n - k)}; only i = 0 when r = 2."""
    imax = 0 if r == 2 else k
    return Domain(
        (i, j) for j in range(min(k, n - k) + 1) for i in range(imax + 1) if i + j <= k
    )


def nonbinary_johnson_table(r: int, n: int, k: int) -> SpectralTable:
    fp = FamilyParams.of("nonbinary_johnson", r=r, n=n, k=k)
    D = nbj_domain(n, k, r)

    def P(a, b):
        (i, j), (x, y) = a, b
        return (r - 1) ** j * krawtchouk(i, k - j, r - 1, x) * eberlein(j, n - x, k - x, y)

    def Q(b, a):
        (i, j), (x, y) = b, a
        return (
            Fraction(binomial(n, i), binomial(k, i))
            * krawtchouk(i, k - y, r - 1, x)
            * hahn(j, n - i, k - i, y)
        )

    def kv(a):
        i, j = a
        return (r - 1) ** j * hamming_valency(k - j, r - 1, i) * johnson_valency(n, k, j)

    def mv(b):
        i, j = b
        return (
            Fraction(binomial(n, i), binomial(k, i))
            * hamming_valency(k, r - 1, i)
            * johnson_multiplicity(n - i, k - i, j)
        )

    return _table(
        "nonbinary_johnson", fp.params, (r - 1) ** k * binomial(n, k), D, D, P, Q, kv, mv,
        reduction=fp.boundary,
    )


# --------------------------------------------------------------------------
# attenuated space


def attenuated_domain(n: int, m: int, l: int) -> Domain:
    """{(i, j) : i <= l, j <= n - m, i + j <= m}.

    ``i`` is the bilinear (rank) coordinate and ``j`` the Grassmann one, the
    labelling under which the eigenmatrix and Krein formulas hold.
    """
    return Domain(
        (i, j) for i in range(min(m, l) + 1) for j in range(min(m - i, n - m) + 1)
    )


def attenuated_table(n: int, m: int, l: int, q: int) -> SpectralTable:
    fp = FamilyParams.of("attenuated", n=n, m=m, l=l, q=q)
    D = attenuated_domain(n, m, l)
    top = q_binomial(n, m, q)

    def P(a, b):
        (i, j), (x, y) = a, b
        return q ** (j * l) * gen_krawtchouk(i, m - j, l, q, x) * gen_eberlein(
            j, n - x, m - x, q, y
        )

    def Q(b, a):
        (i, j), (x, y) = b, a
        return (
            Fraction(top, q_binomial(n - i, m - i, q))
            * gen_krawtchouk(i, m - y, l, q, x)
            * q_hahn(j, n - i, m - i, q, y)
        )

    def kv(a):
        i, j = a
        return q ** (j * l) * bilinear_valency(m - j, l, q, i) * grassmann_valency(n, m, q, j)

    def mv(b):
        i, j = b
        return (
            Fraction(top, q_binomial(n - i, m - i, q))
            * bilinear_valency(m, l, q, i)
            * grassmann_multiplicity(n - i, m - i, q, j)
        )

    return _table(
        "attenuated", fp.params, q ** (m * l) * top, D, D, P, Q, kv, mv,
        reduction=fp.boundary,
    )


# --------------------------------------------------------------------------
# classical closed-form Krein numbers q^s_{1i}


def hamming_closed_krein(k: int, y: int, r: int, i: int, s: int) -> Fraction:
    """q^s_{1i} of H(k - y, r - 1)."""
    N = k - y
    if not (0 <= i <= N and 0 <= s <= N):
        return Fraction(0)
    if s == i - 1:
        return Fraction((k - y - i + 1) * (r - 2))
    if s == i:
        return Fraction(i * (r - 3))
    if s == i + 1:
        return Fraction(i + 1)
    return Fraction(0)


def johnson_a_star(n: int, k: int, i: int, j: int) -> Fraction:
    """Diagonal coefficient a*_j of J(n - i, k - i)."""
    inner = _ratio([k - i - j, n - i - j + 1, n - k - j], [n - i - 2 * j]) + _ratio(
        [j, k - i - j + 1, n - k - j + 1], [n - i - 2 * j + 2]
    )
    return (n - i - 1) - _ratio([n - i, n - i - 1], [k - i, n - k, n - i - 2 * j + 1]) * inner


def johnson_closed_krein(n: int, k: int, i: int, j: int, s: int) -> Fraction:
    """q^s_{1j} of J(n - i, k - i)."""
    d = min(k - i, n - k)
    if k - i < 1 or not (0 <= j <= d and 0 <= s <= d):
        return Fraction(0)
    if s == j - 1:
        return _ratio(
            [n - i, n - i - 1, k - i - j + 1, n - i - j + 2, n - k - j + 1],
            [k - i, n - k, n - i - 2 * j + 2, n - i - 2 * j + 3],
        )
    if s == j:
        return johnson_a_star(n, k, i, j)
    if s == j + 1:
        return _ratio(
            [n - i, n - i - 1, j + 1, k - i - j, n - k - j],
            [k - i, n - k, n - i - 2 * j, n - i - 2 * j - 1],
        )
    return Fraction(0)


def bilinear_closed_krein(m: int, y: int, l: int, q: int, i: int, s: int) -> Fraction:
    """q^s_{1i} of H_q(m - y, l)."""
    qn = lambda a: q_number(a, q)  # noqa: E731
    d = min(m - y, l)
    if not (0 <= i <= d and 0 <= s <= d):
        return Fraction(0)
    if s == i - 1:
        return _qpow(q, 2 * i - 2) * (q - 1) * qn(l - i + 1) * qn(m - y - i + 1)
    if s == i:
        return qn(i) * (_qpow(q, m - y) + q**l - q**i - _qpow(q, i - 1) - 1)
    if s == i + 1:
        return Fraction(q**i * qn(i + 1))
    return Fraction(0)


def grassmann_b_star(n: int, m: int, q: int, i: int, j: int) -> Fraction:
    qn = lambda a: q_number(a, q) if a >= 0 else -1  # noqa: E731
    return _ratio(
        [qn(m - i - j), qn(n - i - j + 1), qn(n - m - j)],
        [_qpow(q, j), qn(n - i - 2 * j), qn(n - i - 2 * j + 1)],
    )


def grassmann_c_star(n: int, m: int, q: int, i: int, j: int) -> Fraction:
    qn = lambda a: q_number(a, q) if a >= 0 else -1  # noqa: E731
    return _ratio(
        [qn(j), qn(n - m - j + 1), qn(m - i - j + 1)],
        [_qpow(q, j), qn(n - i - 2 * j + 2), qn(n - i - 2 * j + 1)],
    )


def grassmann_a_star(n: int, m: int, q: int, i: int, j: int) -> Fraction:
    qn = lambda a: q_number(a, q)  # noqa: E731
    return (
        Fraction(qn(n - m) * qn(m - i), qn(n - i))
        - grassmann_b_star(n, m, q, i, j)
        - grassmann_c_star(n, m, q, i, j)
    )


def grassmann_closed_krein(n: int, m: int, q: int, i: int, j: int, t: int) -> Fraction:
    """q^t_{1j} of Gr_q(n - i, m - i)."""
    d = min(m - i, n - m)
    if m - i < 1 or n <= m or not (0 <= j <= d and 0 <= t <= d):
        return Fraction(0)
    h = h_star(n - i, m - i, q)
    if t == j - 1:
        return h * grassmann_b_star(n, m, q, i, j - 1)
    if t == j:
        return h * grassmann_a_star(n, m, q, i, j)
    if t == j + 1:
        return h * grassmann_c_star(n, m, q, i, j + 1)
    return Fraction(0)


# --------------------------------------------------------------------------
# bivariate closed forms


E1 = (1, 0)
E2 = (0, 1)


def nbj_support(i: int, j: int, direction) -> list:
    if tuple(direction) == E1:
        return [(i + 1, j), (i + 1, j - 1), (i, j), (i - 1, j + 1), (i - 1, j)]
    if tuple(direction) == E2:
        return [(i, j + 1), (i, j), (i, j - 1)]
    raise ValueError(f"direction must be (1,0) or (0,1), got {direction}")


def attenuated_support(i: int, j: int, direction) -> list:
    if tuple(direction) == E1:
        return [(i + 1, j), (i + 1, j - 1), (i, j + 1), (i, j), (i, j - 1), (i - 1, j + 1), (i - 1, j)]
    if tuple(direction) == E2:
        return [(i, j + 1), (i, j), (i, j - 1)]
    raise ValueError(f"direction must be (1,0) or (0,1), got {direction}")


def _check_in(D: Domain, *indices) -> None:
    for a in indices:
        if tuple(a) not in D:
            raise ValueError(f"index {tuple(a)} outside the domain")


def nbj_closed_krein(r: int, n: int, k: int, direction, ij, st) -> Fraction:
    """q^{st}_{eps, ij} of J_r(n, k) for eps = (1,0) or (0,1)."""
    D = nbj_domain(n, k, r)
    _check_in(D, ij, st)
    (i, j), (s, t) = ij, st
    direction = tuple(direction)
    if (s, t) not in nbj_support(i, j, direction):
        return Fraction(0)
    if direction == E1:
        if (s, t) == (i + 1, j):
            return _ratio([n, i + 1, k - i - j], [k, n - i - 2 * j])
        if (s, t) == (i + 1, j - 1):
            return _ratio([n, i + 1, n - k - j + 1], [k, n - i - 2 * j + 2])
        if (s, t) == (i, j):
            return Fraction(n * i * (r - 3), k)
        if (s, t) == (i - 1, j + 1):
            return _ratio([n, r - 2, j + 1, n - k - j], [k, n - i - 2 * j])
        # (i - 1, j)
        return _ratio([n, r - 2, k - i - j + 1, n - i - j + 2], [k, n - i - 2 * j + 2])
    if (s, t) == (i, j + 1):
        return _ratio(
            [n, n - 1, j + 1, k - i - j, n - k - j],
            [k, n - k, n - i - 2 * j, n - i - 2 * j - 1],
        )
    if (s, t) == (i, j - 1):
        return _ratio(
            [n, n - 1, k - i - j + 1, n - i - j + 2, n - k - j + 1],
            [k, n - k, n - i - 2 * j + 2, n - i - 2 * j + 3],
        )
    inner = _ratio([k - i - j, n - i - j + 1, n - k - j], [n - i - 2 * j]) + _ratio(
        [j, k - i - j + 1, n - k - j + 1], [n - i - 2 * j + 2]
    )
    return (n - 1) - _ratio([n, n - 1], [k, n - k, n - i - 2 * j + 1]) * inner


def attenuated_closed_krein(n: int, m: int, l: int, q: int, direction, ij, st) -> Fraction:
    """q^{st}_{eps, ij} of the attenuated scheme for eps = (1,0) or (0,1)."""
    D = attenuated_domain(n, m, l)
    _check_in(D, ij, st)
    (i, j), (s, t) = ij, st
    direction = tuple(direction)
    if (s, t) not in attenuated_support(i, j, direction):
        return Fraction(0)
    qn = lambda a: q_number(a, q)  # noqa: E731
    if direction == E1:
        if (s, t) == (i + 1, j):
            return _qpow(q, i) * _ratio([qn(i + 1), qn(n), qn(m - i - j)], [qn(m), qn(n - i - 2 * j)])
        if (s, t) == (i + 1, j - 1):
            return _qpow(q, m - j + 1) * _ratio(
                [qn(i + 1), qn(n), qn(n - m - j + 1)], [qn(m), qn(n - i - 2 * j + 2)]
            )
        if (s, t) == (i - 1, j):
            return _qpow(q, 2 * i - 2) * (q - 1) * _ratio(
                [qn(l - i + 1), qn(n), qn(m - i - j + 1), qn(n - i - j + 2)],
                [qn(m), qn(n - i - 2 * j + 2)],
            )
        if (s, t) == (i - 1, j + 1):
            return _qpow(q, m + i - j - 2) * (q - 1) * _ratio(
                [qn(l - i + 1), qn(n), qn(j + 1), qn(n - m - j)],
                [qn(m), qn(n - i - 2 * j)],
            )
        if (s, t) == (i, j - 1):
            return _qpow(q, m - j + 1) * (q - 1) * _ratio(
                [qn(n), qn(i), qn(m - i - j + 1), qn(n - m - j + 1), qn(n - i - j + 2)],
                [qn(m), qn(n - i - 2 * j + 2), qn(n - i - 2 * j + 3)],
            )
        if (s, t) == (i, j + 1):
            return _qpow(q, m - j - 1) * (q - 1) * _ratio(
                [qn(n), qn(i), qn(j + 1), qn(n - m - j), qn(m - i - j)],
                [qn(m), qn(n - i - 2 * j), qn(n - i - 2 * j - 1)],
            )
        # (i, j)
        inner = _ratio(
            [qn(m - i - j), qn(n - i - j + 1), qn(n - m - j)], [qn(n - i - 2 * j)]
        ) + _ratio([qn(j), qn(n - m - j + 1), qn(m - i - j + 1)], [qn(n - i - 2 * j + 2)])
        lead = _qpow(q, m - j) * (q - 1) * _ratio([qn(n), qn(i)], [qn(m), qn(n - i - 2 * j + 1)])
        tail = (q**m + q**l - q**i - _qpow(q, i - 1) - 1) * Fraction(qn(n) * qn(i), qn(m))
        return tail - lead * inner
    if (s, t) == (i, j - 1):
        return _ratio(
            [qn(n), qn(n - 1), qn(m - i - j + 1), qn(n - m - j + 1), qn(n - i - j + 2)],
            [_qpow(q, j - 2), qn(n - m), qn(m), qn(n - i - 2 * j + 2), qn(n - i - 2 * j + 3)],
        )
    if (s, t) == (i, j + 1):
        return _ratio(
            [qn(n), qn(n - 1), qn(j + 1), qn(n - m - j), qn(m - i - j)],
            [_qpow(q, j), qn(n - m), qn(m), qn(n - i - 2 * j), qn(n - i - 2 * j - 1)],
        )
    inner = _ratio(
        [qn(m - i - j), qn(n - i - j + 1), qn(n - m - j)], [qn(n - i - 2 * j)]
    ) + _ratio([qn(j), qn(n - m - j + 1), qn(m - i - j + 1)], [qn(n - i - 2 * j + 2)])
    return q * qn(n - 1) - _ratio(
        [qn(n), qn(n - 1)], [_qpow(q, j - 1), qn(n - m), qn(m), qn(n - i - 2 * j + 1)]
    ) * inner


# --------------------------------------------------------------------------
# closed-form providers and the full verifier


@dataclass
class ClosedFormKrein:
    """Closed-form values q^{beta}_{eps, alpha} for one generator direction."""

    family: str
    direction: tuple
    domain: Domain
    values: dict  # (alpha, beta) -> Fraction, only on the declared support
    support: dict  # alpha -> list of beta in support and domain

    def __call__(self, alpha, beta) -> Fraction:
        return self.values.get((tuple(alpha), tuple(beta)), Fraction(0))


def _classical_closed(fp: FamilyParams):
    """(function(i, s) -> q^s_{1i}, support(i)) for the one-variable families."""
    p = fp.params
    if fp.family == "hamming":
        return lambda i, s: hamming_closed_krein(p["n"], 0, p["q"] + 1, i, s)
    if fp.family == "johnson":
        return lambda i, s: johnson_closed_krein(p["n"], p["k"], 0, i, s)
    if fp.family == "bilinear":
        return lambda i, s: bilinear_closed_krein(p["n"], 0, p["l"], p["q"], i, s)
    return lambda i, s: grassmann_closed_krein(p["n"], p["m"], p["q"], 0, i, s)


def closed_form_krein(fp: FamilyParams, direction) -> ClosedFormKrein:
    direction = tuple(direction)
    p = fp.params
    if fp.family == "nonbinary_johnson":
        D = nbj_domain(p["n"], p["k"], p["r"])
        fn = lambda a, b: nbj_closed_krein(p["r"], p["n"], p["k"], direction, a, b)  # noqa: E731
        supp = nbj_support
    elif fp.family == "attenuated":
        D = attenuated_domain(p["n"], p["m"], p["l"])
        fn = lambda a, b: attenuated_closed_krein(  # noqa: E731
            p["n"], p["m"], p["l"], p["q"], direction, a, b
        )
        supp = attenuated_support
    else:
        D = fp.table().idem_domain
        f1 = _classical_closed(fp)
        fn = lambda a, b: f1(a[0], b[0])  # noqa: E731
        supp = lambda i, _unused, d: [(i - 1,), (i,), (i + 1,)]  # noqa: E731
    if direction not in D:
        raise ValueError(f"generator {direction} is not in the domain of {fp.label()}")
    values, support = {}, {}
    for alpha in D:
        args = alpha if len(alpha) == 2 else (alpha[0], None)
        sup = [b for b in supp(*args, direction) if b in D]
        support[alpha] = sup
        for beta in sup:
            values[(alpha, beta)] = fn(alpha, beta)
    return ClosedFormKrein(fp.family, direction, D, values, support)


@dataclass
class ClosedFormReport:
    """Result of comparing closed-form Krein numbers with the spectral sums."""

    params: FamilyParams
    boundary: str | None
    directions: list
    checked: int = 0
    mismatches: list = field(default_factory=list)  # (dir, alpha, beta, closed, spectral)
    support_violations: list = field(default_factory=list)  # (dir, alpha, beta, value)
    leading_zero: list = field(default_factory=list)  # (dir, alpha)
    errors: list = field(default_factory=list)
    q_polynomial: bool | None = None

    @property
    def all_match(self) -> bool:
        return not (self.mismatches or self.support_violations or self.leading_zero or self.errors)

    @property
    def verdict(self) -> bool:
        return self.all_match and bool(self.q_polynomial)

    def to_dict(self) -> dict:
        fr = lambda x: f"{x.numerator}/{x.denominator}"  # noqa: E731
        return {
            "params": self.params.to_dict(),
            "boundary": self.boundary,
            "directions": [list(d) for d in self.directions],
            "checked": self.checked,
            "mismatches": [
                {"direction": list(d), "alpha": list(a), "beta": list(b),
                 "closed": fr(c), "spectral": fr(s)}
                for d, a, b, c, s in self.mismatches
            ],
            "support_violations": [
                {"direction": list(d), "alpha": list(a), "beta": list(b), "value": fr(v)}
                for d, a, b, v in self.support_violations
            ],
            "leading_zero": [{"direction": list(d), "alpha": list(a)} for d, a in self.leading_zero],
            "errors": self.errors,
            "q_polynomial": self.q_polynomial,
            "verdict": self.verdict,
        }


def verify_closed_forms(fp: FamilyParams, table: SpectralTable | None = None, krein=None) -> ClosedFormReport:
    """Compare closed-form Krein numbers to the spectral sums, entry by entry.

    ``table`` / ``krein`` may be passed to test a perturbed table.
    """
    t = table if table is not None else fp.table()
    K = krein if krein is not None else krein_tensor(t)
    D = t.idem_domain
    directions = [core.unit(D.dim, i) for i in D.generators()]
    report = ClosedFormReport(fp, fp.boundary, directions)
    for eps in directions:
        try:
            cf = closed_form_krein(fp, eps)
        except (ZeroDivisionError, ValueError) as exc:
            report.errors.append(f"direction {eps}: {exc}")
            continue
        for alpha in D:
            sup = set(cf.support[alpha])
            for beta in D:
                spectral = K[eps, alpha, beta]
                report.checked += 1
                if beta in sup:
                    closed = cf(alpha, beta)
                    if closed != spectral:
                        report.mismatches.append((eps, alpha, beta, closed, spectral))
                elif spectral != 0:
                    report.support_violations.append((eps, alpha, beta, spectral))
            top = core.add(alpha, eps)
            if top in D and K[eps, alpha, top] == 0:
                report.leading_zero.append((eps, alpha))
    report.q_polynomial = core.check_q_polynomial(t, D, GRLEX, K).verdict
    return report
