"""Generic spectral machinery for symmetric commutative association schemes.

A :class:`SpectralTable` carries everything the closed formulas give for a
scheme (P, Q, valencies, multiplicities, |X|) indexed by multi-indices.  From
it we build Krein and intersection tensors by the standard spectral sums and
test the multivariate P-/Q-polynomial criteria for a chosen monomial order.

Zero tests are exact; there is no tolerance anywhere.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

MultiIndex = tuple  # tuple[int, ...]

__all__ = [
    "MultiIndex",
    "Domain",
    "MonomialOrder",
    "LEX",
    "GRLEX",
    "compare",
    "all_orders",
    "is_downward_closed",
    "SpectralTable",
    "StructureTensor",
    "KreinTensor",
    "IntersectionTensor",
    "krein_from_spectral",
    "intersection_from_spectral",
    "krein_tensor",
    "intersection_tensor",
    "orthogonality_residual",
    "PolynomialReport",
    "check_q_polynomial",
    "check_p_polynomial",
    "table_invariant_failures",
    "tensor_sum_rule_failures",
]


def unit(dim: int, i: int) -> MultiIndex:
    return tuple(1 if a == i else 0 for a in range(dim))


def add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a - b for a, b in zip(alpha, beta))


# --------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic or graded lexicographic order on N^l.

    ``priority`` lists the coordinates in the order they are compared; the
    default is (0, 1, ..., l-1).  Reordering the variables of a monomial
    order gives another monomial order.
    """

    tag: str
    priority: tuple | None = None

    def __post_init__(self):
        if self.tag not in ("lex", "grlex"):
            raise ValueError(f"unknown monomial order {self.tag!r}")
        if self.priority is not None:
            pr = tuple(int(v) for v in self.priority)
            if sorted(pr) != list(range(len(pr))):
                raise ValueError(f"priority {pr} is not a permutation")
            object.__setattr__(self, "priority", pr)

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        """``lex``, ``grlex`` or e.g. ``grlex[1,0]``."""
        text = text.strip()
        if "[" in text:
            tag, rest = text.split("[", 1)
            return cls(tag, tuple(int(v) for v in rest.rstrip("]").split(",")))
        return cls(text)

    @property
    def name(self) -> str:
        if self.priority is None or self.priority == tuple(range(len(self.priority))):
            return self.tag
        return f"{self.tag}[{','.join(map(str, self.priority))}]"

    def key(self, alpha: MultiIndex):
        alpha = tuple(alpha)
        if self.priority is not None:
            if len(self.priority) != len(alpha):
                raise ValueError(f"order on N^{len(self.priority)} applied to {alpha}")
            alpha = tuple(alpha[i] for i in self.priority)
        if self.tag == "lex":
            return alpha
        return (sum(alpha),) + alpha

    def compare(self, alpha: MultiIndex, beta: MultiIndex) -> int:
        if len(alpha) != len(beta):
            raise ValueError(f"dimension mismatch: {alpha} vs {beta}")
        ka, kb = self.key(alpha), self.key(beta)
        return (ka > kb) - (ka < kb)

    def le(self, alpha: MultiIndex, beta: MultiIndex) -> bool:
        return self.compare(alpha, beta) <= 0


def all_orders(dim: int) -> list["MonomialOrder"]:
    """lex and grlex under every priority of the coordinates."""
    from itertools import permutations

    return [MonomialOrder(tag, perm) for tag in ("grlex", "lex") for perm in permutations(range(dim))]


LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")


def compare(order: MonomialOrder | str, alpha: MultiIndex, beta: MultiIndex) -> int:
    """-1, 0 or 1 as alpha <, =, > beta under ``order``."""
    if isinstance(order, str):
        order = MonomialOrder(order)
    return order.compare(alpha, beta)


# --------------------------------------------------------------------------
# domains


class Domain:
    """Finite set of multi-indices of a fixed dimension, kept in grlex order."""

    def __init__(self, members: Iterable[Sequence[int]]):
        members = {tuple(int(v) for v in a) for a in members}
        if not members:
            raise ValueError("empty domain")
        dims = {len(a) for a in members}
        if len(dims) != 1:
            raise ValueError(f"mixed dimensions in domain: {sorted(dims)}")
        self.dim = dims.pop()
        if any(v < 0 for a in members for v in a):
            raise ValueError("multi-indices must be nonnegative")
        self.members: tuple[MultiIndex, ...] = tuple(sorted(members, key=GRLEX.key))
        self._pos = {a: p for p, a in enumerate(self.members)}

    @classmethod
    def range1(cls, d: int) -> "Domain":
        return cls((i,) for i in range(d + 1))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.members)

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self._pos

    def __getitem__(self, index: int) -> MultiIndex:
        return self.members[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, Domain) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Domain({list(self.members)})"

    def position(self, alpha) -> int:
        try:
            return self._pos[tuple(alpha)]
        except KeyError:
            raise KeyError(f"{tuple(alpha)} not in domain") from None

    @property
    def origin(self) -> MultiIndex:
        return (0,) * self.dim

    def generators(self) -> list[int]:
        """Coordinates i with epsilon_i in the domain."""
        return [i for i in range(self.dim) if unit(self.dim, i) in self]


def is_downward_closed(D: Domain | Iterable[Sequence[int]]) -> bool:
    if not isinstance(D, Domain):
        D = Domain(D)
    for alpha in D:
        for beta in itertools.product(*(range(a + 1) for a in alpha)):
            if beta not in D:
                return False
    return True


# --------------------------------------------------------------------------
# spectral tables


@dataclass(frozen=True)
class SpectralTable:
    """Closed-formula parameter set of a symmetric association scheme.

    ``P[a][b]`` is P_alpha(beta) for relation ``rel_domain.members[a]`` and
    idempotent ``idem_domain.members[b]``; ``Q[b][a]`` is Q_beta(alpha).
    """

    family: str
    params: dict
    size: int
    rel_domain: Domain
    idem_domain: Domain
    P: tuple
    Q: tuple
    valencies: tuple
    multiplicities: tuple
    reduction: str | None = None
    notes: tuple = field(default=())

    def __post_init__(self):
        nr, ni = len(self.rel_domain), len(self.idem_domain)
        if nr != ni:
            raise ValueError(f"|I| = {nr} but |J| = {ni}")
        if len(self.P) != nr or any(len(row) != ni for row in self.P):
            raise ValueError("P has the wrong shape")
        if len(self.Q) != ni or any(len(row) != nr for row in self.Q):
            raise ValueError("Q has the wrong shape")
        # symmetric schemes only: P_l(i)/k_l = Q_i(l)/m_i
        for a in range(nr):
            for b in range(ni):
                if self.P[a][b] * self.multiplicities[b] != self.Q[b][a] * self.valencies[a]:
                    raise ValueError(
                        "table is not that of a symmetric scheme: "
                        f"P/k != Q/m at relation {self.rel_domain.members[a]}, "
                        f"idempotent {self.idem_domain.members[b]}"
                    )

    @property
    def classes(self) -> int:
        return len(self.rel_domain) - 1

    def p(self, alpha, beta) -> Fraction:
        return self.P[self.rel_domain.position(alpha)][self.idem_domain.position(beta)]

    def q(self, beta, alpha) -> Fraction:
        return self.Q[self.idem_domain.position(beta)][self.rel_domain.position(alpha)]

    def k(self, alpha) -> int:
        return self.valencies[self.rel_domain.position(alpha)]

    def m(self, beta) -> int:
        return self.multiplicities[self.idem_domain.position(beta)]

    def with_entry(self, which: str, a: int, b: int, value) -> "SpectralTable":
        """Copy with one raw P or Q entry replaced (fault injection).

        Skips the symmetry check so that corrupted tables can be built.
        """
        mat = [list(row) for row in (self.P if which == "P" else self.Q)]
        mat[a][b] = Fraction(value)
        new = object.__new__(SpectralTable)
        for f in self.__dataclass_fields__:
            object.__setattr__(new, f, getattr(self, f))
        object.__setattr__(new, which, tuple(tuple(r) for r in mat))
        return new


def _lcm_den(rows) -> int:
    L = 1
    for row in rows:
        for v in row:
            L = math.lcm(L, Fraction(v).denominator)
    return L


def _integer_matrix(rows, scale: int) -> np.ndarray:
    return np.array(
        [[int(Fraction(v) * scale) for v in row] for row in rows], dtype=object
    )


# --------------------------------------------------------------------------
# tensors


class StructureTensor:
    """Dense tensor T[a, b, c] = x^{gamma}_{alpha beta} over one domain."""

    kind = "structure"

    def __init__(self, domain: Domain, data: np.ndarray):
        n = len(domain)
        if data.shape != (n, n, n):
            raise ValueError(f"tensor shape {data.shape} does not fit domain of size {n}")
        self.domain = domain
        self.data = data

    def __getitem__(self, key) -> Fraction:
        a, b, c = key
        pos = self.domain.position
        return self.data[pos(a), pos(b), pos(c)]

    def get(self, alpha, beta, gamma) -> Fraction:
        """x^{gamma}_{alpha, beta}."""
        return self[alpha, beta, gamma]

    def copy(self):
        return type(self)(self.domain, self.data.copy())

    def set(self, alpha, beta, gamma, value) -> None:
        pos = self.domain.position
        self.data[pos(alpha), pos(beta), pos(gamma)] = Fraction(value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StructureTensor)
            and self.domain == other.domain
            and bool(np.all(self.data == other.data))
        )

    def mismatches(self, other: "StructureTensor") -> list[tuple]:
        out = []
        D = self.domain.members
        for a, b, c in itertools.product(range(len(D)), repeat=3):
            if self.data[a, b, c] != other.data[a, b, c]:
                out.append((D[a], D[b], D[c], self.data[a, b, c], other.data[a, b, c]))
        return out


class KreinTensor(StructureTensor):
    kind = "krein"


class IntersectionTensor(StructureTensor):
    kind = "intersection"


def _spectral_tensor(weights, rows, divisors) -> np.ndarray:
    """T[a,b,c] = sum_l w_l R[a][l] R[b][l] R[c][l] / divisors[c], exactly."""
    L = _lcm_den(rows)
    W = _integer_matrix(rows, L)
    w = np.array([int(x) for x in weights], dtype=object)
    n = W.shape[0]
    out = np.empty((n, n, n), dtype=object)
    for c in range(n):
        M = (W * (w * W[c])) @ W.T
        den = L**3 * divisors[c]
        for a in range(n):
            for b in range(n):
                out[a, b, c] = Fraction(M[a, b], den)
    return out


def krein_tensor(t: SpectralTable) -> KreinTensor:
    """All Krein numbers q^gamma_{alpha beta} = (1/(|X| m_gamma)) sum_l k_l Q Q Q."""
    divisors = [t.size * m for m in t.multiplicities]
    return KreinTensor(t.idem_domain, _spectral_tensor(t.valencies, t.Q, divisors))


def intersection_tensor(t: SpectralTable) -> IntersectionTensor:
    """All intersection numbers p^gamma_{alpha beta} = (1/(|X| k_gamma)) sum_l m_l P P P."""
    divisors = [t.size * k for k in t.valencies]
    return IntersectionTensor(t.rel_domain, _spectral_tensor(t.multiplicities, t.P, divisors))


def krein_from_spectral(t: SpectralTable, i, j, k) -> Fraction:
    """Single Krein number q^k_{ij} by the spectral sum over relations."""
    D = t.idem_domain
    bi, bj, bk = D.position(i), D.position(j), D.position(k)
    total = Fraction(0)
    for a in range(len(t.rel_domain)):
        total += t.valencies[a] * t.Q[bi][a] * t.Q[bj][a] * t.Q[bk][a]
    return total / (t.size * t.multiplicities[bk])


def intersection_from_spectral(t: SpectralTable, i, j, k) -> Fraction:
    """Single intersection number p^k_{ij} by the spectral sum over idempotents."""
    D = t.rel_domain
    ai, aj, ak = D.position(i), D.position(j), D.position(k)
    total = Fraction(0)
    for b in range(len(t.idem_domain)):
        total += t.multiplicities[b] * t.P[ai][b] * t.P[aj][b] * t.P[ak][b]
    return total / (t.size * t.valencies[ak])


def orthogonality_residual(t: SpectralTable, i, j) -> Fraction:
    """sum_l k_l Q_i(l) Q_j(l) - |X| m_i delta_ij; zero for a valid table."""
    D = t.idem_domain
    bi, bj = D.position(i), D.position(j)
    total = Fraction(0)
    for a in range(len(t.rel_domain)):
        total += t.valencies[a] * t.Q[bi][a] * t.Q[bj][a]
    if bi == bj:
        total -= t.size * t.multiplicities[bi]
    return total


# --------------------------------------------------------------------------
# polynomiality criteria


@dataclass
class PolynomialReport:
    """Outcome of a multivariate P- or Q-polynomial check.

    ``violations`` holds ``(generator, alpha, beta, reason)`` tuples, with
    reason ``"support"`` (nonzero entry beyond alpha + eps) or ``"leading"``
    (vanishing entry at alpha + eps).
    """

    kind: str
    order: str
    downward_closed: bool
    generators: list
    violations: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.downward_closed and bool(self.generators) and not self.violations

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "downward_closed": self.downward_closed,
            "generators": [list(g) for g in self.generators],
            "violations": [
                {"generator": list(g), "alpha": list(a), "beta": list(b), "reason": r}
                for g, a, b, r in self.violations
            ],
            "verdict": self.verdict,
        }


def _check_polynomial(kind, D: Domain, order, tensor: StructureTensor) -> PolynomialReport:
    if isinstance(order, str):
        order = MonomialOrder(order)
    if tensor.domain != D:
        raise ValueError("tensor domain does not match the given domain")
    gens = [unit(D.dim, i) for i in D.generators()]
    report = PolynomialReport(kind, order.name, is_downward_closed(D), gens)
    pos = D.position
    for eps in gens:
        e = pos(eps)
        for alpha in D:
            a = pos(alpha)
            top = add(alpha, eps)
            for beta in D:
                value = tensor.data[e, a, pos(beta)]
                if value != 0 and not order.le(beta, top):
                    report.violations.append((eps, alpha, beta, "support"))
            if top in D and tensor.data[e, a, pos(top)] == 0:
                report.violations.append((eps, alpha, top, "leading"))
    return report


def check_q_polynomial(t: SpectralTable, D: Domain | None = None, order=GRLEX, krein=None):
    """Multivariate Q-polynomial criterion on the idempotent labels.

    Generators are the unit vectors present in the domain; a domain that
    degenerates to one coordinate is checked as a univariate scheme.
    """
    D = D or t.idem_domain
    krein = krein if krein is not None else krein_tensor(t)
    return _check_polynomial("Q", D, order, krein)


def check_p_polynomial(t: SpectralTable, D: Domain | None = None, order=GRLEX, inter=None):
    """Multivariate P-polynomial criterion on the relation labels."""
    D = D or t.rel_domain
    inter = inter if inter is not None else intersection_tensor(t)
    return _check_polynomial("P", D, order, inter)


# --------------------------------------------------------------------------
# table-level invariants


def table_invariant_failures(t: SpectralTable) -> list[str]:
    """Exact checks every valid table satisfies; returns failure messages."""
    fails = []
    R, J = t.rel_domain, t.idem_domain
    nr = len(R)
    o_rel = R.position(R.origin)
    o_idem = J.position(J.origin)
    if sum(t.valencies) != t.size:
        fails.append(f"sum of valencies {sum(t.valencies)} != |X| = {t.size}")
    if sum(t.multiplicities) != t.size:
        fails.append(f"sum of multiplicities {sum(t.multiplicities)} != |X| = {t.size}")
    for a in range(nr):
        if t.valencies[a] <= 0:
            fails.append(f"nonpositive valency at {R.members[a]}")
        if t.P[a][o_idem] != t.valencies[a]:
            fails.append(f"P_alpha(o) != k_alpha at {R.members[a]}")
        if t.Q[o_idem][a] != 1:
            fails.append(f"Q_o(alpha) != 1 at {R.members[a]}")
    for b in range(nr):
        if t.multiplicities[b] <= 0:
            fails.append(f"nonpositive multiplicity at {J.members[b]}")
        if t.Q[b][o_rel] != t.multiplicities[b]:
            fails.append(f"Q_beta(o) != m_beta at {J.members[b]}")
        if t.P[o_rel][b] != 1:
            fails.append(f"P_o(beta) != 1 at {J.members[b]}")
    for b in range(nr):
        for c in range(nr):
            s = sum(t.P[a][b] * t.Q[c][a] for a in range(nr))
            if s != (t.size if b == c else 0):
                fails.append(f"(PQ)[{J.members[b]},{J.members[c]}] = {s}")
    for b in range(nr):
        for c in range(b, nr):
            r = orthogonality_residual(t, J.members[b], J.members[c])
            if r != 0:
                fails.append(f"orthogonality residual {r} at {J.members[b]},{J.members[c]}")
    return fails


def tensor_sum_rule_failures(t: SpectralTable, krein=None, inter=None) -> list[str]:
    """Krein / intersection sum rules, symmetry and Krein nonnegativity."""
    fails = []
    krein = krein if krein is not None else krein_tensor(t)
    inter = inter if inter is not None else intersection_tensor(t)
    for tensor, weights, name in ((krein, t.multiplicities, "q"), (inter, t.valencies, "p")):
        T = tensor.data
        D = tensor.domain.members
        n = len(D)
        for a in range(n):
            for b in range(n):
                s = sum(T[a, b, c] * weights[c] for c in range(n))
                if s != weights[a] * weights[b]:
                    fails.append(f"sum_c {name}^c_ab w_c != w_a w_b at {D[a]},{D[b]}")
                for c in range(n):
                    if T[a, b, c] != T[b, a, c]:
                        fails.append(f"{name} not symmetric at {D[a]},{D[b]},{D[c]}")
                    if T[a, b, c] < 0:
                        fails.append(f"{name}^{D[c]}_{D[a]},{D[b]} = {T[a, b, c]} < 0")
        for a in range(n):
            for c in range(n):
                s = sum(T[a, b, c] for b in range(n))
                if s != weights[a]:
                    fails.append(f"sum_b {name}^c_ab != w_a at {D[a]},{D[c]}")
    return fails
