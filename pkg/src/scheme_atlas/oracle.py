"""Ground-truth schemes built from actual points.

Points are weighted vectors (nonbinary Johnson) or subspaces of F_q^(n+l)
meeting W trivially (attenuated space).  Everything here is derived from the
relation matrix alone, then compared with the closed-formula tables.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import Domain, IntersectionTensor, KreinTensor, SpectralTable, intersection_tensor, krein_tensor
from .exact import q_binomial
from .families import FamilyParams, attenuated_domain, nbj_domain
from .finite_field import field as gf

__all__ = [
    "DEFAULT_MAX_POINTS",
    "OracleError",
    "AxiomViolation",
    "SizeGuardError",
    "WeightedVector",
    "Subspace",
    "max_points",
    "enumerate_nbj_points",
    "enumerate_attenuated_points",
    "nbj_relation",
    "attenuated_relation",
    "ambient_w",
    "ConcreteScheme",
    "build_concrete_scheme",
    "nbj_scheme",
    "attenuated_scheme",
    "Idempotents",
    "build_idempotents",
    "krein_by_hadamard",
    "OracleReport",
    "run_oracle",
]

DEFAULT_MAX_POINTS = 2000


class OracleError(Exception):
    """A matrix identity failed; ``failures`` lists each one."""

    def __init__(self, message: str, failures=None):
        super().__init__(message)
        self.failures = list(failures or [])


class AxiomViolation(OracleError):
    def __init__(self, axiom: str, witness):
        super().__init__(f"axiom {axiom} violated: {witness}", [(axiom, witness)])
        self.axiom = axiom
        self.witness = witness


class SizeGuardError(OracleError):
    pass


def max_points() -> int:
    raw = os.environ.get("SCHEME_ATLAS_MAX_POINTS")
    return int(raw) if raw else DEFAULT_MAX_POINTS


def _guard(count: int) -> None:
    limit = max_points()
    if count > limit:
        raise SizeGuardError(
            f"{count} points exceeds the oracle limit {limit} (set SCHEME_ATLAS_MAX_POINTS)"
        )


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class WeightedVector:
    entries: tuple

    @property
    def weight(self) -> int:
        return sum(1 for x in self.entries if x)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Subspace:
    """Row space of ``rows`` over GF(q); ``rows`` is the reduced echelon basis."""

    q: int
    ambient: int
    rows: tuple

    @classmethod
    def span(cls, vectors, q: int, ambient: int | None = None) -> "Subspace":
        M = np.array(vectors, dtype=np.int64).reshape(-1, ambient or len(vectors[0]))
        R, r = _kernels.gf_rref(M, gf(q))
        return cls(q, M.shape[1], tuple(tuple(int(x) for x in row) for row in R[:r]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.dim, self.ambient)


def enumerate_nbj_points(r: int, n: int, k: int) -> list[WeightedVector]:
    """All weight-k words of length n over {0,...,r-1}: supports lex, then values."""
    if r < 2 or not 0 <= k <= n:
        raise ValueError(f"need r >= 2 and 0 <= k <= n, got r={r}, n={n}, k={k}")
    _guard((r - 1) ** k * math.comb(n, k))
    out = []
    for supp in itertools.combinations(range(n), k):
        for vals in itertools.product(range(1, r), repeat=k):
            x = [0] * n
            for pos, v in zip(supp, vals):
                x[pos] = v
            out.append(WeightedVector(tuple(x)))
    return out


def _rref_blocks(n: int, m: int, q: int):
    """All m x n reduced echelon matrices of rank m over GF(q)."""
    for pivots in itertools.combinations(range(n), m):
        free = [(t, c) for t, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            A = np.zeros((m, n), dtype=np.int64)
            for t, p in enumerate(pivots):
                A[t, p] = 1
            for (t, c), v in zip(free, vals):
                A[t, c] = v
            yield A


def ambient_w(n: int, l: int, q: int) -> Subspace:
    """W: the span of the last l coordinate vectors of F_q^(n+l)."""
    return Subspace(q, n + l, tuple(tuple(int(c == n + t) for c in range(n + l)) for t in range(l)))


def enumerate_attenuated_points(n: int, m: int, l: int, q: int) -> list[Subspace]:
    """All m-subspaces of F_q^(n+l) meeting W trivially, as echelon bases [A | B]."""
    gf(q)  # validates q
    if not 0 <= m <= n or l < 0:
        raise ValueError(f"need 0 <= m <= n and l >= 0, got n={n}, m={m}, l={l}")
    _guard(q ** (m * l) * q_binomial(n, m, q))
    if m == 0:
        return [Subspace(q, n + l, ())]
    out = []
    for A in _rref_blocks(n, m, q):
        for vals in itertools.product(range(q), repeat=m * l):
            B = np.array(vals, dtype=np.int64).reshape(m, l)
            M = np.hstack([A, B])
            out.append(Subspace(q, n + l, tuple(tuple(int(x) for x in row) for row in M)))
    return out


def nbj_relation(x, y, k: int) -> tuple[int, int]:
    """(i, j) with j = k - c and i = c - e, c the common support size and e
    the number of equal nonzero entries."""
    x = x.entries if isinstance(x, WeightedVector) else tuple(x)
    y = y.entries if isinstance(y, WeightedVector) else tuple(y)
    wx = sum(1 for a in x if a)
    wy = sum(1 for a in y if a)
    if wx != k or wy != k or len(x) != len(y):
        raise ValueError(f"weights {wx}, {wy} do not both equal {k}")
    c = sum(1 for a, b in zip(x, y) if a and b)
    e = sum(1 for a, b in zip(x, y) if a and a == b)
    return (c - e, k - c)


def attenuated_relation(V: Subspace, V2: Subspace, W: Subspace, m: int) -> tuple[int, int]:
    """(i, j) with j = m - dim(V/W cap V'/W) and i = m - j - dim(V cap V').

    ``j`` is the Grassmann distance of the images in F_q^(n+l)/W and ``i``
    the rank coordinate, matching the labelling of the eigenmatrices.
    """
    F = gf(V.q)
    if V.dim != m or V2.dim != m:
        raise ValueError("subspaces must have dimension m")
    l = W.dim
    if _kernels.gf_rank(np.vstack([V.matrix(), W.matrix()]), F) != m + l or _kernels.gf_rank(
        np.vstack([V2.matrix(), W.matrix()]), F
    ) != m + l:
        raise ValueError("subspace meets W nontrivially")
    pair = np.vstack([V.matrix(), V2.matrix()])
    meet = 2 * m - _kernels.gf_rank(pair, F)
    quot = 2 * (m + l) - _kernels.gf_rank(np.vstack([pair, W.matrix()]), F) - l
    j = m - quot
    return (m - j - meet, j)


# --------------------------------------------------------------------------
# the concrete scheme


@dataclass
class ConcreteScheme:
    """Points, relation labels and intersection numbers read off the matrices."""

    points: list
    domain: Domain
    labels: np.ndarray  # labels[x, y] = position of R(x, y) in domain
    intersection: IntersectionTensor
    family: str = ""
    params: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.points)

    def adjacency(self, alpha) -> np.ndarray:
        return (self.labels == self.domain.position(tuple(alpha))).astype(np.int64)

    def valency(self, alpha) -> int:
        return int(self.adjacency(alpha)[0].sum())

    def relation(self, x: int, y: int) -> tuple:
        return self.domain[int(self.labels[x, y])]

    def dump(self) -> str:
        """Header line, then the relation matrix with labels written ``i,j``."""
        head = " ".join(
            [self.family or "scheme",
             ",".join(f"{k}={v}" for k, v in self.params.items()) or "-",
             str(self.size), str(len(self.domain))]
        )
        names = [",".join(str(c) for c in a) for a in self.domain]
        rows = [" ".join(names[v] for v in row) for row in self.labels]
        return "\n".join([head, *rows]) + "\n"


def _label_matrix(points, relation, domain: Domain | None):
    N = len(points)
    raw = [[tuple(relation(points[x], points[y])) for y in range(N)] for x in range(N)]
    if domain is None:
        domain = Domain({a for row in raw for a in row})
    labels = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        for y in range(N):
            a = raw[x][y]
            if a not in domain:
                raise AxiomViolation("A1", f"R({x},{y}) = {a} lies outside the index set")
            labels[x, y] = domain.position(a)
    return domain, labels


def build_concrete_scheme(points, relation=None, domain: Domain | None = None, *,
                          labels: np.ndarray | None = None, family: str = "",
                          params: dict | None = None) -> ConcreteScheme:
    """Build adjacency matrices and verify axioms (A1)-(A6).

    Pass either ``relation`` (a function of two points) or a precomputed
    ``labels`` matrix of positions in ``domain``.  Any failure raises
    :class:`AxiomViolation` with a witness.
    """
    N = len(points)
    _guard(N)
    if labels is None:
        if relation is None:
            raise ValueError("need a relation function or a label matrix")
        domain, labels = _label_matrix(points, relation, domain)
    elif domain is None:
        raise ValueError("a label matrix needs its domain")
    labels = np.asarray(labels, dtype=np.int64)
    d = len(domain)
    if labels.shape != (N, N) or labels.min(initial=0) < 0 or labels.max(initial=0) >= d:
        raise AxiomViolation("A1", "label matrix does not partition X x X into the index set")
    seen = np.zeros(d, dtype=bool)
    seen[np.unique(labels)] = True
    if not seen.all():
        missing = [domain[int(a)] for a in np.flatnonzero(~seen)]
        raise AxiomViolation("A1", f"relations {missing} are empty (relation map not surjective)")
    o = domain.position(domain.origin)
    diag = np.diagonal(labels)
    if (diag != o).any():
        x = int(np.flatnonzero(diag != o)[0])
        raise AxiomViolation("A2", f"R({x},{x}) = {domain[int(diag[x])]} is not the identity relation")
    off = np.argwhere(labels == o)
    off = off[off[:, 0] != off[:, 1]]
    if off.size:
        x, y = (int(v) for v in off[0])
        raise AxiomViolation("A2", f"distinct points {x}, {y} in the identity relation")
    asym = np.argwhere(labels != labels.T)
    if asym.size:
        x, y = (int(v) for v in asym[0])
        raise AxiomViolation("A6", f"R({x},{y}) = {domain[int(labels[x, y])]} but R({y},{x}) = {domain[int(labels[y, x])]}")
    # (A3) follows from (A6): every A_i is its own transpose.
    A = [(labels == a).astype(np.int64) for a in range(d)]
    reps = [tuple(int(v) for v in np.argwhere(labels == c)[0]) for c in range(d)]
    data = np.empty((d, d, d), dtype=object)
    for a in range(d):
        for b in range(d):
            M = _kernels.exact_matmul(A[a], A[b])
            for c in range(d):
                vals = M[labels == c]
                v0 = int(vals[0])
                if (vals != v0).any():
                    bad = np.argwhere((labels == c) & (M != v0))[0]
                    raise AxiomViolation(
                        "A4",
                        f"A_{domain[a]} A_{domain[b]} takes values {v0} at {reps[c]} and "
                        f"{int(M[tuple(bad)])} at {tuple(int(v) for v in bad)} inside relation {domain[c]}",
                    )
                data[a, b, c] = Fraction(v0)
    for a in range(d):
        for b in range(a + 1, d):
            if any(data[a, b, c] != data[b, a, c] for c in range(d)):
                raise AxiomViolation("A5", f"A_{domain[a]} and A_{domain[b]} do not commute")
    return ConcreteScheme(list(points), domain, labels, IntersectionTensor(domain, data),
                          family, dict(params or {}))


def nbj_scheme(r: int, n: int, k: int) -> ConcreteScheme:
    pts = enumerate_nbj_points(r, n, k)
    X = np.array([p.entries for p in pts], dtype=np.int64).reshape(len(pts), n)
    common, equal = _kernels.nbj_relation_matrix(X)
    D = nbj_domain(n, k, r)
    lab = np.empty_like(common)
    lookup = {a: D.position(a) for a in D}
    for (x, y), c in np.ndenumerate(common):
        a = (int(c - equal[x, y]), int(k - c))
        if a not in lookup:
            raise AxiomViolation("A1", f"R({x},{y}) = {a} lies outside the index set")
        lab[x, y] = lookup[a]
    return build_concrete_scheme(pts, domain=D, labels=lab, family="nonbinary_johnson",
                                 params={"r": r, "n": n, "k": k})


def attenuated_scheme(n: int, m: int, l: int, q: int) -> ConcreteScheme:
    pts = enumerate_attenuated_points(n, m, l, q)
    B = np.stack([p.matrix() for p in pts])
    W = ambient_w(n, l, q).matrix()
    dims = _kernels.subspace_relation_matrix(B, W, gf(q))
    D = attenuated_domain(n, m, l)
    lookup = {a: D.position(a) for a in D}
    lab = np.empty(dims.shape[:2], dtype=np.int64)
    for x in range(len(pts)):
        for y in range(len(pts)):
            meet, quot = int(dims[x, y, 0]), int(dims[x, y, 1])
            j = m - quot
            a = (m - j - meet, j)
            if a not in lookup:
                raise AxiomViolation("A1", f"R({x},{y}) = {a} lies outside the index set")
            lab[x, y] = lookup[a]
    return build_concrete_scheme(pts, domain=D, labels=lab, family="attenuated",
                                 params={"n": n, "m": m, "l": l, "q": q})


# --------------------------------------------------------------------------
# idempotents and Krein numbers


def _lcm_of_denominators(values) -> int:
    return math.lcm(*(Fraction(v).denominator for v in values)) if values else 1


@dataclass
class Idempotents:
    """E_beta = F[beta] / scale[beta] with F integer matrices."""

    domain: Domain
    F: list
    scale: list
    failures: list = field(default_factory=list)

    def matrix(self, beta) -> np.ndarray:
        b = self.domain.position(tuple(beta))
        s = self.scale[b]
        return np.vectorize(lambda v: Fraction(int(v), s), otypes=[object])(self.F[b])

    def column(self, beta, x: int) -> list:
        b = self.domain.position(tuple(beta))
        return [Fraction(int(v), self.scale[b]) for v in self.F[b][:, x]]

    @property
    def ok(self) -> bool:
        return not self.failures


def _aligned(s: ConcreteScheme, t: SpectralTable) -> None:
    if s.domain != t.rel_domain or t.idem_domain != t.rel_domain:
        raise ValueError("index sets of the concrete scheme and the table differ")
    if s.size != t.size:
        raise ValueError(f"|X| = {s.size} but the table says {t.size}")


def build_idempotents(s: ConcreteScheme, t: SpectralTable, strict: bool = True) -> Idempotents:
    """|X| E_beta = sum_alpha Q_beta(alpha) A_alpha, with every identity checked.

    Checks E_o = J/|X|, E_b^2 = E_b, E_b E_c = 0, sum E_b = I,
    trace E_b = m_b and A_a E_b = P_a(b) E_b.
    """
    _aligned(s, t)
    D, N = s.domain, s.size
    Fs, scales = [], []
    for b, beta in enumerate(D):
        row = t.Q[b]
        L = _lcm_of_denominators(row)
        coeff = np.array([int(v * L) for v in row], dtype=np.int64)
        Fs.append(coeff[s.labels])
        scales.append(L * N)
    fails = []
    o = D.position(D.origin)
    if not (Fs[o] * N == scales[o]).all():
        fails.append(("E_o = J/|X|", D.origin, None))
    for b, beta in enumerate(D):
        for c in range(b, len(D)):
            prod = _kernels.exact_matmul(Fs[b], Fs[c])
            if c == b:
                if not (prod == scales[b] * Fs[b]).all():
                    fails.append(("idempotent", beta, beta))
            elif (prod != 0).any():
                fails.append(("orthogonal", beta, D[c]))
        if int(np.trace(Fs[b])) != t.m(beta) * scales[b]:
            fails.append(("trace", beta, None))
    S = math.lcm(*scales)
    total = sum(Fs[b].astype(object) * (S // scales[b]) for b in range(len(D)))
    if not (total == S * np.eye(N, dtype=np.int64)).all():
        fails.append(("sum to identity", None, None))
    for a, alpha in enumerate(D):
        A = s.adjacency(alpha)
        for b, beta in enumerate(D):
            lam = t.P[a][b]
            lhs = _kernels.exact_matmul(A, Fs[b]) * lam.denominator
            if not (lhs == Fs[b] * lam.numerator).all():
                fails.append(("A E = P E", alpha, beta))
    idem = Idempotents(D, Fs, scales, fails)
    if strict and fails:
        raise OracleError(f"{len(fails)} idempotent identities failed", fails)
    return idem


def krein_by_hadamard(s: ConcreteScheme, idem: Idempotents, t: SpectralTable) -> KreinTensor:
    """Krein numbers from entrywise products of the idempotent matrices.

    (|X| E_b) o (|X| E_c) is expanded in the adjacency basis by reading one
    entry per relation; A_a = sum_d P_a(d) E_d converts it to the idempotent
    basis.  A non-constant entry within a relation raises.
    """
    _aligned(s, t)
    D, N = s.domain, s.size
    d = len(D)
    reps = [tuple(int(v) for v in np.argwhere(s.labels == a)[0]) for a in range(d)]
    data = np.empty((d, d, d), dtype=object)
    for b in range(d):
        for c in range(b, d):
            H = idem.F[b].astype(object) * idem.F[c].astype(object)
            coeff = [H[r] for r in reps]
            expanded = np.array(coeff, dtype=object)[s.labels]
            if (expanded != H).any():
                bad = tuple(int(v) for v in np.argwhere(expanded != H)[0])
                raise OracleError(
                    f"E_{D[b]} o E_{D[c]} is not constant on relation {D[int(s.labels[bad])]}",
                    [("hadamard", D[b], D[c], bad)],
                )
            denom = idem.scale[b] * idem.scale[c]
            for e in range(d):
                val = Fraction(N) * sum(
                    Fraction(int(coeff[a]), denom) * t.P[a][e] for a in range(d)
                )
                data[b, c, e] = data[c, b, e] = val
    return KreinTensor(D, data)


# --------------------------------------------------------------------------
# full suite


@dataclass
class OracleReport:
    params: FamilyParams
    size: int = 0
    checks: dict = field(default_factory=dict)  # name -> list of failures
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(not v for v in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "size": self.size,
            "checks": {k: [str(x) for x in v] for k, v in self.checks.items()},
            "error": self.error,
            "ok": self.ok,
        }


def scheme_for(fp: FamilyParams) -> ConcreteScheme:
    p = fp.params
    if fp.family == "nonbinary_johnson":
        return nbj_scheme(p["r"], p["n"], p["k"])
    if fp.family == "attenuated":
        return attenuated_scheme(p["n"], p["m"], p["l"], p["q"])
    raise ValueError(f"no combinatorial model for {fp.family}")


def run_oracle(fp: FamilyParams) -> OracleReport:
    """Build the concrete scheme and compare everything with the table.

    :class:`SizeGuardError` propagates; other oracle failures are recorded.
    """
    report = OracleReport(fp)
    t = fp.table()
    try:
        s = scheme_for(fp)
    except SizeGuardError:
        raise
    except OracleError as exc:
        report.error = str(exc)
        return report
    report.size = s.size
    D = s.domain
    report.checks["point count"] = [] if s.size == t.size else [(s.size, t.size)]
    report.checks["domain"] = [] if D == t.rel_domain else [("domain", list(D), list(t.rel_domain))]
    if report.checks["domain"]:
        return report
    report.checks["valency"] = [(a, s.valency(a), t.k(a)) for a in D if s.valency(a) != t.k(a)]
    spectral_p = intersection_tensor(t)
    report.checks["intersection numbers"] = s.intersection.mismatches(spectral_p)
    idem = build_idempotents(s, t, strict=False)
    report.checks["idempotents"] = list(idem.failures)
    if idem.failures:
        return report
    try:
        hk = krein_by_hadamard(s, idem, t)
    except OracleError as exc:
        report.checks["krein"] = exc.failures
        return report
    report.checks["krein"] = hk.mismatches(krein_tensor(t))
    return report
