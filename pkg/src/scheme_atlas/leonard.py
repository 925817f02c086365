"""A_M-Leonard pair checks on the principal Terwilliger module.

The module V = span{A_a x0} is handled as explicit exact vectors in
C^X, so every fact about it is checked on actual matrices rather than
assumed from the parameters.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations

from .core import Domain, all_orders, SpectralTable, add, check_p_polynomial, check_q_polynomial, sub, unit
from .oracle import ConcreteScheme, Idempotents, build_idempotents

__all__ = [
    "is_simplex",
    "adjacent",
    "AMReport",
    "check_AM_property",
    "PrincipalModule",
    "build_principal_module",
    "LeonardReport",
    "verify_leonard_pair",
]


def is_simplex(D) -> int | None:
    """N when D = {alpha : |alpha| <= N}, else None."""
    D = D if isinstance(D, Domain) else Domain(D)
    N = max(sum(a) for a in D)
    M = D.dim
    expected = sum(1 for a in _simplex(M, N))
    if len(D) == expected and all(sum(a) <= N for a in D):
        return N
    return None


def _simplex(M: int, N: int):
    if M == 1:
        for i in range(N + 1):
            yield (i,)
        return
    for i in range(N + 1):
        for rest in _simplex(M - 1, N - i):
            yield (i, *rest)


def _adjacent_differences(M: int) -> frozenset:
    base = [(0,) * M, (1,) + (0,) * (M - 1), (-1,) + (0,) * (M - 1)]
    if M >= 2:
        base.append((1, -1) + (0,) * (M - 2))
    return frozenset(p for b in base for p in permutations(b))


def adjacent(alpha, beta) -> bool:
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != len(beta):
        raise ValueError(f"dimension mismatch: {alpha} vs {beta}")
    return sub(alpha, beta) in _adjacent_differences(len(alpha))


# --------------------------------------------------------------------------
# the parameter-level property


@dataclass
class AMReport:
    simplex: int | None
    p_orders: list = field(default_factory=list)  # orders under which P-polynomial
    q_orders: list = field(default_factory=list)
    p_nonadjacent: list = field(default_factory=list)  # (eps, alpha, beta)
    q_nonadjacent: list = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return self.simplex is not None

    @property
    def verdict(self) -> bool | None:
        if not self.applicable:
            return None
        return bool(self.p_orders and self.q_orders) and not (self.p_nonadjacent or self.q_nonadjacent)

    def to_dict(self) -> dict:
        return {
            "simplex": self.simplex,
            "p_orders": self.p_orders,
            "q_orders": self.q_orders,
            "p_nonadjacent": [[list(x) for x in w] for w in self.p_nonadjacent],
            "q_nonadjacent": [[list(x) for x in w] for w in self.q_nonadjacent],
            "verdict": self.verdict,
        }


def _nonadjacent(D: Domain, tensor) -> list:
    out = []
    for i in range(D.dim):
        eps = unit(D.dim, i)
        for alpha in D:
            for beta in D:
                if tensor[eps, alpha, beta] != 0 and not adjacent(alpha, beta):
                    out.append((eps, alpha, beta))
    return out


def check_AM_property(t: SpectralTable, inter, krein, orders=None) -> AMReport:
    """A_M multivariate P- and Q-polynomial on a simplex domain.

    Each side passes if some order in ``orders`` works; the default tries
    lex and grlex under every priority of the coordinates.
    """
    D = t.rel_domain
    N = is_simplex(D) if t.idem_domain == D else None
    report = AMReport(N)
    if N is None:
        return report
    for order in orders if orders is not None else all_orders(D.dim):
        if check_p_polynomial(t, D, order, inter).verdict:
            report.p_orders.append(order.name)
        if check_q_polynomial(t, t.idem_domain, order, krein).verdict:
            report.q_orders.append(order.name)
    report.p_nonadjacent = _nonadjacent(D, inter)
    report.q_nonadjacent = _nonadjacent(t.idem_domain, krein)
    return report


# --------------------------------------------------------------------------
# principal module


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _coordinates(w, basis, norms) -> list:
    """Coordinates of w in an orthogonal basis; raises if w is outside its span."""
    coords = [_dot(w, b) / nb for b, nb in zip(basis, norms)]
    recon = [sum((c * b[x] for c, b in zip(coords, basis)), Fraction(0)) for x in range(len(w))]
    if recon != list(w):
        raise ArithmeticError("vector lies outside the module")
    return coords


@dataclass
class PrincipalModule:
    """Principal T-module at x0 in the bases v*_a = E_a x0 and v_a = E*_a 1.

    ``A[i][b][a]`` is the coefficient of v*_b in A_{eps_i} v*_a, and
    ``A_dual[i][b][a]`` that of v*_b in A*_{eps_i} v*_a; ``B`` and
    ``B_dual`` are the same operators in the v-basis.
    """

    domain: Domain
    x0: int
    vstar: list
    v: list
    A: list
    A_dual: list
    B: list
    B_dual: list
    change_of_basis: list  # v_a = sum_b C[a][b] v*_b
    facts: dict = field(default_factory=dict)  # T1..T6 and basis checks -> failures

    @property
    def dim(self) -> int:
        return len(self.domain)

    @property
    def ok(self) -> bool:
        return all(not v for v in self.facts.values())

    def with_dual_coefficient(self, i: int, alpha, beta, value) -> "PrincipalModule":
        """Copy with one coefficient of A*_{eps_i} (v*-basis) overwritten."""
        a, b = self.domain.position(tuple(alpha)), self.domain.position(tuple(beta))
        A_dual = [[list(row) for row in M] for M in self.A_dual]
        A_dual[i][b][a] = Fraction(value)
        return replace(self, A_dual=A_dual)


def build_principal_module(s: ConcreteScheme, t: SpectralTable, x0: int = 0,
                           idem: Idempotents | None = None, krein=None, inter=None) -> PrincipalModule:
    """Construct the module at ``x0`` and record (T1)-(T6) failures in ``facts``."""
    from .core import intersection_tensor, krein_tensor

    D = s.domain
    N = s.size
    if not 0 <= x0 < N:
        raise ValueError(f"x0 = {x0} is not a point index")
    idem = idem or build_idempotents(s, t)
    krein = krein if krein is not None else krein_tensor(t)
    inter = inter if inter is not None else intersection_tensor(t)
    d = len(D)
    row0 = s.labels[x0]
    vstar = [idem.column(beta, x0) for beta in D]
    v = [[Fraction(int(row0[x] == a)) for x in range(N)] for a in range(d)]
    adj = [s.adjacency(a) for a in D]
    # dual adjacency A*_b is diagonal with entries Q_b(R(x0, x))
    dual_diag = [[t.Q[b][int(row0[x])] for x in range(N)] for b in range(d)]
    nstar = [_dot(u, u) for u in vstar]
    nv = [_dot(u, u) for u in v]
    facts = {f"T{i}": [] for i in range(1, 7)}
    facts["basis"] = []

    def apply_adj(a, w):
        M = adj[a]
        return [sum((Fraction(int(M[x, y])) * w[y] for y in range(N) if M[x, y]), Fraction(0)) for x in range(N)]

    def apply_dual(b, w):
        return [dual_diag[b][x] * w[x] for x in range(N)]

    for a in range(d):
        for b in range(d):
            if apply_adj(a, vstar[b]) != [t.P[a][b] * c for c in vstar[b]]:
                facts["T1"].append((D[a], D[b]))
            if apply_dual(b, v[a]) != [t.Q[b][a] * c for c in v[a]]:
                facts["T2"].append((D[b], D[a]))
    if any(n == 0 for n in nstar):
        facts["T3"].append("a vector v*_a vanishes")
    if any(n == 0 for n in nv):
        facts["T4"].append("a vector v_a vanishes")
    for a in range(d):
        for b in range(a + 1, d):
            if _dot(vstar[a], vstar[b]) != 0:
                facts["basis"].append(("v* not orthogonal", D[a], D[b]))
            if _dot(v[a], v[b]) != 0:
                facts["basis"].append(("v not orthogonal", D[a], D[b]))
    # change of basis v_a = sum_b P_a(b) v*_b, checked on the vectors
    C = [[t.P[a][b] for b in range(d)] for a in range(d)]
    for a in range(d):
        comb = [sum((C[a][b] * vstar[b][x] for b in range(d)), Fraction(0)) for x in range(N)]
        if comb != v[a]:
            facts["basis"].append(("change of basis", D[a]))
    gens = [D.position(unit(D.dim, i)) for i in D.generators()]
    A_mats, Ad_mats, B_mats, Bd_mats = [], [], [], []
    for g in gens:
        A_cols, Ad_cols, B_cols, Bd_cols = [], [], [], []
        for a in range(d):
            A_cols.append(_coordinates(apply_adj(g, vstar[a]), vstar, nstar))
            Ad_cols.append(_coordinates(apply_dual(g, vstar[a]), vstar, nstar))
            B_cols.append(_coordinates(apply_adj(g, v[a]), v, nv))
            Bd_cols.append(_coordinates(apply_dual(g, v[a]), v, nv))
            for b in range(d):
                if B_cols[a][b] != inter.data[g, a, b]:
                    facts["T5"].append((D[g], D[a], D[b]))
                if Ad_cols[a][b] != krein.data[g, a, b]:
                    facts["T6"].append((D[g], D[a], D[b]))
        # store as matrices M[b][a]
        A_mats.append([[A_cols[a][b] for a in range(d)] for b in range(d)])
        Ad_mats.append([[Ad_cols[a][b] for a in range(d)] for b in range(d)])
        B_mats.append([[B_cols[a][b] for a in range(d)] for b in range(d)])
        Bd_mats.append([[Bd_cols[a][b] for a in range(d)] for b in range(d)])
    return PrincipalModule(D, x0, vstar, v, A_mats, Ad_mats, B_mats, Bd_mats, C, facts)


# --------------------------------------------------------------------------
# Definition of an A_M-Leonard pair


CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "vii")


@dataclass
class LeonardReport:
    x0: int
    results: dict = field(default_factory=dict)  # condition -> list of failure witnesses

    @property
    def verdict(self) -> bool:
        return all(not self.results.get(c, ["missing"]) for c in CONDITIONS)

    def passed(self, condition: str) -> bool:
        return not self.results.get(condition, ["missing"])

    def to_dict(self) -> dict:
        return {
            "x0": self.x0,
            "conditions": {c: {"pass": self.passed(c), "witness": [str(w) for w in self.results.get(c, [])]}
                           for c in CONDITIONS},
            "verdict": self.verdict,
        }


def _is_diagonal(M) -> bool:
    return all(M[b][a] == 0 for b in range(len(M)) for a in range(len(M)) if a != b)


def _matmul(X, Y):
    n = len(X)
    return [[sum((X[i][k] * Y[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def _rank(rows) -> int:
    M = [list(r) for r in rows]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def _commuting_diagonalizable(mats, label) -> list:
    """Witnesses against: every matrix diagonal, pairwise commuting, M independent."""
    bad = []
    for i, M in enumerate(mats):
        if not _is_diagonal(M):
            bad.append(f"{label}_{i} is not diagonal in its eigenbasis")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if _matmul(mats[i], mats[j]) != _matmul(mats[j], mats[i]):
                bad.append(f"{label}_{i} and {label}_{j} do not commute")
    diag = [[M[a][a] for a in range(len(M))] for M in mats]
    if mats and _rank(diag) != len(mats):
        bad.append(f"span of {label} has dimension < {len(mats)}")
    return bad


def _eigen_labels(mats, D: Domain) -> dict:
    """Joint eigenvalue tuple -> indices carrying it."""
    out: dict = {}
    for a, alpha in enumerate(D):
        key = tuple(M[a][a] for M in mats)
        out.setdefault(key, []).append(alpha)
    return out


def _support_witnesses(mats, D: Domain) -> list:
    bad = []
    for i, M in enumerate(mats):
        for a, alpha in enumerate(D):
            for b, beta in enumerate(D):
                if M[b][a] != 0 and not adjacent(alpha, beta):
                    bad.append((i, alpha, beta))
    return bad


def _generation(pm: PrincipalModule) -> list:
    """From every v*_{a0}, apply E_{a +- eps_i} A*_{eps_i} while the coefficient is nonzero."""
    D = pm.domain
    gens = D.generators()
    unreached = []
    for start in D:
        seen = {start}
        queue = deque([start])
        while queue:
            alpha = queue.popleft()
            a = D.position(alpha)
            for k, i in enumerate(gens):
                eps = unit(D.dim, i)
                for beta in (add(alpha, eps), sub(alpha, eps)):
                    if beta in D and beta not in seen and pm.A_dual[k][D.position(beta)][a] != 0:
                        seen.add(beta)
                        queue.append(beta)
        missing = [beta for beta in D if beta not in seen]
        if missing:
            unreached.append({"start": start, "unreached": missing})
    return unreached


def verify_leonard_pair(pm: PrincipalModule, krein=None, inter=None) -> LeonardReport:
    """Check conditions (i)-(vii) on the module; failures carry witnesses.

    H = span A_{eps_i} and H~ = span A*_{eps_i}.  ``krein``/``inter`` are
    compared against the module's own coefficients when supplied.
    """
    D = pm.domain
    report = LeonardReport(pm.x0)
    r = report.results
    if is_simplex(D) is None:
        r.update({c: ["domain is not a simplex"] for c in CONDITIONS})
        return report
    r["i"] = _commuting_diagonalizable(pm.A, "A")
    r["ii"] = _commuting_diagonalizable(pm.B_dual, "A*")
    # common eigenspaces: distinct joint eigenvalues give a bijection with D
    Hspec = _eigen_labels(pm.A, D)
    Tspec = _eigen_labels(pm.B_dual, D)
    r["iii"] = [("shared H-eigenvalue", v) for v in Hspec.values() if len(v) > 1]
    r["iii"] += [("A* moves", i, a, b) for i, a, b in _support_witnesses(pm.A_dual, D)]
    r["iv"] = [("shared H~-eigenvalue", v) for v in Tspec.values() if len(v) > 1]
    r["iv"] += [("A moves", i, a, b) for i, a, b in _support_witnesses(pm.B, D)]
    r["v"] = _generation(pm)
    r["vi"] = list(pm.facts.get("T3", [])) + list(pm.facts.get("T4", []))
    r["vi"] += [("H-eigenspace dimension", len(v), v) for v in Hspec.values() if len(v) > 1]
    r["vi"] += [("H~-eigenspace dimension", len(v), v) for v in Tspec.values() if len(v) > 1]
    gram = []
    for family, vecs in (("v*", pm.vstar), ("v", pm.v)):
        for a in range(len(D)):
            if _dot(vecs[a], vecs[a]) == 0:
                gram.append((family, "degenerate", D[a]))
            for b in range(a + 1, len(D)):
                if _dot(vecs[a], vecs[b]) != 0:
                    gram.append((family, D[a], D[b]))
    r["vii"] = gram
    gens = [D.position(unit(D.dim, i)) for i in D.generators()]
    if krein is not None:
        for k, g in enumerate(gens):
            for a in range(len(D)):
                for b in range(len(D)):
                    if pm.A_dual[k][b][a] != krein.data[g, a, b]:
                        r["iii"].append(("A* coefficient differs from Krein number", D[g], D[a], D[b]))
    if inter is not None:
        for k, g in enumerate(gens):
            for a in range(len(D)):
                for b in range(len(D)):
                    if pm.B[k][b][a] != inter.data[g, a, b]:
                        r["iv"].append(("A coefficient differs from intersection number", D[g], D[a], D[b]))
    return report
