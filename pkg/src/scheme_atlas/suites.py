"""Verification suites run by the command line, one grid point at a time."""
from __future__ import annotations

from .core import (

    MonomialOrder,
    all_orders,
    check_p_polynomial,
    check_q_polynomial,
    intersection_tensor,
    krein_tensor,
    table_invariant_failures,
    tensor_sum_rule_failures,
)
from .exact import q_binomial_identity_residuals, q_difference_residual
from .families import FamilyParams, verify_closed_forms
from .orthopoly import (
    hahn_degree_one_shift_residual,
    hahn_recurrence_residual,
    q_hahn_degree_one_shift_residual,
    q_hahn_recurrence_residual,
)
from .report import Record

__all__ = ["SUITES", "FAMILY_SUITES", "run_family_suite", "run_recurrences", "run_identities",
           "recurrence_arguments", "shift_arguments"]

FAMILY_SUITES = ("krein", "qpoly", "ppoly", "oracle", "leonard")
SUITES = FAMILY_SUITES + ("recurrences", "identities")


def _orders(spec: str, dim: int) -> list:
    if spec == "any":
        return all_orders(dim)
    return [MonomialOrder.parse(s) for s in spec.split(";")]


def _poly_records(kind, fp, t, order_spec, tensor) -> list[Record]:
    idx = fp.to_dict()
    D = t.idem_domain if kind == "q" else t.rel_domain
    check = check_q_polynomial if kind == "q" else check_p_polynomial
    reports = [check(t, D, o, tensor) for o in _orders(order_spec, D.dim)]
    good = [r.order for r in reports if r.verdict]
    if good or len(reports) == 1:
        best = next((r for r in reports if r.verdict), reports[0])
    else:
        best = reports[0]
    recs = [Record(f"{kind}-polynomial", {**idx, "orders": [r.order for r in reports]},
                   True, good or False, bool(good))]
    if not good:
        for eps, alpha, beta, why in best.violations:
            recs.append(Record(f"{kind}-polynomial violation",
                               {**idx, "order": best.order, "eps": eps, "alpha": alpha, "beta": beta},
                               why, None, False))
    return recs


def run_family_suite(suite: str, fp: FamilyParams, options: dict | None = None) -> list[Record]:
    """Records for one parameter point.  SizeGuardError propagates."""
    options = options or {}
    idx = fp.to_dict()
    if fp.boundary:
        idx["boundary"] = fp.boundary
    t = fp.table()
    if suite == "krein":
        K, I = krein_tensor(t), intersection_tensor(t)
        rep = verify_closed_forms(fp, t, K)
        recs = [Record("closed forms", idx, "all match", f"{rep.checked} entries", rep.all_match)]
        for d, a, b, c, s in rep.mismatches:
            recs.append(Record("closed form mismatch", {**idx, "eps": d, "alpha": a, "beta": b}, s, c, False))
        for d, a, b, v in rep.support_violations:
            recs.append(Record("support", {**idx, "eps": d, "alpha": a, "beta": b}, 0, v, False))
        for d, a in rep.leading_zero:
            recs.append(Record("leading coefficient", {**idx, "eps": d, "alpha": a}, "nonzero", 0, False))
        for e in rep.errors:
            recs.append(Record("closed form error", idx, None, e, False))
        recs.append(Record("q-polynomial grlex", idx, True, rep.q_polynomial, bool(rep.q_polynomial)))
        inv = table_invariant_failures(t) + tensor_sum_rule_failures(t, K, I)
        recs.append(Record("table invariants and sum rules", idx, [], inv, not inv))
        return recs
    if suite == "qpoly":
        return _poly_records("q", fp, t, options.get("order", "grlex"), krein_tensor(t))
    if suite == "ppoly":
        return _poly_records("p", fp, t, options.get("order", "grlex"), intersection_tensor(t))
    if suite == "oracle":
        from .oracle import run_oracle

        rep = run_oracle(fp)
        if rep.error:
            return [Record("oracle", idx, "axioms hold", rep.error, False)]
        return [Record(f"oracle {name}", {**idx, "points": rep.size}, [], fails, not fails)
                for name, fails in rep.checks.items()]
    if suite == "leonard":
        from .leonard import build_principal_module, check_AM_property, verify_leonard_pair
        from .oracle import build_idempotents, scheme_for

        K, I = krein_tensor(t), intersection_tensor(t)
        am = check_AM_property(t, I, K)
        if not am.applicable:
            return [Record("A_M property", idx, "simplex domain", "not applicable", False)]
        recs = [Record("A_M property", idx, True, am.to_dict(), bool(am.verdict))]
        s = scheme_for(fp)
        idem = build_idempotents(s, t)
        points = range(s.size) if options.get("all_base_points") else [options.get("x0", 0)]
        for x0 in points:
            pm = build_principal_module(s, t, x0, idem, K, I)
            recs.append(Record("T-facts", {**idx, "x0": x0}, {}, {k: v for k, v in pm.facts.items() if v}, pm.ok))
            lr = verify_leonard_pair(pm, K, I)
            recs.append(Record("Leonard pair", {**idx, "x0": x0}, True, lr.to_dict()["conditions"], lr.verdict))
        return recs
    raise ValueError(f"unknown family suite {suite!r}")


# --------------------------------------------------------------------------
# polynomial identities


def recurrence_arguments(nmax: int):
    """(N, p, r, x) for every admissible splitting-recurrence evaluation."""
    for N in range(2, nmax + 1):
        for p in range(1, N):
            for r in range(min(p, N - p) + 1):
                for x in range(min(p - 1, N - p) + 1):
                    yield N, p, r, x


def shift_arguments(nmax: int):
    """(n, k, i, y) for every admissible degree-one shift evaluation."""
    for n in range(2, nmax + 1):
        for k in range(1, n):
            for i in range(k):
                if n - i <= 1:
                    continue
                for y in range(min(k - i, n - k) + 1):
                    yield n, k, i, y


def _summary(name, args_iter, fn) -> list[Record]:
    count, bad = 0, []
    for args in args_iter:
        count += 1
        val = fn(*args)
        if val != 0:
            bad.append(Record(f"{name} residual", {"args": list(args)}, 0, val, False))
    return [Record(name, {"evaluations": count}, 0, len(bad), not bad)] + bad


def run_recurrences(nmax: int = 10, q_nmax: int = 8, qs=(2, 3)) -> list[Record]:
    recs = _summary("hahn recurrence", recurrence_arguments(nmax), hahn_recurrence_residual)
    recs += _summary("hahn shift", shift_arguments(nmax), hahn_degree_one_shift_residual)
    for q in qs:
        recs += _summary(f"q-hahn recurrence q={q}",
                         ((N, p, q, r, x) for N, p, r, x in recurrence_arguments(q_nmax)),
                         q_hahn_recurrence_residual)
        recs += _summary(f"q-hahn shift q={q}",
                         ((n, k, q, i, y) for n, k, i, y in shift_arguments(q_nmax)),
                         q_hahn_degree_one_shift_residual)
    return recs


def run_identities(nmax: int = 12, qs=(2, 3, 4)) -> list[Record]:
    recs = []
    for q in qs:
        recs += _summary(f"[a]-[b] = q^b[a-b] q={q}",
                         ((a, b, q) for a in range(2, nmax + 1) for b in range(1, a)),
                         q_difference_residual)
        count, bad = 0, []
        for N in range(1, nmax + 1):
            for r in range(1, N + 1):
                for name, val in q_binomial_identity_residuals(N, r, q).items():
                    count += 1
                    if val != 0:
                        bad.append(Record(f"q-binomial {name}", {"N": N, "r": r, "q": q}, 0, val, False))
        recs.append(Record(f"q-binomial identities q={q}", {"evaluations": count}, 0, len(bad), not bad))
        recs += bad
    return recs


