"""scheme-atlas: spectral tables and verification suites from the shell.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 the oracle size guard tripped.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .core import intersection_tensor, krein_tensor
from .families import ALIASES, FAMILIES, PARAM_NAMES, FamilyParams
from .report import GridError, VerificationReport, expand_grid, jsonable
from .suites import FAMILY_SUITES, SUITES, run_family_suite, run_identities, run_recurrences

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
PARAMS = ("n", "k", "q", "r", "m", "l")


class UsageError(Exception):
    pass


def _family(name: str) -> str:
    fam = ALIASES.get(name, name)
    if fam not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)} (or nbj, att)")
    return fam


def _single_params(args, family: str) -> dict:
    given = {p: getattr(args, p) for p in PARAMS if getattr(args, p) is not None}
    extra = set(given) - set(PARAM_NAMES[family])
    if extra:
        raise UsageError(f"{family} does not take {', '.join(sorted(extra))}")
    return given


def _make(family: str, params: dict) -> FamilyParams:
    try:
        return FamilyParams(family, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def table_payload(fp: FamilyParams) -> dict:
    t = fp.table()
    K, I = krein_tensor(t), intersection_tensor(t)
    return jsonable({
        "family": fp.family,
        "params": fp.params,
        "reduction": t.reduction,
        "size": t.size,
        "relation_indices": list(t.rel_domain),
        "idempotent_indices": list(t.idem_domain),
        "P": t.P,
        "Q": t.Q,
        "valencies": t.valencies,
        "multiplicities": t.multiplicities,
        "krein": K.data.tolist(),
        "intersection": I.data.tolist(),
    })


def cmd_tables(args) -> int:
    fam = _family(args.family)
    fp = _make(fam, _single_params(args, fam))
    payload = table_payload(fp)
    text = json.dumps(payload, indent=1)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.csv:
        os.makedirs(args.csv, exist_ok=True)
        heads = [",".join(map(str, b)) for b in payload["idempotent_indices"]]
        for name in ("P", "Q"):
            rows_idx = payload["relation_indices"] if name == "P" else payload["idempotent_indices"]
            cols = heads if name == "P" else [",".join(map(str, a)) for a in payload["relation_indices"]]
            with open(os.path.join(args.csv, f"{name}.csv"), "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["index", *cols])
                for a, row in zip(rows_idx, payload[name]):
                    w.writerow([",".join(map(str, a)), *row])
    return EXIT_OK


def _point_worker(job):
    suite, family, params, options = job
    from .oracle import SizeGuardError

    try:
        fp = FamilyParams(family, params)
    except ValueError:
        return "skip", []
    try:
        return "ok", run_family_suite(suite, fp, options)
    except SizeGuardError as exc:
        return "guard", str(exc)


def cmd_verify(args) -> int:
    suite = args.suite
    start = time.perf_counter()
    if suite in ("recurrences", "identities"):
        rep = VerificationReport(suite, None, {"nmax": args.nmax, "q": args.qs})
        qs = tuple(int(v) for v in args.qs.split(",")) if args.qs else None
        if suite == "recurrences":
            rep.records = run_recurrences(args.nmax or 10, args.q_nmax or 8, qs or (2, 3))
        else:
            rep.records = run_identities(args.nmax or 12, qs or (2, 3, 4))
    else:
        if not args.family:
            raise UsageError(f"suite {suite} needs --family")
        fam = _family(args.family)
        single = _single_params(args, fam)
        if args.grid:
            try:
                points = expand_grid(args.grid, single)
            except GridError as exc:
                raise UsageError(str(exc)) from None
            for p in points:
                unknown = set(p) - set(PARAM_NAMES[fam])
                if unknown:
                    raise UsageError(f"{fam} does not take {', '.join(sorted(unknown))}")
                missing = set(PARAM_NAMES[fam]) - set(p)
                if missing:
                    raise UsageError(f"grid leaves {', '.join(sorted(missing))} unset")
        else:
            _make(fam, single)  # invalid single parameters are a usage error
            points = [single]
        options = {"order": args.order, "all_base_points": args.all_base_points, "x0": args.x0}
        jobs = [(suite, fam, p, options) for p in points]
        rep = VerificationReport(suite, fam, {"grid": args.grid} if args.grid else single)
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_point_worker, jobs))
        else:
            results = [_point_worker(j) for j in jobs]
        for status, payload in results:  # grid order is preserved by map
            if status == "skip":
                rep.skipped += 1
            elif status == "guard":
                print(payload, file=sys.stderr)
                rep.seconds = time.perf_counter() - start
                _write_report(rep, args.output)
                return EXIT_GUARD
            else:
                rep.records.extend(payload)
        if not rep.records and not rep.skipped:
            raise UsageError("empty parameter grid")
    rep.seconds = time.perf_counter() - start
    _write_report(rep, args.output)
    fails = rep.failures()
    print(f"{suite}: {len(rep.records)} records, {len(fails)} failed, {rep.skipped} skipped, "
          f"{rep.seconds:.2f}s", file=sys.stderr)
    for r in fails[:10]:
        print(f"  FAIL {r.check} {jsonable(r.indices)}", file=sys.stderr)
    return EXIT_OK if rep.verdict else EXIT_MISMATCH


def _write_report(rep: VerificationReport, path: str | None) -> None:
    if path == "-":
        print(rep.to_json())
    elif path:
        with open(path, "w") as fh:
            fh.write(rep.to_json() + "\n")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="hamming, johnson, bilinear, grassmann, nonbinary_johnson (nbj), attenuated (att)")
    for name in PARAMS:
        p.add_argument(f"--{name}", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scheme-atlas", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    t = sub.add_parser("tables", help="write P, Q, k, m and both tensors as JSON")
    _add_params(t)
    t.add_argument("-o", "--output", help="JSON file (default stdout)")
    t.add_argument("--csv", metavar="DIR", help="also write P.csv and Q.csv to DIR")
    t.set_defaults(func=cmd_tables)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    _add_params(v)
    v.add_argument("--grid", help='e.g. "r=3..5,n=3..8,k=1..n-1"')
    v.add_argument("--order", default="grlex",
                   help="monomial order for qpoly/ppoly: lex, grlex, grlex[1,0], ';'-separated list, or any")
    v.add_argument("--x0", type=int, default=0, help="base point for the leonard suite")
    v.add_argument("--all-base-points", action="store_true", help="leonard suite: sweep every base point")
    v.add_argument("--nmax", type=int, help="largest N for recurrences/identities")
    v.add_argument("--q-nmax", type=int, help="largest N for the q-Hahn recurrences")
    v.add_argument("--qs", help="comma-separated q values for recurrences/identities")
    v.add_argument("--jobs", type=int, default=1, help="worker processes for grid points")
    v.add_argument("-o", "--output", help="report JSON file ('-' for stdout)")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
