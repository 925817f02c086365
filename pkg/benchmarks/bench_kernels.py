"""Compare the numba and numpy backends of the oracle's integer kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Each case builds the pairwise relation data for one point set with both
backends, checks the outputs agree, and prints the best wall time.
"""
import argparse
import os
import time

import numpy as np

from scheme_atlas import _kernels
from scheme_atlas.finite_field import field
from scheme_atlas.oracle import ambient_w, enumerate_attenuated_points, enumerate_nbj_points


def _time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def nbj_case(r, n, k):
    X = np.array([p.entries for p in enumerate_nbj_points(r, n, k)], dtype=np.int64)
    return f"nbj r={r} n={n} k={k} ({len(X)} pts)", lambda: _kernels.nbj_relation_matrix(X)


def subspace_case(n, m, l, q):
    pts = enumerate_attenuated_points(n, m, l, q)
    B = np.stack([p.matrix() for p in pts])
    W = ambient_w(n, l, q).matrix()
    F = field(q)
    return (f"attenuated n={n} m={m} l={l} q={q} ({len(pts)} pts)",
            lambda: _kernels.subspace_relation_matrix(B, W, F))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend can run")
        return
    cases = [nbj_case(3, 8, 4), nbj_case(4, 7, 3), subspace_case(3, 2, 2, 2), subspace_case(4, 2, 1, 2)]
    print(f"{'case':44s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, fn in cases:
        os.environ["SCHEME_ATLAS_NUMBA"] = "1"
        fn()  # compile outside the timing
        t_nb, out_nb = _time(fn, args.repeat)
        os.environ["SCHEME_ATLAS_NUMBA"] = "0"
        t_np, out_np = _time(fn, args.repeat)
        same = all(np.array_equal(a, b) for a, b in zip(np.atleast_1d(out_nb), np.atleast_1d(out_np))) \
            if isinstance(out_nb, tuple) else np.array_equal(out_nb, out_np)
        flag = "" if same else "  OUTPUTS DIFFER"
        print(f"{name:44s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x{flag}")
    os.environ.pop("SCHEME_ATLAS_NUMBA", None)


if __name__ == "__main__":
    main()
