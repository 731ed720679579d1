"""Compare the compiled and pure-Python closure kernels.

    python benchmarks/bench_closure.py [--repeat N]
"""

import argparse
import time

from supernil_lab import closure, corpus, verifier
from supernil_lab.algebra import Congruence
from supernil_lab.commutator import _ceiling, edge_cubes


def workloads():
    S3 = corpus.load("S3")
    one = Congruence.one(S3.size)
    yield "S3 M(1,1)", S3, 4, edge_cubes((one, one)), _ceiling(S3, (one, one))
    yield "S3 M(1,1,1)", S3, 8, edge_cubes((one,) * 3), _ceiling(S3, (one,) * 3)
    R = verifier.random_algebra(verifier.RandomSpec(3, (2,), 11))
    one = Congruence.one(3)
    yield "rand3 M(1,1)", R, 4, edge_cubes((one, one)), _ceiling(R, (one, one))
    yield "rand3 twin pairs", R, 6, [(0, 1, 2, 0, 1, 2)] + [
        (a,) * 3 + (b,) * 3 for a in range(3) for b in range(3)], 9 ** 3
    R4 = verifier.random_algebra(verifier.RandomSpec(4, (2,), 5))
    yield "rand4 unary polys", R4, 4, [(0, 1, 2, 3)] + [(a,) * 4 for a in range(4)], None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':20s} {'rows':>7s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, A, width, gens, ceiling in workloads():
        best = {}
        for backend in ("compiled", "python"):
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = closure.run(A, width, gens, closure.DEFAULT_BUDGET,
                                  ceiling=ceiling, backend=backend)
                times.append(time.perf_counter() - t0)
            best[backend] = (min(times), len(res.rows))
        (tc, rows), (tp, _) = best["compiled"], best["python"]
        print(f"{name:20s} {rows:7d} {tc:10.4f} {tp:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
